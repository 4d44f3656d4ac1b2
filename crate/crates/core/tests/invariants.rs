//! Cross-module properties on random admissible parameters and points.

use alcove_core::farey::{classify_intervals, is_admissible, IntervalType};
use alcove_core::fiber::{fiber_report, FiberType};
use alcove_core::polytope::{contains, cyclic_orbits, euler_characteristic_ok, face_lattice, Membership};
use alcove_core::sampling::{haar_special_unitary, random_interior_point};
use alcove_core::spectral::{delta_of, solve_u, xi_of, z_functions, CMatrix};
use alcove_core::{ExactRational, PolytopeModel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn admissible() -> impl Strategy<Value = (usize, ExactRational)> {
    (4usize..=7, 1i64..200).prop_filter_map("excluded value", |(n, p)| {
        let x = ExactRational::new(p, 200);
        is_admissible(&x, n).then_some((n, x))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polytope_is_cyclic_and_euler((n, x) in admissible()) {
        let m = PolytopeModel::compute(n, &x).unwrap();
        let fv = face_lattice(&m).face_vector;
        prop_assert!(euler_characteristic_ok(&fv, n));
        for v in &m.vertices {
            prop_assert!(m.vertex_index(&v.point.rotate(1)).is_some());
        }
        let total: usize = cyclic_orbits(&m).iter().map(|c| c.orbit_size).sum();
        prop_assert_eq!(total, m.vertices.len());
    }

    #[test]
    fn type_i_is_a_simplex((n, x) in admissible()) {
        let iv = classify_intervals(n, false).into_iter().find(|iv| iv.contains(&x)).unwrap();
        let m = PolytopeModel::compute(n, &x).unwrap();
        let singular = m.vertices.iter().any(|v| v.point.is_singular());
        if iv.interval_type == IntervalType::TypeI {
            prop_assert_eq!(m.vertices.len(), n);
            prop_assert!(!singular);
        } else {
            prop_assert!(singular);
        }
    }

    #[test]
    fn interior_points_have_torus_fibers((n, x) in admissible(), seed in any::<u64>()) {
        let m = PolytopeModel::compute(n, &x).unwrap();
        let xi = random_interior_point(&m, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(contains(&xi, &m).unwrap(), Membership::Inside);
        let z = z_functions(&xi, &x, 1e-10).unwrap();
        prop_assert!(z.iter().all(|&v| v > 0.0));
        let u = solve_u(&xi, &x).unwrap();
        prop_assert!((u.norm() - 1.0).abs() < 1e-9);
        prop_assert_eq!(fiber_report(&xi, &x).unwrap().recognized_type, FiberType::Torus(n - 1));
    }

    #[test]
    fn conjugation_preserves_xi((n, x) in admissible(), seed in any::<u64>()) {
        let m = PolytopeModel::compute(n, &x).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = random_interior_point(&m, &mut rng);
        let g = haar_special_unitary(n, &mut rng);
        let d: CMatrix = delta_of(&xi).matrix();
        let back = xi_of(&(g.adjoint() * d * &g)).unwrap();
        for (a, b) in back.iter().zip(xi.to_f64()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
