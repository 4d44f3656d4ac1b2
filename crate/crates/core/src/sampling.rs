//! Seeded random inputs: exact points of the alcove and the polytope, and
//! Haar-distributed unitary matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::polytope::{AlcovePoint, PolytopeModel};
use crate::rational::ExactRational;
use crate::spectral::CMatrix;

/// A point of the open alcove with coordinates `a_j / Σ a`, `a_j ∈ [1, 1000]`.
pub fn random_alcove_point<R: Rng>(n: usize, rng: &mut R) -> AlcovePoint {
    let a: Vec<i64> = (0..n).map(|_| rng.random_range(1..=1000)).collect();
    let s: i64 = a.iter().sum();
    AlcovePoint::new(a.into_iter().map(|v| ExactRational::new(v, s)).collect())
}

/// A point of the polytope interior: a convex combination of all vertices
/// with positive integer weights.
pub fn random_interior_point<R: Rng>(model: &PolytopeModel, rng: &mut R) -> AlcovePoint {
    let n = model.n;
    let mut acc = vec![ExactRational::zero(); n];
    let mut total = 0i64;
    for v in &model.vertices {
        let w: i64 = rng.random_range(1..=100);
        total += w;
        for (a, c) in acc.iter_mut().zip(&v.point.coords) {
            *a = &*a + &c.scale(w);
        }
    }
    let t = ExactRational::from_integer(total).recip();
    AlcovePoint::new(acc.iter().map(|a| a * &t).collect())
}

fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-distributed element of `U(n)`: QR of a complex Gaussian matrix with
/// the phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Haar element of `U(n)` rescaled by an `n`-th root of `1/det`.
pub fn haar_special_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let u = haar_unitary(n, rng);
    let det = u.determinant();
    u * Complex64::from_polar(1.0, -det.arg() / n as f64)
}
