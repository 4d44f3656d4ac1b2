//! Fibers of the action map over points of the polytope.
//!
//! The fiber over `ξ` is the quotient of the isotropy group `SU(n)_{δ(ξ)}`
//! by the stabilizer of `u₀`, which acts through
//! `(X, T) ↦ Θ₀(X)·T·X⁻¹`, `Θ₀(X) = Â₀⁻¹ X Â₀`. Everything here works in
//! that unconjugated picture.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::AlcovePoint;
use crate::rational::ExactRational;
use crate::sampling::haar_unitary;
use crate::spectral::{
    complex_serde, delta_of, diag, max_abs, mu_hat, residue_constraints, solve_a0, solve_u, BlockMass, CMatrix,
    DeltaMatrix, EigenBlock, UVector,
};

/// Residual allowed in commutation checks.
pub const COMMUTE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct IsotropyStructure {
    pub blocks: Vec<EigenBlock>,
    pub group_dim: usize,
    /// For example `S(U(2)×U(1)×U(1))`.
    pub description: String,
}

pub fn isotropy_of(xi: &AlcovePoint) -> IsotropyStructure {
    let d = delta_of(xi);
    let dims: Vec<usize> = d.blocks.iter().map(EigenBlock::multiplicity).collect();
    let parts: Vec<String> = dims.iter().map(|m| format!("U({m})")).collect();
    IsotropyStructure {
        group_dim: dims.iter().map(|m| m * m).sum::<usize>() - 1,
        description: format!("S({})", parts.join("×")),
        blocks: d.blocks,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "m", rename_all = "snake_case")]
pub enum BlockStabilizer {
    /// No mass of `u₀` on the block: all of `U(m)`.
    Full(usize),
    /// `u₀` has mass on the block: `U(m−1)` times the common eigenvalue of
    /// `u₀`.
    Split(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerStructure {
    pub per_block: Vec<BlockStabilizer>,
    /// All split blocks share one `U(1)`: `u₀` is a single eigenvector.
    pub group_dim: usize,
}

/// Stabilizer of `u₀` in `SU(n)_{δ(ξ)}`, from the zero pattern of `u₀`.
pub fn stabilizer_of(xi: &AlcovePoint, u0: &UVector) -> StabilizerStructure {
    let d = delta_of(xi);
    let per_block: Vec<BlockStabilizer> = d
        .blocks
        .iter()
        .map(|b| {
            if b.indices.iter().all(|&j| u0.zero_pattern[j]) {
                BlockStabilizer::Full(b.multiplicity())
            } else {
                BlockStabilizer::Split(b.multiplicity())
            }
        })
        .collect();
    let mut dim = 0;
    let mut split = false;
    for b in &per_block {
        match *b {
            BlockStabilizer::Full(m) => dim += m * m,
            BlockStabilizer::Split(m) => {
                dim += (m - 1) * (m - 1);
                split = true;
            }
        }
    }
    if split {
        dim += 1;
    }
    StabilizerStructure { per_block, group_dim: dim - 1 }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value")]
pub enum FiberType {
    Torus(usize),
    Point,
    Sphere3,
    Conjectural(String),
    Unrecognized(String),
}

impl std::fmt::Display for FiberType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiberType::Torus(d) => write!(f, "T^{d}"),
            FiberType::Point => write!(f, "point"),
            FiberType::Sphere3 => write!(f, "S^3"),
            FiberType::Conjectural(s) => write!(f, "conjecturally {s}"),
            FiberType::Unrecognized(s) => write!(f, "unrecognized ({s})"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    pub xi: AlcovePoint,
    pub x: ExactRational,
    pub isotropy: IsotropyStructure,
    pub masses: Vec<BlockMass>,
    pub u0: UVector,
    pub stabilizer: StabilizerStructure,
    pub fiber_dim: usize,
    pub recognized_type: FiberType,
}

/// Block structure, stabilizer, dimension and recognized type of the fiber
/// over `ξ`.
pub fn fiber_report(xi: &AlcovePoint, x: &ExactRational) -> Result<FiberReport> {
    let masses = residue_constraints(xi, x)?;
    let u0 = solve_u(xi, x)?;
    let isotropy = isotropy_of(xi);
    let stabilizer = stabilizer_of(xi, &u0);
    let fiber_dim = isotropy.group_dim - stabilizer.group_dim;
    let recognized_type = classify(xi.n(), &isotropy, &stabilizer, fiber_dim);
    Ok(FiberReport { xi: xi.clone(), x: x.clone(), isotropy, masses, u0, stabilizer, fiber_dim, recognized_type })
}

fn classify(n: usize, iso: &IsotropyStructure, st: &StabilizerStructure, dim: usize) -> FiberType {
    let sizes: Vec<usize> = iso.blocks.iter().map(EigenBlock::multiplicity).collect();
    if sizes.iter().all(|&m| m == 1) {
        let d = st.per_block.iter().filter(|b| matches!(b, BlockStabilizer::Full(_))).count();
        return if d == n - 1 { FiberType::Point } else { FiberType::Torus(n - 1 - d) };
    }
    if sizes.contains(&3) {
        return FiberType::Conjectural("SU(3)".into());
    }
    let split2 = st.per_block.iter().filter(|b| **b == BlockStabilizer::Split(2)).count();
    let split1 = st.per_block.iter().filter(|b| **b == BlockStabilizer::Split(1)).count();
    let big = sizes.iter().filter(|&&m| m > 1).count();
    if big == 1 && split2 == 1 && split1 == 1 && dim == 3 {
        return FiberType::Sphere3;
    }
    FiberType::Unrecognized(format!("blocks {}, stabilizer {:?}, dim {dim}", iso.description, st.per_block))
}

/// The data needed to act on the isotropy group over a fixed `ξ`.
#[derive(Debug, Clone, Serialize)]
pub struct FiberSetup {
    pub xi: AlcovePoint,
    pub x: ExactRational,
    pub delta: DeltaMatrix,
    pub u0: UVector,
    #[serde(serialize_with = "complex_serde::matrix")]
    pub mu_hat: CMatrix,
    #[serde(serialize_with = "complex_serde::matrix")]
    pub a0: CMatrix,
}

impl FiberSetup {
    pub fn new(xi: &AlcovePoint, x: &ExactRational) -> Result<Self> {
        let u0 = solve_u(xi, x)?;
        let a0 = solve_a0(xi, x, &u0)?;
        let mh = mu_hat(PI * x.to_f64(), &u0.components)?;
        Ok(Self { xi: xi.clone(), x: x.clone(), delta: delta_of(xi), u0, mu_hat: mh, a0 })
    }

    pub fn n(&self) -> usize {
        self.xi.n()
    }

    /// `Θ₀(X) = Â₀⁻¹ X Â₀`.
    pub fn theta0(&self, x: &CMatrix) -> CMatrix {
        self.a0.adjoint() * x * &self.a0
    }
}

fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a * b - b * a))
}

/// `Θ₀(X)·T·X⁻¹` for `X` in the stabilizer of `u₀` and `T` in the isotropy
/// group.
pub fn twisted_action(setup: &FiberSetup, x: &CMatrix, t: &CMatrix) -> Result<CMatrix> {
    let dm = setup.delta.matrix();
    let rx = commutator_norm(x, &dm).max(commutator_norm(x, &setup.mu_hat));
    if rx > COMMUTE_TOL {
        return Err(Error::Precondition(format!("X is not in the stabilizer (residual {rx:.2e})")));
    }
    let rt = commutator_norm(t, &dm);
    if rt > COMMUTE_TOL {
        return Err(Error::Precondition(format!("T does not commute with δ(ξ) (residual {rt:.2e})")));
    }
    Ok(setup.theta0(x) * t * x.adjoint())
}

/// Positions of the 2×2 block and of the mass-carrying singleton, for the
/// patterns with an `S³` fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpherePattern {
    /// The two indices of the doubled eigenvalue, in run order.
    pub pair: (usize, usize),
    /// Singleton index carrying the rest of `u₀`.
    pub partner: usize,
}

pub fn sphere_pattern(setup: &FiberSetup) -> Result<SpherePattern> {
    let blocks = &setup.delta.blocks;
    let pairs: Vec<&EigenBlock> = blocks.iter().filter(|b| b.multiplicity() == 2).collect();
    let massive: Vec<usize> = blocks
        .iter()
        .filter(|b| b.multiplicity() == 1 && !setup.u0.zero_pattern[b.indices[0]])
        .map(|b| b.indices[0])
        .collect();
    let ok = pairs.len() == 1
        && blocks.iter().all(|b| b.multiplicity() <= 2)
        && massive.len() == 1
        && !setup.u0.zero_pattern[pairs[0].last()];
    if !ok {
        let sizes: Vec<usize> = blocks.iter().map(EigenBlock::multiplicity).collect();
        return Err(Error::Unsupported(format!(
            "{}: blocks of sizes {sizes:?}, u₀ zero pattern {:?}",
            setup.xi, setup.u0.zero_pattern
        )));
    }
    Ok(SpherePattern { pair: (pairs[0].indices[0], pairs[0].indices[1]), partner: massive[0] })
}

/// The canonical representative `diag(Z, 1, …, 1)` (with `Z` sitting on the
/// doubled eigenvalue) of the orbit of `T`, and the stabilizer element `X`
/// reaching it.
#[derive(Debug, Clone, Serialize)]
pub struct GaugeFixed {
    #[serde(serialize_with = "complex_serde::matrix")]
    pub z: CMatrix,
    #[serde(serialize_with = "complex_serde::matrix")]
    pub x: CMatrix,
}

/// Stabilizer elements are diagonal, `X = diag(e^{iφ})`, with the phases on
/// the last index of the pair and on the partner tied together. Requiring
/// every singleton entry of `Θ₀(X)·T·X⁻¹` to be 1 and `det X = 1` is a
/// square real linear system in the phases; its solution is unique up to the
/// center, which does not move `Z`.
pub fn gauge_fix(setup: &FiberSetup, t: &CMatrix) -> Result<GaugeFixed> {
    let n = setup.n();
    let pat = sphere_pattern(setup)?;
    let rt = commutator_norm(t, &setup.delta.matrix());
    if rt > COMMUTE_TOL {
        return Err(Error::Precondition(format!("T does not commute with δ(ξ) (residual {rt:.2e})")));
    }
    let var = phase_variables(n, &pat);
    let nvars = n - 1;
    // Θ₀(X)_jj = e^{iφ_src(j)}: column j of Â₀ lies in one eigenspace of X.
    let mut src = vec![0usize; n];
    for (j, s) in src.iter_mut().enumerate() {
        let rows: Vec<usize> = (0..n).filter(|&i| setup.a0[(i, j)].norm() > 1e-9).map(|i| var[i]).collect();
        if rows.iter().any(|&v| v != rows[0]) {
            return Err(Error::Consistency(format!("column {j} of Â₀ mixes stabilizer eigenspaces")));
        }
        *s = rows[0];
    }
    let singles: Vec<usize> = (0..n).filter(|&j| j != pat.pair.0 && j != pat.pair.1).collect();
    let mut m = DMatrix::<f64>::zeros(nvars, nvars);
    let mut rhs = DVector::<f64>::zeros(nvars);
    for (row, &j) in singles.iter().enumerate() {
        m[(row, src[j])] += 1.0;
        m[(row, var[j])] -= 1.0;
        rhs[row] = -t[(j, j)].arg();
    }
    for v in &var {
        m[(nvars - 1, *v)] += 1.0;
    }
    let phi = m.lu().solve(&rhs).ok_or_else(|| Error::Consistency("gauge system is singular".into()))?;
    let x = diag(&var.iter().map(|&v| Complex64::from_polar(1.0, phi[v])).collect::<Vec<_>>());
    let fixed = setup.theta0(&x) * t * x.adjoint();
    let (p, q) = pat.pair;
    let mut expect = CMatrix::identity(n, n);
    for (a, b) in [(p, p), (p, q), (q, p), (q, q)] {
        expect[(a, b)] = fixed[(a, b)];
    }
    let off = max_abs(&(&fixed - &expect));
    if off > 1e-9 {
        return Err(Error::Consistency(format!("gauge-fixed matrix is not diag(Z, 1, …) (off by {off:.2e})")));
    }
    let z = CMatrix::from_fn(2, 2, |a, b| fixed[([p, q][a], [p, q][b])]);
    Ok(GaugeFixed { z, x })
}

/// Phase variable of each index; the pair's last index and the partner share
/// one.
fn phase_variables(n: usize, pat: &SpherePattern) -> Vec<usize> {
    let mut var = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if i == pat.partner {
            continue;
        }
        var[i] = next;
        next += 1;
    }
    var[pat.partner] = var[pat.pair.1];
    var
}

/// `T` with `Z` on the pair and ones elsewhere.
pub fn embed_pair(n: usize, pair: (usize, usize), z: &CMatrix) -> CMatrix {
    let mut t = CMatrix::identity(n, n);
    let idx = [pair.0, pair.1];
    for a in 0..2 {
        for b in 0..2 {
            t[(idx[a], idx[b])] = z[(a, b)];
        }
    }
    t
}

/// Haar-random element of `SU(n)_{δ(ξ)}`.
pub fn random_isotropy_element<R: Rng>(delta: &DeltaMatrix, rng: &mut R) -> CMatrix {
    let n = delta.n();
    let mut t = CMatrix::zeros(n, n);
    for b in &delta.blocks {
        let u = haar_unitary(b.multiplicity(), rng);
        for (a, &i) in b.indices.iter().enumerate() {
            for (c, &j) in b.indices.iter().enumerate() {
                t[(i, j)] = u[(a, c)];
            }
        }
    }
    let det = t.determinant();
    t * Complex64::from_polar(1.0, -det.arg() / n as f64)
}

/// Random element of the stabilizer for a sphere pattern.
pub fn random_stabilizer_element<R: Rng>(n: usize, pat: &SpherePattern, rng: &mut R) -> CMatrix {
    let var = phase_variables(n, pat);
    let phases: Vec<f64> = (0..n - 1).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
    let mean = var.iter().map(|&v| phases[v]).sum::<f64>() / n as f64;
    diag(&var.iter().map(|&v| Complex64::from_polar(1.0, phases[v] - mean)).collect::<Vec<_>>())
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSuiteReport {
    pub xi: AlcovePoint,
    pub x: ExactRational,
    pub samples: usize,
    pub seed: u64,
    pub max_commutator: f64,
    pub max_gauge_discrepancy: f64,
    pub min_displacement: f64,
    pub max_center_residual: f64,
    /// First failing sample, if any, with a description.
    pub failure: Option<(usize, String)>,
}

impl OrbitSuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Random `(X, T)` pairs: the twisted action stays in the isotropy group, the
/// gauge-fixed `Z` is constant on orbits, random `X` moves `T`, and central
/// elements do not.
pub fn orbit_invariance_suite(
    xi: &AlcovePoint,
    x: &ExactRational,
    samples: usize,
    seed: u64,
) -> Result<OrbitSuiteReport> {
    let setup = FiberSetup::new(xi, x)?;
    let pat = sphere_pattern(&setup)?;
    let n = setup.n();
    let dm = setup.delta.matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = OrbitSuiteReport {
        xi: xi.clone(),
        x: x.clone(),
        samples,
        seed,
        max_commutator: 0.0,
        max_gauge_discrepancy: 0.0,
        min_displacement: f64::INFINITY,
        max_center_residual: 0.0,
        failure: None,
    };
    for s in 0..samples {
        let t = random_isotropy_element(&setup.delta, &mut rng);
        let xs = random_stabilizer_element(n, &pat, &mut rng);
        let moved = twisted_action(&setup, &xs, &t)?;
        let comm = commutator_norm(&moved, &dm);
        let gap = max_abs(&(gauge_fix(&setup, &moved)?.z - gauge_fix(&setup, &t)?.z));
        let disp = max_abs(&(&moved - &t));
        let k = rng.random_range(0..n);
        let centre = CMatrix::identity(n, n) * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        let cres = max_abs(&(twisted_action(&setup, &centre, &t)? - &t));
        rep.max_commutator = rep.max_commutator.max(comm);
        rep.max_gauge_discrepancy = rep.max_gauge_discrepancy.max(gap);
        rep.min_displacement = rep.min_displacement.min(disp);
        rep.max_center_residual = rep.max_center_residual.max(cres);
        if rep.failure.is_none() {
            let why = if comm > COMMUTE_TOL {
                Some(format!("twisted action leaves the isotropy group ({comm:.2e})"))
            } else if gap > 1e-9 {
                Some(format!("gauge-fixed Z differs along the orbit ({gap:.2e})"))
            } else if disp < 1e-6 {
                Some(format!("random X fixes T ({disp:.2e})"))
            } else if cres > 1e-12 {
                Some(format!("central element moves T ({cres:.2e})"))
            } else {
                None
            };
            rep.failure = why.map(|w| (s, w));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{edge_directions_at, simplest_type_ii_vertices, PolytopeModel};
    use crate::sampling::haar_special_unitary;
    use approx::assert_abs_diff_eq;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn n4_vertex(x: &ExactRational) -> AlcovePoint {
        AlcovePoint::new(vec![r(0, 1), x.clone(), &r(1, 1) - &x.scale(2), x.clone()])
    }

    #[test]
    fn isotropy_examples() {
        let iso = isotropy_of(&AlcovePoint::barycentre(5));
        assert_eq!((iso.blocks.len(), iso.group_dim), (5, 4));
        let iso = isotropy_of(&n4_vertex(&r(5, 12)));
        assert_eq!(iso.group_dim, 5);
        assert_eq!(iso.description, "S(U(2)×U(1)×U(1))");
        let central = isotropy_of(&AlcovePoint::from_fracs(&[(0, 1), (1, 1), (0, 1)]));
        assert_eq!((central.blocks.len(), central.group_dim), (1, 8));
    }

    #[test]
    fn stabilizer_dimensions() {
        let x = r(5, 12);
        let v = n4_vertex(&x);
        let st = stabilizer_of(&v, &solve_u(&v, &x).unwrap());
        assert_eq!(st.group_dim, 2);
        assert_eq!(st.per_block, vec![BlockStabilizer::Split(2), BlockStabilizer::Split(1), BlockStabilizer::Full(1)]);
        let p = AlcovePoint::barycentre(4);
        assert_eq!(stabilizer_of(&p, &solve_u(&p, &x).unwrap()).group_dim, 0);
        let (n, x) = (6, r(9, 40));
        let (_, is) = simplest_type_ii_vertices(n, &x);
        for p in &is {
            assert_eq!(stabilizer_of(p, &solve_u(p, &x).unwrap()).group_dim, n - 2);
        }
    }

    #[test]
    fn report_examples() {
        let rep = fiber_report(&AlcovePoint::barycentre(5), &r(7, 24)).unwrap();
        assert_eq!((rep.recognized_type.clone(), rep.fiber_dim), (FiberType::Torus(4), 4));
        let x = r(5, 12);
        let (rv, _) = simplest_type_ii_vertices(4, &x);
        let rep = fiber_report(&rv, &x).unwrap();
        assert_eq!((rep.recognized_type, rep.fiber_dim), (FiberType::Point, 0));
        let (_, is) = simplest_type_ii_vertices(5, &r(7, 24));
        let rep = fiber_report(&is[1], &r(7, 24)).unwrap();
        assert_eq!((rep.recognized_type, rep.fiber_dim), (FiberType::Sphere3, 3));
    }

    #[test]
    fn outside_point_is_a_membership_error() {
        let p = AlcovePoint::from_fracs(&[(1, 2), (1, 2), (0, 1), (0, 1)]);
        assert!(matches!(fiber_report(&p, &r(5, 12)), Err(Error::NotInPolytope(_))));
    }

    #[test]
    fn every_vertex_has_expected_dimension() {
        for (n, x) in [(4, r(5, 12)), (5, r(7, 24)), (6, r(9, 40))] {
            let m = PolytopeModel::compute(n, &x).unwrap();
            for v in &m.vertices {
                let rep = fiber_report(&v.point, &x).unwrap();
                let want = if v.point.is_singular() { 3 } else { 0 };
                assert_eq!(rep.fiber_dim, want, "{}", v.point);
            }
        }
    }

    #[test]
    fn torus_dimension_drops_with_active_constraints() {
        // One active constraint: ξ1 = x.
        let x = r(5, 12);
        let p = AlcovePoint::from_fracs(&[(5, 12), (1, 8), (1, 3), (1, 8)]);
        assert_eq!(fiber_report(&p, &x).unwrap().recognized_type, FiberType::Torus(2));
        // Midpoint of an edge at a regular vertex: two active constraints.
        let m = PolytopeModel::compute(4, &x).unwrap();
        let a = &m.vertices.iter().find(|v| !v.point.is_singular()).unwrap().point;
        let e = &edge_directions_at(a, &m).unwrap()[0];
        let mid =
            AlcovePoint::new(a.coords.iter().zip(&e.neighbour.coords).map(|(p, q)| &(p + q) * &r(1, 2)).collect());
        assert_eq!(fiber_report(&mid, &x).unwrap().recognized_type, FiberType::Torus(1));
    }

    #[test]
    fn n4_theta0_and_gauge_relations() {
        let x = r(5, 12);
        let setup = FiberSetup::new(&n4_vertex(&x), &x).unwrap();
        let (a, b, c) =
            (Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -0.2), Complex64::from_polar(1.0, 0.1));
        let xm = diag(&[a, b, b, c]);
        let th = setup.theta0(&xm);
        assert!(max_abs(&(th - diag(&[c, b, a, b]))) < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = random_isotropy_element(&setup.delta, &mut rng);
        let g = gauge_fix(&setup, &t).unwrap();
        let (ga, gb, gc) = (g.x[(0, 0)], g.x[(1, 1)], g.x[(3, 3)]);
        let (g3, g4) = (t[(2, 2)], t[(3, 3)]);
        assert!((gb.powi(4) - g3 / g4).norm() < 1e-12);
        assert!((ga - gb / g3).norm() < 1e-12);
        assert!((gc - gb * g4).norm() < 1e-12);
        assert_abs_diff_eq!((g.z.determinant() - Complex64::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn gauge_fix_is_idempotent() {
        let x = r(5, 12);
        let setup = FiberSetup::new(&n4_vertex(&x), &x).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let z = haar_special_unitary(2, &mut rng);
        let t = embed_pair(4, (0, 1), &z);
        assert!(max_abs(&(gauge_fix(&setup, &t).unwrap().z - z)) < 1e-12);
    }

    #[test]
    fn fixed_points_are_central() {
        // Θ₀(X)·T·X⁻¹ = T with T = 1 forces diag(c,b,a,b) = diag(a,b,b,c).
        let x = r(5, 12);
        let setup = FiberSetup::new(&n4_vertex(&x), &x).unwrap();
        let xm = diag(&[
            Complex64::from_polar(1.0, 0.4),
            Complex64::from_polar(1.0, -0.1),
            Complex64::from_polar(1.0, -0.1),
            Complex64::from_polar(1.0, -0.2),
        ]);
        let id = CMatrix::identity(4, 4);
        assert!(max_abs(&(twisted_action(&setup, &xm, &id).unwrap() - &id)) > 0.1);
    }

    #[test]
    fn twisted_action_rejects_non_stabilizer() {
        let x = r(5, 12);
        let setup = FiberSetup::new(&n4_vertex(&x), &x).unwrap();
        let bad = diag(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(1.0, 0.0),
        ]);
        assert!(twisted_action(&setup, &bad, &CMatrix::identity(4, 4)).is_err());
    }

    #[test]
    fn gauge_fix_rejects_other_patterns() {
        let x = r(5, 12);
        let setup = FiberSetup::new(&AlcovePoint::barycentre(4), &x).unwrap();
        assert!(matches!(gauge_fix(&setup, &CMatrix::identity(4, 4)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn orbit_suites() {
        let cases = [(4, r(5, 12), 0), (5, r(7, 24), 0), (6, r(9, 40), 1)];
        for (n, x, s) in cases {
            let (_, is) = simplest_type_ii_vertices(n, &x);
            let rep = orbit_invariance_suite(&is[s], &x, 30, 0).unwrap();
            assert!(rep.passed(), "{:?}", rep.failure);
        }
    }
}
