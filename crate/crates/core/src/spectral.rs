//! The complex-matrix layer: `δ(ξ)`, `μ₀(y)`, `μ̂(y,u)`, the eigenvalue map
//! `Ξ`, the functions `z_ℓ`, the block masses `Σ_{M_k} |u_j|²` and the
//! conjugator `Â₀`.
//!
//! Phases of `δ(ξ)` are kept as exact rationals (in turns), so coincidences
//! between eigenvalues, and between `e^{2iy}Δ_k` and some `Δ_p`, are decided
//! exactly. Only the final products are evaluated in floating point.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{build_h_representation, contains, AlcovePoint, Membership};
use crate::rational::ExactRational;

pub type CMatrix = DMatrix<Complex64>;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `e^{2πi t}`.
pub fn cis(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

fn cis_exact(t: &ExactRational) -> Complex64 {
    cis(t.fract_positive().to_f64())
}

/// `e^{2πia} − e^{2πib}` with the difference `a − b` taken exactly.
fn chord(a: &ExactRational, b: &ExactRational) -> Complex64 {
    let (a, b) = (a.fract_positive(), b.fract_positive());
    let d = (&a - &b).to_f64();
    let s = (&a + &b).to_f64();
    Complex64::new(0.0, 2.0 * (PI * d).sin()) * cis(s / 2.0)
}

/// Max-norm of `U†U − 1`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Serializers writing complex numbers as `{"re": …, "im": …}`.
pub mod complex_serde {
    use num_complex::Complex64;
    use serde::ser::{SerializeSeq, SerializeStruct};
    use serde::Serializer;

    use super::CMatrix;

    struct C(Complex64);

    impl serde::Serialize for C {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut st = s.serialize_struct("Complex", 2)?;
            st.serialize_field("re", &self.0.re)?;
            st.serialize_field("im", &self.0.im)?;
            st.end()
        }
    }

    pub fn one<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&C(*z), s)
    }

    pub fn vec<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&C(*z))?;
        }
        seq.end()
    }

    /// Row-major nested arrays.
    pub fn matrix<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<C>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| C(m[(i, j)])).collect()).collect();
        serde::Serialize::serialize(&rows, s)
    }
}

pub fn diag(v: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_column_slice(v))
}

/// A maximal set of equal eigenvalues of `δ(ξ)`. The indices form a cyclic
/// run and are listed in run order (0-based).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenBlock {
    #[serde(serialize_with = "complex_serde::one")]
    pub value: Complex64,
    /// Phase in turns, in `[0, 1)`.
    pub phase: ExactRational,
    pub indices: Vec<usize>,
}

impl EigenBlock {
    pub fn multiplicity(&self) -> usize {
        self.indices.len()
    }

    pub fn last(&self) -> usize {
        *self.indices.last().expect("blocks are nonempty")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaMatrix {
    pub xi: AlcovePoint,
    /// `δ_j = e^{2πiθ_j}`, `θ_j` reduced to `[0, 1)`.
    pub phases: Vec<ExactRational>,
    #[serde(serialize_with = "complex_serde::vec")]
    pub diagonal: Vec<Complex64>,
    pub blocks: Vec<EigenBlock>,
}

impl DeltaMatrix {
    pub fn n(&self) -> usize {
        self.diagonal.len()
    }

    pub fn matrix(&self) -> CMatrix {
        diag(&self.diagonal)
    }

    pub fn det(&self) -> Complex64 {
        self.diagonal.iter().product()
    }

    pub fn is_regular(&self) -> bool {
        self.blocks.len() == self.n()
    }

    /// Index of the block holding diagonal position `j`.
    pub fn block_of(&self, j: usize) -> usize {
        self.blocks.iter().position(|b| b.indices.contains(&j)).expect("every index is in a block")
    }
}

/// `δ(ξ)`: `θ_1 = (1/n)Σ j ξ_j`, `θ_{k+1} = θ_k + ξ_k`.
pub fn delta_of(xi: &AlcovePoint) -> DeltaMatrix {
    let n = xi.n();
    let mut theta = Vec::with_capacity(n);
    let first: ExactRational = xi.coords.iter().enumerate().map(|(j, c)| c.scale(j as i64 + 1)).sum::<ExactRational>()
        * ExactRational::new(1, n as i64);
    theta.push(first);
    for k in 0..n - 1 {
        let next = &theta[k] + &xi.coords[k];
        theta.push(next);
    }
    let phases: Vec<ExactRational> = theta.iter().map(ExactRational::fract_positive).collect();
    let diagonal = phases.iter().map(cis_exact).collect();
    let blocks = cluster(&phases);
    DeltaMatrix { xi: xi.clone(), phases, diagonal, blocks }
}

fn cluster(phases: &[ExactRational]) -> Vec<EigenBlock> {
    let n = phases.len();
    let same = |j: usize| phases[j] == phases[(j + 1) % n];
    let starts: Vec<usize> = (0..n).filter(|&j| !same((j + n - 1) % n)).collect();
    let runs: Vec<Vec<usize>> = if starts.is_empty() {
        vec![(0..n).collect()]
    } else {
        starts
            .iter()
            .map(|&s| {
                let mut run = vec![s];
                let mut j = s;
                while same(j) {
                    j = (j + 1) % n;
                    run.push(j);
                }
                run
            })
            .collect()
    };
    let mut blocks: Vec<EigenBlock> = runs
        .into_iter()
        .map(|indices| EigenBlock { value: cis_exact(&phases[indices[0]]), phase: phases[indices[0]].clone(), indices })
        .collect();
    blocks.sort_by_key(|b| *b.indices.iter().min().expect("nonempty"));
    blocks
}

/// Gaps below this are read as exact eigenvalue coincidences.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Gaps between `CLUSTER_TOL` and this are reported as ambiguous.
pub const AMBIGUITY_TOL: f64 = 1e-6;

/// `Ξ(g)`: the alcove point (units of π, floating point) whose `δ` is
/// conjugate to `g`.
pub fn xi_of(g: &CMatrix) -> Result<Vec<f64>> {
    let n = g.nrows();
    if n < 2 || g.ncols() != n {
        return Err(Error::Precondition(format!("{}×{} is not a square matrix of order ≥ 2", n, g.ncols())));
    }
    let defect = unitarity_defect(g);
    if defect > 1e-8 {
        return Err(Error::Precondition(format!("matrix is not unitary (defect {defect:.2e})")));
    }
    let det = g.determinant();
    if (det - ONE).norm() > 1e-8 {
        return Err(Error::Precondition(format!("det = {det} is not 1")));
    }
    let eig =
        g.clone().schur().eigenvalues().ok_or_else(|| Error::Consistency("Schur form did not triangularise".into()))?;
    let mut ph: Vec<f64> = eig.iter().map(|l| (l.arg() / (2.0 * PI)).rem_euclid(1.0)).collect();
    ph.sort_by(f64::total_cmp);
    let mut gaps: Vec<f64> =
        (0..n).map(|i| if i + 1 < n { ph[i + 1] - ph[i] } else { ph[0] + 1.0 - ph[n - 1] }).collect();
    for gap in gaps.iter_mut() {
        if *gap < CLUSTER_TOL {
            *gap = 0.0;
        } else if *gap < AMBIGUITY_TOL {
            return Err(Error::Ambiguous(format!(
                "eigenphase gap {gap:.3e} lies between {CLUSTER_TOL:e} and {AMBIGUITY_TOL:e}"
            )));
        }
    }
    let candidate = |r: usize| -> (Vec<f64>, f64) {
        let xi: Vec<f64> = (0..n).map(|j| gaps[(r + j) % n]).collect();
        let theta1: f64 = xi.iter().enumerate().map(|(j, v)| (j + 1) as f64 * v).sum::<f64>() / n as f64;
        (xi, (cis(theta1) - cis(ph[r])).norm())
    };
    let mut scored: Vec<(Vec<f64>, f64)> = (0..n).map(candidate).collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (best, err) = scored[0].clone();
    if err > 1e-6 {
        return Err(Error::Consistency(format!("no rotation reproduces δ_1 (best mismatch {err:.2e})")));
    }
    let rival = scored[1..]
        .iter()
        .find(|(xi, e)| *e < AMBIGUITY_TOL && xi.iter().zip(&best).any(|(a, b)| (a - b).abs() > CLUSTER_TOL));
    if rival.is_some() {
        return Err(Error::Ambiguous("two rotations reproduce δ_1".into()));
    }
    Ok(best)
}

/// `μ₀(y) = diag(e^{2iy}, …, e^{2iy}, e^{−2(n−1)iy})`, `y` in radians.
pub fn mu_zero(n: usize, y: f64) -> CMatrix {
    let mut d = vec![Complex64::from_polar(1.0, 2.0 * y); n];
    d[n - 1] = Complex64::from_polar(1.0, -2.0 * (n as f64 - 1.0) * y);
    diag(&d)
}

/// `μ̂(y,u) = e^{2iy}·1 + (e^{−2(n−1)iy} − e^{2iy}) u u†`.
pub fn mu_hat(y: f64, u: &[Complex64]) -> Result<CMatrix> {
    let n = u.len();
    let norm: f64 = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(format!("‖u‖ = {norm} is not 1")));
    }
    let a = Complex64::from_polar(1.0, 2.0 * y);
    let b = Complex64::from_polar(1.0, -2.0 * (n as f64 - 1.0) * y);
    let uv = DVector::from_column_slice(u);
    Ok(CMatrix::identity(n, n) * a + (&uv * uv.adjoint()) * (b - a))
}

fn check_parameter(n: usize, x: &ExactRational) -> Result<()> {
    build_h_representation(n, x).map(|_| ())
}

/// `z_ℓ` from the product over eigenvalues:
/// `sin y / sin ny · Π_{j≠ℓ} (e^{iy}δ_ℓ − e^{−iy}δ_j)/(δ_ℓ − δ_j)`.
pub fn z_product_form(xi: &AlcovePoint, x: &ExactRational) -> Result<Vec<Complex64>> {
    let n = xi.n();
    check_parameter(n, x)?;
    let d = delta_of(xi);
    if !d.is_regular() {
        return Err(not_regular(xi));
    }
    let y = PI * x.to_f64();
    let pref = y.sin() / (n as f64 * y).sin();
    let half = x * &ExactRational::new(1, 2);
    Ok((0..n)
        .map(|l| {
            (0..n).filter(|&j| j != l).fold(Complex64::new(pref, 0.0), |acc, j| {
                let num = chord(&(&d.phases[l] + &half), &(&d.phases[j] - &half));
                acc * num / chord(&d.phases[l], &d.phases[j])
            })
        })
        .collect())
}

/// `z_ℓ` from cyclic partial sums:
/// `sin y / sin ny · Π_{j=ℓ+1}^{ℓ+n−1} sin(S_{ℓ,j} − y)/sin S_{ℓ,j}`,
/// `S_{ℓ,j} = ξ_ℓ + … + ξ_{j−1}`.
pub fn z_partial_sum_form(xi: &AlcovePoint, x: &ExactRational) -> Result<Vec<f64>> {
    let n = xi.n();
    check_parameter(n, x)?;
    if xi.is_singular() {
        return Err(not_regular(xi));
    }
    let y = PI * x.to_f64();
    let pref = y.sin() / (n as f64 * y).sin();
    Ok((1..=n as i64)
        .map(|l| {
            let mut s = ExactRational::zero();
            let mut acc = pref;
            for j in l + 1..l + n as i64 {
                s = &s + xi.at(j - 1);
                acc *= (PI * (&s - x).to_f64()).sin() / (PI * s.to_f64()).sin();
            }
            acc
        })
        .collect())
}

fn not_regular(xi: &AlcovePoint) -> Error {
    Error::NotRegular(format!("{xi} has a vanishing coordinate; use residue_constraints for block masses"))
}

/// Both closed forms of `z_ℓ`, checked against each other and `Σ z_ℓ = 1`.
pub fn z_functions(xi: &AlcovePoint, x: &ExactRational, tol: f64) -> Result<Vec<f64>> {
    let a = z_product_form(xi, x)?;
    let b = z_partial_sum_form(xi, x)?;
    let gap = a.iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    if gap > tol {
        return Err(Error::Consistency(format!("the two forms of z differ by {gap:.2e}")));
    }
    let sum: f64 = b.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::Consistency(format!("Σ z = {sum}")));
    }
    Ok(b)
}

/// Mass `Σ_{j∈M_k} |u_j|²` of one eigenvalue block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockMass {
    pub indices: Vec<usize>,
    pub mass: f64,
    /// Order of the pole of `Πδ(ζ)/Π(Yδ − ζ)` at `ζ = YΔ_k`. Zero or negative
    /// means the block carries no mass.
    pub pole_order: i64,
}

/// Block masses from the residues of
/// `F(ζ) = Π(δ_j − ζ)/Π(Yδ_j − ζ) − 1` at `ζ_k = YΔ_k`, `Y = e^{2iy}`:
/// `(e^{2i(1−n)y} − Y)·Δ_k·mass_k = −Res_{ζ_k} F`.
pub fn residue_constraints(xi: &AlcovePoint, x: &ExactRational) -> Result<Vec<BlockMass>> {
    let n = xi.n();
    let model = build_h_representation(n, x)?;
    if let Membership::Outside { violated } = contains(xi, &model)? {
        return Err(Error::NotInPolytope(format!("{xi} violates constraints {violated:?} at x = {x}")));
    }
    let d = delta_of(xi);
    let yp = x.scale(1 - n as i64);
    let mut out = Vec::with_capacity(d.blocks.len());
    for (k, bk) in d.blocks.iter().enumerate() {
        let zeta = (&bk.phase + x).fract_positive();
        let p = d.blocks.iter().position(|b| b.phase == zeta);
        let c = p.map_or(0, |p| d.blocks[p].multiplicity());
        let order = bk.multiplicity() as i64 - c as i64;
        if order >= 2 {
            return Err(Error::NotInPolytope(format!("{xi}: pole of order {order} at e^{{2iy}}Δ_{}", k + 1)));
        }
        let mass = if order <= 0 {
            0.0
        } else {
            let mut num = ONE;
            let mut den = ONE;
            for (l, bl) in d.blocks.iter().enumerate() {
                let m = bl.multiplicity() as i32;
                if Some(l) != p {
                    num *= chord(&bl.phase, &zeta).powi(m);
                }
                if l != k {
                    den *= chord(&(&bl.phase + x), &zeta).powi(m);
                }
            }
            // (e^{2i(1−n)y} − Y)Δ_k
            den *= chord(&yp, x) * bk.value;
            let w = num / den;
            if w.im.abs() > 1e-8 * w.norm().max(1.0) {
                return Err(Error::Consistency(format!("block mass {w} is not real")));
            }
            w.re
        };
        out.push(BlockMass { indices: bk.indices.clone(), mass, pole_order: order });
    }
    let total: f64 = out.iter().map(|b| b.mass).sum();
    if (total - 1.0).abs() > 1e-9 || out.iter().any(|b| b.mass < -1e-9) {
        return Err(Error::Consistency(format!("block masses {:?} do not form a distribution", out)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UVector {
    #[serde(serialize_with = "complex_serde::vec")]
    pub components: Vec<Complex64>,
    pub zero_pattern: Vec<bool>,
}

impl UVector {
    pub fn from_components(components: Vec<Complex64>) -> Self {
        let zero_pattern = components.iter().map(|c| *c == Complex64::new(0.0, 0.0)).collect();
        Self { components, zero_pattern }
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_vector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.components)
    }
}

/// Residual of `Π(δ_j − ζ) = Π(Yδ_j − ζ) + (e^{2i(1−n)y} − Y)Σ|u_k|²δ_kΠ_{j≠k}(Yδ_j − ζ)`
/// at `2n` points of the unit circle, relative to the size of the terms.
pub fn char_identity_residual(d: &DeltaMatrix, x: &ExactRational, u: &[Complex64]) -> f64 {
    let n = d.n();
    let y = PI * x.to_f64();
    let yy = Complex64::from_polar(1.0, 2.0 * y);
    let yp = Complex64::from_polar(1.0, 2.0 * (1.0 - n as f64) * y);
    let mut worst: f64 = 0.0;
    for s in 0..2 * n {
        let zeta = cis((s as f64 + 0.5) / (2 * n) as f64);
        let lhs: Complex64 = d.diagonal.iter().map(|dj| dj - zeta).product();
        let shifted: Vec<Complex64> = d.diagonal.iter().map(|dj| yy * dj - zeta).collect();
        let mut rhs: Complex64 = shifted.iter().product();
        for k in 0..n {
            let rest: Complex64 = (0..n).filter(|&j| j != k).map(|j| shifted[j]).product();
            rhs += (yp - yy) * u[k].norm_sqr() * d.diagonal[k] * rest;
        }
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    worst
}

/// Canonical `u₀`: nonnegative real entries, each block's mass on the block's
/// last index.
pub fn solve_u(xi: &AlcovePoint, x: &ExactRational) -> Result<UVector> {
    let masses = residue_constraints(xi, x)?;
    let mut comps = vec![Complex64::new(0.0, 0.0); xi.n()];
    for b in &masses {
        comps[*b.indices.last().expect("nonempty")] = Complex64::new(b.mass.max(0.0).sqrt(), 0.0);
    }
    let u = UVector::from_components(comps);
    let res = char_identity_residual(&delta_of(xi), x, &u.components);
    if res > 1e-9 {
        return Err(Error::Consistency(format!("characteristic identity residual {res:.2e}")));
    }
    Ok(u)
}

/// Orthonormal basis of the eigenspace of `m` for `value`, of dimension
/// `dim`, by greedy pivoted Gram–Schmidt of projected standard vectors.
fn eigenspace_basis(m: &CMatrix, value: Complex64, dim: usize) -> Result<Vec<DVector<Complex64>>> {
    let n = m.nrows();
    let shifted = m - CMatrix::identity(n, n) * value;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let small = svd.singular_values[order[dim - 1]];
    let next = order.get(dim).map_or(f64::INFINITY, |&i| svd.singular_values[i]);
    if small > 1e-8 || next < 1e-6 {
        return Err(Error::Consistency(format!(
            "eigenvalue {value} should have multiplicity {dim}; singular values {small:.2e}, {next:.2e}"
        )));
    }
    let null: Vec<DVector<Complex64>> = order[..dim].iter().map(|&i| v_t.row(i).adjoint()).collect();
    let project =
        |i: usize| -> DVector<Complex64> { null.iter().fold(DVector::zeros(n), |acc, b| acc + b * b[i].conj()) };
    let mut chosen: Vec<DVector<Complex64>> = Vec::with_capacity(dim);
    let mut used = vec![false; n];
    for _ in 0..dim {
        let mut best: Option<(usize, DVector<Complex64>, f64)> = None;
        for i in (0..n).filter(|&i| !used[i]) {
            let mut r = project(i);
            for c in &chosen {
                let coef = c.dotc(&r);
                r -= c * coef;
            }
            let nr = r.norm();
            if best.as_ref().is_none_or(|b| nr > b.2 + 1e-12) {
                best = Some((i, r, nr));
            }
        }
        let (i, r, nr) = best.expect("dim ≤ n");
        used[i] = true;
        let mut v = r / Complex64::new(nr, 0.0);
        let big = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = v.iter().find(|z| z.norm() > big - 1e-12).copied().expect("nonzero vector");
        v *= pivot.conj() / pivot.norm();
        chosen.push(v);
    }
    Ok(chosen)
}

/// A special unitary `Â₀` with `Â₀ δ(ξ) Â₀⁻¹ = μ̂(y,u₀) δ(ξ)`.
///
/// Column `j` spans part of the eigenspace of `μ̂δ` for `δ_j`. Within an
/// eigenspace the basis comes from greedy Gram–Schmidt on projected standard
/// vectors, each column scaled so its largest entry is real positive; the
/// last column then absorbs the phase of the determinant.
pub fn solve_a0(xi: &AlcovePoint, x: &ExactRational, u0: &UVector) -> Result<CMatrix> {
    let n = xi.n();
    let d = delta_of(xi);
    let y = PI * x.to_f64();
    let m = mu_hat(y, &u0.components)? * d.matrix();
    let mut a0 = CMatrix::zeros(n, n);
    for b in &d.blocks {
        let basis = eigenspace_basis(&m, b.value, b.multiplicity())?;
        for (&j, v) in b.indices.iter().zip(basis) {
            a0.set_column(j, &v);
        }
    }
    let det = a0.determinant();
    let fix = det.conj() / det.norm();
    for i in 0..n {
        a0[(i, n - 1)] *= fix;
    }
    let defect = unitarity_defect(&a0);
    let residual = max_abs(&(&a0 * d.matrix() - &m * &a0));
    let det_err = (a0.determinant() - ONE).norm();
    if defect > 1e-9 || residual > 1e-9 || det_err > 1e-9 {
        return Err(Error::Consistency(format!(
            "Â₀ check failed: defect {defect:.2e}, residual {residual:.2e}, det error {det_err:.2e}"
        )));
    }
    Ok(a0)
}

/// `f_s(y) = sin((s+1)y)·sin((n−1)y) / (sin(sy)·sin(ny))` for
/// `π/(n−1) < y < π/(n−2)`, `y` in radians.
pub fn f_s(n: usize, s: usize, y: f64) -> Result<f64> {
    if n < 4 || s == 0 || s > n - 3 {
        return Err(Error::Precondition(format!("need 1 ≤ s ≤ n−3, got n = {n}, s = {s}")));
    }
    let t = y / PI;
    if !(t > 1.0 / (n as f64 - 1.0) && t < 1.0 / (n as f64 - 2.0)) {
        return Err(Error::Precondition(format!("y/π = {t} is outside (1/{}, 1/{})", n - 1, n - 2)));
    }
    let (s, n) = (s as f64, n as f64);
    Ok(((s + 1.0) * y).sin() * ((n - 1.0) * y).sin() / ((s * y).sin() * (n * y).sin()))
}

/// Grid points `(n, s, y/π, f_s)` with `|f_s − 1| < tol`, over `n ∈ 4..=n_max`
/// and `steps` interior points of each interval.
pub fn scan_f_s_near_one(n_max: usize, steps: usize, tol: f64) -> Vec<(usize, usize, f64, f64)> {
    let mut hits = Vec::new();
    for n in 4..=n_max {
        let (lo, hi) = (1.0 / (n as f64 - 1.0), 1.0 / (n as f64 - 2.0));
        for s in 1..=n - 3 {
            for i in 1..steps {
                let t = lo + (hi - lo) * i as f64 / steps as f64;
                if let Ok(v) = f_s(n, s, PI * t) {
                    if (v - 1.0).abs() < tol {
                        hits.push((n, s, t, v));
                    }
                }
            }
        }
    }
    hits
}
