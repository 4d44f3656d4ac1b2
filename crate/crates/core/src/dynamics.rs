//! Lax matrices, the cross-section of the moment-map level set, the
//! trigonometric RS Hamiltonian, and the flows generated by class functions
//! of `B`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{embed_pair, gauge_fix, FiberSetup};
use crate::polytope::AlcovePoint;
use crate::rational::ExactRational;
use crate::sampling::haar_special_unitary;
use crate::spectral::{complex_serde, delta_of, diag, max_abs, mu_zero, unitarity_defect, z_partial_sum_form, CMatrix};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// The real orthogonal matrix with last column `v`:
/// `g_{jn} = −g_{nj} = v_j`, `g_{nn} = v_n`, `g_{jl} = δ_{jl} − v_j v_l/(1+v_n)`.
pub fn reflection_g(v: &[f64]) -> Result<CMatrix> {
    let n = v.len();
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(format!("‖v‖ = {norm} is not 1")));
    }
    let vn = v[n - 1];
    if (1.0 + vn).abs() < 1e-12 {
        return Err(Error::DegenerateInput("v_n = −1 is outside the chart".into()));
    }
    Ok(CMatrix::from_fn(n, n, |j, l| {
        let e = match (j == n - 1, l == n - 1) {
            (true, true) => vn,
            (false, true) => v[j],
            (true, false) => -v[l],
            (false, false) => f64::from(u8::from(j == l)) - v[j] * v[l] / (1.0 + vn),
        };
        real(e)
    }))
}

/// `ϱ(θ) = exp(i Σ θ_j (E_{j+1,j+1} − E_{jj}))` as its diagonal.
pub fn torus_element(theta: &[f64]) -> Vec<Complex64> {
    let n = theta.len() + 1;
    (0..n)
        .map(|l| {
            let up = if l > 0 { theta[l - 1] } else { 0.0 };
            let down = if l < n - 1 { theta[l] } else { 0.0 };
            Complex64::from_polar(1.0, up - down)
        })
        .collect()
}

fn positive_roots(xi: &AlcovePoint, x: &ExactRational) -> Result<Vec<f64>> {
    let z = z_partial_sum_form(xi, x)?;
    if let Some(l) = z.iter().position(|v| *v <= 0.0) {
        return Err(Error::NotInPolytope(format!("{xi} is not interior at x = {x}: z_{} = {:.3e}", l + 1, z[l])));
    }
    Ok(z.iter().map(|v| v.sqrt()).collect())
}

/// `ℒ(ξ,θ)_{jl} = sin ny/sin y · (e^{iy} − e^{−iy})/(e^{iy}δ_j/δ_l − e^{−iy})
/// · v_j(ξ,y) v_l(ξ,π−y) ϱ(θ)_l` with `v = √z`.
pub fn lax_local(xi: &AlcovePoint, theta: &[f64], x: &ExactRational) -> Result<CMatrix> {
    let n = xi.n();
    if theta.len() + 1 != n {
        return Err(Error::Precondition(format!("{} angles given, need {}", theta.len(), n - 1)));
    }
    let vy = positive_roots(xi, x)?;
    let vpy = positive_roots(xi, &(&ExactRational::one() - x))?;
    let d = delta_of(xi).diagonal;
    let rho = torus_element(theta);
    let y = PI * x.to_f64();
    let pref = (n as f64 * y).sin() / y.sin();
    let (ey, emy) = (Complex64::from_polar(1.0, y), Complex64::from_polar(1.0, -y));
    Ok(CMatrix::from_fn(n, n, |j, l| pref * (ey - emy) / (ey * d[j] / d[l] - emy) * vy[j] * vpy[l] * rho[l]))
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossSectionPoint {
    pub xi: AlcovePoint,
    pub theta: Vec<f64>,
    #[serde(serialize_with = "complex_serde::matrix")]
    pub a: CMatrix,
    #[serde(serialize_with = "complex_serde::matrix")]
    pub b: CMatrix,
    /// Max-norm of `ABA⁻¹B⁻¹ − μ₀(y)`.
    pub residual: f64,
}

/// `(g⁻¹ℒg, g⁻¹δg)` with `g = g(v(ξ,y))`.
pub fn cross_section(xi: &AlcovePoint, theta: &[f64], x: &ExactRational) -> Result<CrossSectionPoint> {
    let l = lax_local(xi, theta, x)?;
    let g = reflection_g(&positive_roots(xi, x)?)?;
    let gt = g.transpose();
    let a = &gt * l * &g;
    let b = &gt * delta_of(xi).matrix() * &g;
    let residual = moment_residual(&a, &b, PI * x.to_f64());
    Ok(CrossSectionPoint { xi: xi.clone(), theta: theta.to_vec(), a, b, residual })
}

/// Max-norm of `ABA⁻¹B⁻¹ − μ₀(y)`.
pub fn moment_residual(a: &CMatrix, b: &CMatrix, y: f64) -> f64 {
    max_abs(&(a * b * a.adjoint() * b.adjoint() - mu_zero(a.nrows(), y)))
}

/// `H(q,p) = Σ_ℓ cos p_ℓ · [Π_{j≠ℓ} (1 − sin²y / sin²(q_ℓ − q_j))]^{1/2}`.
pub fn rs_hamiltonian(q: &[f64], p: &[f64], y: f64) -> Result<f64> {
    let n = q.len();
    if p.len() != n {
        return Err(Error::Precondition("q and p differ in length".into()));
    }
    let s2 = y.sin().powi(2);
    let mut h = 0.0;
    for l in 0..n {
        let prod: f64 = (0..n).filter(|&j| j != l).map(|j| 1.0 - s2 / (q[l] - q[j]).sin().powi(2)).product();
        if prod < -1e-12 {
            return Err(Error::Precondition(format!("negative factor {prod:.3e} at ℓ = {}", l + 1)));
        }
        h += p[l].cos() * prod.max(0.0).sqrt();
    }
    Ok(h)
}

/// `sign(sin πx / sin nπx)`, read off from `⌊nx⌋`.
pub fn trace_sign(n: usize, x: &ExactRational) -> f64 {
    if num_integer::Integer::is_even(&x.scale(n as i64).floor()) {
        1.0
    } else {
        -1.0
    }
}

/// `|Re(s·tr ℒ) − H(q,p)|` with `δ_j = e^{2iq_j}`, `ϱ_j = e^{ip_j}`.
pub fn trace_discrepancy(xi: &AlcovePoint, theta: &[f64], x: &ExactRational) -> Result<f64> {
    let l = lax_local(xi, theta, x)?;
    let d = delta_of(xi);
    let q: Vec<f64> = d.phases.iter().map(|t| PI * t.to_f64()).collect();
    let p: Vec<f64> = torus_element(theta).iter().map(|r| r.arg()).collect();
    let h = rs_hamiltonian(&q, &p, PI * x.to_f64())?;
    Ok(((l.trace() * trace_sign(xi.n(), x)).re - h).abs())
}

/// `(A·e^{t∇h(B)}, B)`.
pub fn flow_b_hamiltonian(a: &CMatrix, b: &CMatrix, gradient: &CMatrix, t: f64) -> Result<(CMatrix, CMatrix)> {
    let c = max_abs(&(gradient * b - b * gradient));
    if c > 1e-9 {
        return Err(Error::Precondition(format!("gradient does not commute with B ({c:.2e})")));
    }
    Ok((a * (gradient * real(t)).exp(), b.clone()))
}

fn power(g: &CMatrix, k: i32) -> CMatrix {
    let base = if k >= 0 { g.clone() } else { g.adjoint() };
    let mut out = CMatrix::identity(g.nrows(), g.nrows());
    for _ in 0..k.unsigned_abs() {
        out = &out * &base;
    }
    out
}

/// `∇φ_k` for `φ_k = tr(g^k + g^{−k})/2k` (`k > 0`) and
/// `φ_{−k} = tr(g^k − g^{−k})/2ik`, with respect to `⟨X,Y⟩ = −½tr(XY)`.
pub fn gradient_phi(k: i32, g: &CMatrix) -> Result<CMatrix> {
    if k == 0 {
        return Err(Error::Precondition("k must be nonzero".into()));
    }
    let n = g.nrows();
    let m = k.abs();
    let (gp, gm) = (power(g, m), power(g, -m));
    let id = CMatrix::identity(n, n);
    Ok(if k > 0 {
        &gm - &gp + id * ((gp.trace() - gm.trace()) / n as f64)
    } else {
        (&gp + &gm) * I - id * (I * (gp.trace() + gm.trace()) / n as f64)
    })
}

/// `φ_k` itself, for finite-difference checks.
pub fn phi(k: i32, g: &CMatrix) -> f64 {
    let m = k.abs();
    let (gp, gm) = (power(g, m), power(g, -m));
    if k > 0 {
        ((gp.trace() + gm.trace()) / (2.0 * m as f64)).re
    } else {
        ((gp.trace() - gm.trace()) / (2.0 * I * m as f64)).re
    }
}

/// `h = Σ c_k φ_k` over `k ∈ ±{1, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterGradient {
    pub terms: Vec<(i32, f64)>,
    pub residual: f64,
}

impl CenterGradient {
    pub fn at(&self, g: &CMatrix) -> CMatrix {
        let n = g.nrows();
        self.terms.iter().fold(CMatrix::zeros(n, n), |acc, &(k, c)| acc + gradient_phi(k, g).expect("k ≠ 0") * real(c))
    }
}

/// Least-squares coefficients with `Σ c_k ∇φ_k(δ(ξ)) = target`.
pub fn build_center_gradient(xi: &AlcovePoint, target: &[Complex64]) -> Result<CenterGradient> {
    let n = xi.n();
    if target.len() != n {
        return Err(Error::Precondition(format!("target has {} entries, need {n}", target.len())));
    }
    let dm = delta_of(xi).matrix();
    let ks: Vec<i32> = (1..n as i32).flat_map(|k| [k, -k]).collect();
    let cols: Vec<CMatrix> = ks.iter().map(|&k| gradient_phi(k, &dm).expect("k ≠ 0")).collect();
    // Gradients at a diagonal point are diagonal and imaginary.
    let m = DMatrix::from_fn(n, ks.len(), |i, c| cols[c][(i, i)].im);
    let rhs = DVector::from_iterator(n, target.iter().map(|z| z.im));
    let coef = m
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::Consistency(format!("least squares failed: {e}")))?;
    let fitted = &m * &coef;
    let residual = (0..n).map(|i| (Complex64::new(0.0, fitted[i]) - target[i]).norm()).fold(0.0, f64::max);
    if residual > 1e-9 {
        return Err(Error::Precondition(format!(
            "target is not in the span of the class-function gradients (residual {residual:.2e})"
        )));
    }
    Ok(CenterGradient { terms: ks.into_iter().zip(coef.iter().copied()).collect(), residual })
}

/// Unitary with last column `u` and determinant 1: a Householder reflection
/// taking `e_n` to `u` (after moving the phase of `u_n` out), then
/// corrected in the first column.
pub fn unitary_with_last_column(u: &[Complex64]) -> CMatrix {
    let n = u.len();
    let phase = if u[n - 1].norm() > 0.0 { u[n - 1] / u[n - 1].norm() } else { real(1.0) };
    let v: Vec<Complex64> = u.iter().map(|c| c * phase.conj()).collect();
    let mut w = DVector::from_iterator(n, v.iter().map(|c| -c));
    w[n - 1] += real(1.0);
    let mut g = CMatrix::identity(n, n);
    let wn = w.norm();
    if wn > 1e-14 {
        g -= (&w * w.adjoint()) * real(2.0 / (wn * wn));
    }
    for i in 0..n {
        g[(i, n - 1)] *= phase;
    }
    let det = g.determinant();
    for i in 0..n {
        g[(i, 0)] *= det.conj() / det.norm();
    }
    g
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowCheck {
    pub which: u8,
    /// Max-norm deviation from the closed-form curve over the samples.
    pub max_error: f64,
    pub worst_t: f64,
    /// `‖Z(2π) − Z₀‖`.
    pub periodicity_error: f64,
    /// Largest drift of `ABA⁻¹B⁻¹` from `μ₀(y)`.
    pub moment_drift: f64,
}

impl FlowCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_error < tol && self.periodicity_error < tol && self.moment_drift < tol
    }
}

/// The two generators of the center at `(0, x, 1−2x, x)`:
/// `X₁ = −i·diag(1,1,−1,−1)`, `X₂ = −i·diag(0,0,1,−1)`.
pub fn center_generator(which: u8) -> Result<Vec<Complex64>> {
    let m = -I;
    match which {
        1 => Ok(vec![m, m, -m, -m]),
        2 => Ok(vec![real(0.0), real(0.0), m, -m]),
        _ => Err(Error::Precondition(format!("generator {which} is not 1 or 2"))),
    }
}

/// The closed-form curve: `Z₁(t) = diag(e^{it},1)·Z₀·diag(1,e^{−it})`,
/// `Z₂(t) = diag(e^{it},1)·Z₀·diag(e^{−it},1)`.
pub fn expected_fiber_curve(which: u8, z0: &CMatrix, t: f64) -> CMatrix {
    let e = Complex64::from_polar(1.0, t);
    let right = if which == 1 { diag(&[real(1.0), e.conj()]) } else { diag(&[e.conj(), real(1.0)]) };
    diag(&[e, real(1.0)]) * z0 * right
}

/// Flows the point `(g₀⁻¹Â₀·diag(Z₀,1,1)·g₀, g₀⁻¹δg₀)` over `(0, x, 1−2x, x)`
/// with the Hamiltonian whose gradient at `δ` is `X_which`, pulls each
/// sample back to the isotropy group and gauge-fixes it.
pub fn fiber_flow_check(x: &ExactRational, which: u8, z0: &CMatrix, ts: &[f64]) -> Result<FlowCheck> {
    let one = ExactRational::one();
    let xi = AlcovePoint::new(vec![ExactRational::zero(), x.clone(), &one - &x.scale(2), x.clone()]);
    let setup = FiberSetup::new(&xi, x)?;
    let grad = build_center_gradient(&xi, &center_generator(which)?)?;
    let g0 = unitary_with_last_column(&setup.u0.components);
    let t0 = embed_pair(4, (0, 1), z0);
    let a = g0.adjoint() * &setup.a0 * &t0 * &g0;
    let b = g0.adjoint() * setup.delta.matrix() * &g0;
    let y = PI * x.to_f64();
    let gb = grad.at(&b);
    let pull = |tt: f64| -> Result<(CMatrix, f64)> {
        let (at, bt) = flow_b_hamiltonian(&a, &b, &gb, tt)?;
        let drift = moment_residual(&at, &bt, y);
        let t = setup.a0.adjoint() * &g0 * at * g0.adjoint();
        Ok((gauge_fix(&setup, &t)?.z, drift))
    };
    let mut out = FlowCheck { which, max_error: 0.0, worst_t: 0.0, periodicity_error: 0.0, moment_drift: 0.0 };
    for &t in ts {
        let (z, drift) = pull(t)?;
        let err = max_abs(&(z - expected_fiber_curve(which, z0, t)));
        if err > out.max_error {
            out.max_error = err;
            out.worst_t = t;
        }
        out.moment_drift = out.moment_drift.max(drift);
    }
    let (z, drift) = pull(2.0 * PI)?;
    out.periodicity_error = max_abs(&(z - z0));
    out.moment_drift = out.moment_drift.max(drift);
    Ok(out)
}

/// Runs [`fiber_flow_check`] for both generators on `count` Haar-random
/// `Z₀`, returning the worst result of each.
pub fn fiber_flow_suite(x: &ExactRational, count: usize, seed: u64) -> Result<[FlowCheck; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts = [PI / 3.0, 1.0, PI, 4.0, 2.0 * PI];
    let mut worst: Vec<Option<FlowCheck>> = vec![None, None];
    for _ in 0..count {
        let z0 = haar_special_unitary(2, &mut rng);
        for which in [1u8, 2] {
            let c = fiber_flow_check(x, which, &z0, &ts)?;
            let slot = &mut worst[which as usize - 1];
            let worse = slot
                .as_ref()
                .is_none_or(|w| c.max_error.max(c.periodicity_error) > w.max_error.max(w.periodicity_error));
            if worse {
                *slot = Some(c);
            }
        }
    }
    let mut it = worst.into_iter().map(|c| c.expect("count ≥ 1"));
    Ok([it.next().expect("two"), it.next().expect("two")])
}

/// Largest unitarity defect and determinant error of `ℒ`, and the largest
/// moment-map residual of the cross-section, over the given samples.
pub fn lax_residuals(samples: &[(AlcovePoint, Vec<f64>)], x: &ExactRational) -> Result<(f64, f64)> {
    let mut lax: f64 = 0.0;
    let mut cross: f64 = 0.0;
    for (xi, theta) in samples {
        let l = lax_local(xi, theta, x)?;
        lax = lax.max(unitarity_defect(&l)).max((l.determinant() - real(1.0)).norm());
        cross = cross.max(cross_section(xi, theta, x)?.residual);
    }
    Ok((lax, cross))
}
