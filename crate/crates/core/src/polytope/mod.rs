//! The momentum polytope `𝒜_y` for a parameter `x = y/π`.
//!
//! Points live on the hyperplane `Σ ξ_j = 1` (units of π). With
//! `k = ⌊n·x⌋` the polytope is cut out by, for every cyclic start `ℓ`,
//!
//! ```text
//! ξ_ℓ + … + ξ_{ℓ+k−1} ≤ x      (upper constraint ℓ)
//! ξ_ℓ + … + ξ_{ℓ+k}   ≥ x      (lower constraint ℓ)
//! ```
//!
//! Constraint indices follow a fixed convention: index `ℓ−1` is the upper
//! constraint starting at `ℓ`, index `n+ℓ−1` the lower one.

mod edges;
mod enumerate;
mod lattice;
mod orbits;
mod reports;
mod symbolic;

pub use edges::{edge_directions_at, is_lattice_basis, mapped_cone_directions, primitive_direction, EdgeDirection};
pub use enumerate::{enumerate_vertices, enumerate_vertices_by_subsets};
pub use lattice::{euler_characteristic_ok, face_lattice, Face, FaceLattice};
pub use orbits::{canonical_rotation, cyclic_orbits, VertexClass};
pub use reports::{
    check_double_zero_vertex, check_simplest_type_ii, double_zero_point, simplest_type_ii_vertices, CheckItem,
    CheckReport,
};
pub use symbolic::{symbolic_vertices, SymbolicClass, SymbolicPolytope, SymbolicVertex};

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::excluded_multiplier;
use crate::rational::{AffineForm, ExactRational};

/// A point `ξ` of the simplex `Σ ξ_j = 1`, coordinates in units of π.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlcovePoint {
    pub coords: Vec<ExactRational>,
}

impl AlcovePoint {
    pub fn new(coords: Vec<ExactRational>) -> Self {
        Self { coords }
    }

    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        Self::new(v.iter().map(|&(p, q)| ExactRational::new(p, q)).collect())
    }

    /// The barycentre `ξ*_j = 1/n`.
    pub fn barycentre(n: usize) -> Self {
        Self::new(vec![ExactRational::new(1, n as i64); n])
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn sum(&self) -> ExactRational {
        self.coords.iter().sum()
    }

    pub fn on_hyperplane(&self) -> bool {
        self.sum() == ExactRational::one()
    }

    /// `Σ ξ = 1` and every `ξ_j ≥ 0`.
    pub fn in_alcove(&self) -> bool {
        self.on_hyperplane() && self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_singular(&self) -> bool {
        self.coords.iter().any(|c| c.is_zero())
    }

    /// Cyclic coordinate `ξ_j` for any integer `j` (1-based, `n`-periodic).
    pub fn at(&self, j: i64) -> &ExactRational {
        let n = self.n() as i64;
        &self.coords[((j - 1).rem_euclid(n)) as usize]
    }

    /// `σ^s(ξ)_j = ξ_{j+s}`.
    pub fn rotate(&self, s: i64) -> Self {
        let n = self.n() as i64;
        Self::new((1..=n).map(|j| self.at(j + s).clone()).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(ExactRational::to_f64).collect()
    }

    /// Parses `"c1,c2,…"` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s.split(',').map(|t| t.trim().parse::<ExactRational>()).collect::<Result<Vec<_>>>()?;
        if coords.len() < 2 {
            return Err(Error::Parse(format!("point `{s}` needs at least two coordinates")));
        }
        Ok(Self::new(coords))
    }
}

impl fmt::Display for AlcovePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for AlcovePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintKind {
    /// Sum of `k` consecutive coordinates is at most `x`.
    Upper,
    /// Sum of `k+1` consecutive coordinates is at least `x`.
    Lower,
}

/// One of the `2n` half-spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub index: usize,
    pub kind: ConstraintKind,
    /// 1-based cyclic start `ℓ`.
    pub start: usize,
    /// Number of summed coordinates.
    pub length: usize,
    /// Coefficient of each coordinate in the cyclic sum.
    pub coefficients: Vec<i64>,
    /// Right-hand side as a form in `x` (always `x` itself).
    pub bound: AffineForm,
}

impl Inequality {
    /// Empty sums (`length = 0`) and full sums (`length = n`) are constant on
    /// the hyperplane and never bind for admissible `x`.
    pub fn is_trivial(&self) -> bool {
        self.length == 0 || self.length == self.coefficients.len()
    }

    pub fn lhs(&self, p: &AlcovePoint) -> ExactRational {
        self.coefficients.iter().zip(&p.coords).filter(|(c, _)| **c != 0).map(|(c, v)| v.scale(*c)).sum()
    }

    /// Signed slack: `x − lhs` for upper, `lhs − x` for lower. Nonnegative
    /// means satisfied, zero means active.
    pub fn slack(&self, p: &AlcovePoint, x: &ExactRational) -> ExactRational {
        let lhs = self.lhs(p);
        match self.kind {
            ConstraintKind::Upper => x - &lhs,
            ConstraintKind::Lower => lhs - x,
        }
    }

    /// Difference-constraint view over prefix sums `P_j = ξ_1 + … + ξ_j`:
    /// the cyclic sum equals `P_b − P_a + w`.
    pub(crate) fn prefix_edge(&self) -> (usize, usize, i64) {
        let n = self.coefficients.len();
        let a = self.start - 1;
        let end = a + self.length;
        (a, end % n, (end / n) as i64)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.coefficients.len();
        let terms: Vec<String> = (0..self.length).map(|t| format!("ξ{}", (self.start - 1 + t) % n + 1)).collect();
        let lhs = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
        let op = match self.kind {
            ConstraintKind::Upper => "<=",
            ConstraintKind::Lower => ">=",
        };
        write!(f, "{lhs} {op} x")
    }
}

/// A vertex with the bitmask of constraints it makes active.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub point: AlcovePoint,
    pub active: u64,
}

impl Vertex {
    pub fn active_indices(&self) -> Vec<usize> {
        mask_indices(self.active)
    }
}

pub(crate) fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// H-representation plus (once computed) the vertices of `𝒜_y` at a
/// rational parameter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeModel {
    pub n: usize,
    pub x: ExactRational,
    pub k: usize,
    pub inequalities: Vec<Inequality>,
    pub vertices: Vec<Vertex>,
}

impl PolytopeModel {
    /// H-representation followed by vertex enumeration.
    pub fn compute(n: usize, x: &ExactRational) -> Result<Self> {
        let mut m = build_h_representation(n, x)?;
        m.vertices = enumerate_vertices(&m);
        Ok(m)
    }

    /// Bitmask of constraints active at `p`.
    pub fn active_mask(&self, p: &AlcovePoint) -> u64 {
        self.inequalities
            .iter()
            .filter(|h| !h.is_trivial() && h.slack(p, &self.x).is_zero())
            .fold(0u64, |m, h| m | 1 << h.index)
    }

    pub fn vertex_index(&self, p: &AlcovePoint) -> Option<usize> {
        self.vertices.iter().position(|v| &v.point == p)
    }

    /// `x` as a reduced `(p, q)` pair of machine integers.
    pub(crate) fn x_pair(&self) -> (i64, i64) {
        let p = self.x.numer().to_i64().expect("parameter numerator fits in i64");
        let q = self.x.denom().to_i64().expect("parameter denominator fits in i64");
        (p, q)
    }
}

/// The `2n` inequalities for order `n` at parameter `x`.
pub fn build_h_representation(n: usize, x: &ExactRational) -> Result<PolytopeModel> {
    if n < 2 {
        return Err(Error::Precondition(format!("order n = {n} must be at least 2")));
    }
    if n > 62 {
        return Err(Error::Precondition(format!("order n = {n} exceeds the supported 62")));
    }
    if !(x.is_positive() && *x < 1) {
        return Err(Error::Precondition(format!("x = {x} must lie in (0, 1)")));
    }
    if let Some(m) = excluded_multiplier(x, n) {
        return Err(Error::Inadmissible { x: x.to_string(), n, m });
    }
    if x.numer().to_i64().is_none() || x.denom().to_i64().is_none_or(|q| q > i64::MAX / 64 / n as i64) {
        return Err(Error::Precondition(format!("x = {x} has too large a denominator")));
    }
    let k = x.scale(n as i64).floor().to_usize().expect("k fits");
    let mut inequalities = Vec::with_capacity(2 * n);
    for (kind, length, offset) in [(ConstraintKind::Upper, k, 0), (ConstraintKind::Lower, k + 1, n)] {
        for l in 1..=n {
            let mut coefficients = vec![0i64; n];
            for t in 0..length {
                coefficients[(l - 1 + t) % n] += 1;
            }
            inequalities.push(Inequality {
                index: offset + l - 1,
                kind,
                start: l,
                length,
                coefficients,
                bound: AffineForm::from_ints(0, 1),
            });
        }
    }
    Ok(PolytopeModel { n, x: x.clone(), k, inequalities, vertices: Vec::new() })
}

/// Result of an exact membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Inside,
    Boundary { active: Vec<usize> },
    Outside { violated: Vec<usize> },
}

/// Exact classification of `p` against the H-representation.
pub fn contains(p: &AlcovePoint, model: &PolytopeModel) -> Result<Membership> {
    if p.n() != model.n {
        return Err(Error::Precondition(format!("point has {} coordinates, polytope order is {}", p.n(), model.n)));
    }
    if !p.on_hyperplane() {
        return Err(Error::Precondition(format!("coordinates of {p} do not sum to 1")));
    }
    let mut active = Vec::new();
    let mut violated = Vec::new();
    for h in model.inequalities.iter().filter(|h| !h.is_trivial()) {
        let s = h.slack(p, &model.x);
        if s.is_negative() {
            violated.push(h.index);
        } else if s.is_zero() {
            active.push(h.index);
        }
    }
    Ok(if !violated.is_empty() {
        Membership::Outside { violated }
    } else if !active.is_empty() {
        Membership::Boundary { active }
    } else {
        Membership::Inside
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn h_rep_shapes() {
        let m = build_h_representation(4, &r(5, 12)).unwrap();
        assert_eq!(m.k, 1);
        assert_eq!(m.inequalities.len(), 8);
        assert_eq!(m.inequalities[0].to_string(), "ξ1 <= x");
        assert_eq!(m.inequalities[7].to_string(), "ξ4+ξ1 >= x");

        let m = build_h_representation(9, &r(3, 10)).unwrap();
        assert_eq!(m.k, 2);
        assert!(m.inequalities[..9].iter().all(|h| h.length == 2));
        assert!(m.inequalities[9..].iter().all(|h| h.length == 3));

        let m = build_h_representation(3, &r(1, 4)).unwrap();
        assert_eq!(m.k, 0);
        assert!(m.inequalities[..3].iter().all(Inequality::is_trivial));
        assert_eq!(m.inequalities[3].to_string(), "ξ1 >= x");
    }

    #[test]
    fn inadmissible_parameter_is_named() {
        let e = build_h_representation(4, &r(1, 3)).unwrap_err();
        assert_eq!(e, Error::Inadmissible { x: "1/3".into(), n: 4, m: 3 });
    }

    #[test]
    fn membership_examples() {
        let m = build_h_representation(4, &r(5, 12)).unwrap();
        assert_eq!(contains(&AlcovePoint::barycentre(4), &m).unwrap(), Membership::Inside);
        let v = AlcovePoint::from_fracs(&[(0, 1), (5, 12), (1, 6), (5, 12)]);
        match contains(&v, &m).unwrap() {
            Membership::Boundary { active } => assert_eq!(active, vec![1, 3, 4, 7]),
            other => panic!("unexpected {other:?}"),
        }
        let bad = AlcovePoint::from_fracs(&[(1, 2), (1, 2), (0, 1), (0, 1)]);
        assert!(matches!(contains(&bad, &m).unwrap(), Membership::Outside { .. }));
        let off = AlcovePoint::from_fracs(&[(1, 2), (1, 2), (1, 2), (0, 1)]);
        assert!(contains(&off, &m).is_err());
    }

    #[test]
    fn double_zero_point_active_set() {
        // (0, 0, x, 0, 1−3x, 4x−1, 1−3x, 0, x) at x = 3/10. By hand: the
        // 2-sums at ℓ = 1, 4, 7 are 0, 1−3x, 1−3x < x and the 3-sums at
        // ℓ = 3, 5, 7 all equal 1−2x > x; the other twelve are tight.
        let p = AlcovePoint::from_fracs(&[(0, 1), (0, 1), (3, 10), (0, 1), (1, 10), (2, 10), (1, 10), (0, 1), (3, 10)]);
        let m = build_h_representation(9, &r(3, 10)).unwrap();
        match contains(&p, &m).unwrap() {
            Membership::Boundary { active } => {
                assert_eq!(active, vec![1, 2, 4, 5, 7, 8, 9, 10, 12, 14, 16, 17]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rotation_convention() {
        let p = AlcovePoint::from_fracs(&[(1, 10), (2, 10), (3, 10), (4, 10)]);
        assert_eq!(p.rotate(1), AlcovePoint::from_fracs(&[(2, 10), (3, 10), (4, 10), (1, 10)]));
        assert_eq!(p.rotate(-1).rotate(1), p);
        assert_eq!(p.at(5), p.at(1));
    }
}
