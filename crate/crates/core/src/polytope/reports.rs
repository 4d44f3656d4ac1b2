//! Structured checks of known closed-form vertex sets.

use std::fmt;

use serde::Serialize;

use super::lattice::dim_of_active;
use super::{cyclic_orbits, face_lattice, AlcovePoint, PolytopeModel};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self { passed: expected == actual, name: name.into(), expected, actual }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub title: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for i in &self.items {
            let mark = if i.passed { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {}: expected {}, got {}", i.name, i.expected, i.actual)?;
        }
        Ok(())
    }
}

fn incidence(model: &PolytopeModel, index: usize) -> usize {
    model.vertices.iter().filter(|v| v.active >> index & 1 == 1).count()
}

/// The closed-form vertex set for `1/(n−1) < x < 1/(n−2)`: a regular vertex
/// `R` and singular vertices `I_s`, `s = 1..n−3`, with all their rotations.
pub fn simplest_type_ii_vertices(n: usize, x: &ExactRational) -> (AlcovePoint, Vec<AlcovePoint>) {
    let one = ExactRational::one();
    let short = &one - &x.scale(n as i64 - 2);
    let mut r = vec![x.clone(); n];
    r[0] = &x.scale(n as i64 - 1) - &one;
    r[1] = short.clone();
    r[n - 1] = short.clone();
    let is = (1..=n - 3)
        .map(|s| {
            let mut v = vec![x.clone(); n];
            v[0] = ExactRational::zero();
            v[1 + s] = short.clone();
            AlcovePoint::new(v)
        })
        .collect();
    (AlcovePoint::new(r), is)
}

/// Vertex, facet and incidence counts in the interval `(1/(n−1), 1/(n−2))`.
pub fn check_simplest_type_ii(n: usize, x: &ExactRational) -> Result<CheckReport> {
    if n < 4 {
        return Err(Error::Precondition(format!("n = {n} must be at least 4")));
    }
    let lo = ExactRational::new(1, n as i64 - 1);
    let hi = ExactRational::new(1, n as i64 - 2);
    if !(x > &lo && x < &hi) {
        return Err(Error::Precondition(format!("x = {x} is not in ({lo}, {hi})")));
    }
    let model = PolytopeModel::compute(n, x)?;
    let lattice = face_lattice(&model);
    let nv = model.vertices.len();
    let singular = model.vertices.iter().filter(|v| v.point.is_singular()).count();
    let (r, is) = simplest_type_ii_vertices(n, x);

    let mut items = vec![
        CheckItem::new("vertices", n * (n - 2), nv),
        CheckItem::new("facets", 2 * n, lattice.facets().len()),
        CheckItem::new("singular vertices", n * (n - 3), singular),
        CheckItem::new(format!("R = {r}"), true, model.vertex_index(&r).is_some()),
    ];
    for (s, p) in is.iter().enumerate() {
        items.push(CheckItem::new(format!("I_{} = {p}", s + 1), true, model.vertex_index(p).is_some()));
    }
    // Upper constraint 0 is ξ1 ≤ x, lower constraint n is ξ1 + ξ2 ≥ x.
    items.push(CheckItem::new("vertices on ξ1 = x", (n - 3) * (n - 1), incidence(&model, 0)));
    items.push(CheckItem::new("vertices on ξ1+ξ2 = x", 2 * (n - 2), incidence(&model, n)));
    let facet_counts = |singular: bool| -> Vec<usize> {
        let mut c: Vec<usize> = model
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.point.is_singular() == singular)
            .map(|(i, _)| lattice.facets().iter().filter(|f| f.vertices.contains(i)).count())
            .collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    items.push(CheckItem::new(
        "facets per regular vertex",
        format!("{:?}", [n - 1]),
        format!("{:?}", facet_counts(false)),
    ));
    items.push(CheckItem::new("facets per singular vertex", format!("{:?}", [n]), format!("{:?}", facet_counts(true))));
    Ok(CheckReport { title: format!("simplest type II, n = {n}, x = {x}"), items })
}

/// `(0, 0, x, 0, 1−3x, 4x−1, 1−3x, 0, x)` for `n = 9`.
pub fn double_zero_point(x: &ExactRational) -> AlcovePoint {
    let z = ExactRational::zero;
    let one = ExactRational::one();
    let a = &one - &x.scale(3);
    let b = &x.scale(4) - &one;
    AlcovePoint::new(vec![z(), z(), x.clone(), z(), a.clone(), b, a, z(), x.clone()])
}

fn has_consecutive_zeros(p: &AlcovePoint) -> bool {
    let n = p.n() as i64;
    (1..=n).any(|j| p.at(j).is_zero() && p.at(j + 1).is_zero())
}

/// At `n = 9`, `1/4 < x < 1/3`: the double-zero point is a vertex, its class
/// is the only one with two cyclically consecutive zeros, and its active
/// constraints cut out a single point. The active count is reported as is.
pub fn check_double_zero_vertex(x: &ExactRational) -> Result<CheckReport> {
    let n = 9;
    if !(x > &ExactRational::new(1, 4) && x < &ExactRational::new(1, 3)) || *x == ExactRational::new(2, 7) {
        return Err(Error::Precondition(format!("x = {x} is not in (1/4, 1/3) minus 2/7")));
    }
    let model = PolytopeModel::compute(n, x)?;
    let p = double_zero_point(x);
    let classes = cyclic_orbits(&model);
    let dz: Vec<_> = classes.iter().filter(|c| has_consecutive_zeros(&c.representative)).collect();
    let mask = model.active_mask(&p);
    let same = dz.len() == 1 && dz[0].members.iter().any(|&i| model.vertices[i].point == p);
    let items = vec![
        CheckItem::new(format!("{p} is a vertex"), true, model.vertex_index(&p).is_some()),
        CheckItem::new("classes with two consecutive zeros", 1, dz.len()),
        CheckItem::new("that class contains the point", true, same),
        CheckItem::new("dimension of the face cut out by the active set", 0, dim_of_active(&model, mask)),
    ];
    Ok(CheckReport {
        title: format!("double-zero vertex, n = 9, x = {x}, {} of 18 constraints active", mask.count_ones()),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn closed_form_examples() {
        for (n, x, v, s) in [(4, r(5, 12), 8, 4), (6, r(9, 40), 24, 18), (8, r(10, 67), 48, 40)] {
            let rep = check_simplest_type_ii(n, &x).unwrap();
            assert!(rep.passed(), "{rep}");
            assert_eq!(rep.items[0].actual, v.to_string());
            assert_eq!(rep.items[2].actual, s.to_string());
        }
    }

    #[test]
    fn closed_forms_sum_to_one() {
        let (rv, is) = simplest_type_ii_vertices(7, &r(9, 50));
        assert!(rv.in_alcove());
        assert!(is.iter().all(AlcovePoint::in_alcove));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(check_simplest_type_ii(5, &r(1, 2)).is_err());
        assert!(check_simplest_type_ii(3, &r(3, 4)).is_err());
    }

    #[test]
    fn double_zero() {
        let rep = check_double_zero_vertex(&r(3, 10)).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(check_double_zero_vertex(&r(2, 7)).is_err());
    }
}
