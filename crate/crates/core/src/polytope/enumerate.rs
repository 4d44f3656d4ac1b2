//! Exact vertex enumeration.
//!
//! A vertex is the unique solution of `n − 1` linearly independent active
//! constraints. In prefix-sum coordinates `P_j = ξ_1 + … + ξ_j` (with
//! `P_0 = 0`, `P_n = 1`) every constraint is a difference constraint
//! `P_b − P_a ≶ x − w`, so an independent `(n−1)`-subset is a spanning tree
//! on the nodes `0..n`. The scan walks subsets in index order, joining
//! components one edge at a time and pruning as soon as any constraint
//! between two already-determined nodes is violated. Values are scaled by the
//! denominator of `x`, so all arithmetic is on machine integers.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlcovePoint, ConstraintKind, PolytopeModel, Vertex};
use crate::rational::ExactRational;

#[derive(Debug, Clone, Copy)]
struct Edge {
    a: usize,
    b: usize,
    /// Scaled right-hand side of `P_b − P_a`.
    c: i64,
    upper: bool,
}

impl Edge {
    fn ok(&self, diff: i64) -> bool {
        if self.upper {
            diff <= self.c
        } else {
            diff >= self.c
        }
    }
}

fn edges_of(model: &PolytopeModel) -> (Vec<Edge>, i64) {
    let (p, q) = model.x_pair();
    let edges = model
        .inequalities
        .iter()
        .filter(|h| !h.is_trivial())
        .map(|h| {
            let (a, b, w) = h.prefix_edge();
            Edge { a, b, c: p - w * q, upper: h.kind == ConstraintKind::Upper }
        })
        .collect();
    (edges, q)
}

struct Search<'a> {
    n: usize,
    edges: &'a [Edge],
    found: HashSet<Vec<i64>>,
}

#[derive(Clone)]
struct State {
    comp: Vec<usize>,
    val: Vec<i64>,
}

impl Search<'_> {
    fn run(&mut self, state: &State, next: usize, remaining: usize) {
        if remaining == 0 {
            self.found.insert(state.val.clone());
            return;
        }
        let upto = self.edges.len() + 1 - remaining;
        for e_idx in next..upto.min(self.edges.len()) {
            let e = self.edges[e_idx];
            let (ca, cb) = (state.comp[e.a], state.comp[e.b]);
            if ca == cb {
                continue;
            }
            if let Some(s) = self.join(state, &e, ca, cb) {
                self.run(&s, e_idx + 1, remaining - 1);
            }
        }
    }

    /// Merges the components of `e.a` and `e.b` with `e` tight; `None` if
    /// some constraint inside the merged component is violated.
    fn join(&self, state: &State, e: &Edge, ca: usize, cb: usize) -> Option<State> {
        let (keep, drop) = if ca < cb { (ca, cb) } else { (cb, ca) };
        // P_b − P_a = c fixes the offset between the two representatives.
        let shift =
            if keep == ca { e.c + state.val[e.a] - state.val[e.b] } else { -(e.c + state.val[e.a] - state.val[e.b]) };
        let mut s = state.clone();
        for v in 0..self.n {
            if s.comp[v] == drop {
                s.comp[v] = keep;
                s.val[v] += shift;
            }
        }
        for f in self.edges {
            if s.comp[f.a] == keep && s.comp[f.b] == keep && !f.ok(s.val[f.b] - s.val[f.a]) {
                return None;
            }
        }
        Some(s)
    }
}

/// All vertices of the polytope, deduplicated and sorted by coordinates.
pub fn enumerate_vertices(model: &PolytopeModel) -> Vec<Vertex> {
    let n = model.n;
    let (edges, q) = edges_of(model);
    let mut search = Search { n, edges: &edges, found: HashSet::new() };
    let start = State { comp: (0..n).collect(), val: vec![0; n] };
    search.run(&start, 0, n - 1);
    let mut scaled: Vec<Vec<i64>> = search
        .found
        .into_iter()
        .map(|pv| {
            // ξ_j = P_j − P_{j−1}, ξ_n = q − P_{n−1}.
            let mut xi: Vec<i64> = (1..n).map(|j| pv[j] - pv[j - 1]).collect();
            xi.push(q - pv[n - 1]);
            xi
        })
        .collect();
    scaled.sort();
    scaled
        .into_iter()
        .map(|xi| {
            let point = AlcovePoint::new(xi.iter().map(|&v| ExactRational::new(v, q)).collect());
            let active = model.active_mask(&point);
            Vertex { point, active }
        })
        .collect()
}

/// Reference enumeration: every `(n−1)`-subset of the non-trivial constraint
/// hyperplanes is solved by exact Gaussian elimination in the original
/// coordinates; feasible unique solutions are kept. Exponential in `n`;
/// intended for cross-checking small cases.
pub fn enumerate_vertices_by_subsets(model: &PolytopeModel) -> Vec<AlcovePoint> {
    let n = model.n;
    let rows: Vec<&super::Inequality> = model.inequalities.iter().filter(|h| !h.is_trivial()).collect();
    let x = model.x.as_big().clone();
    let mut found = HashSet::new();
    let mut subset = Vec::with_capacity(n - 1);
    subsets(rows.len(), n - 1, 0, &mut subset, &mut |idx| {
        // Σ ξ = 1 plus the chosen equalities.
        let mut m: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        m.push((0..n).map(|_| BigRational::one()).chain(std::iter::once(BigRational::one())).collect());
        for &i in idx {
            let h = rows[i];
            let mut row: Vec<BigRational> =
                h.coefficients.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
            row.push(x.clone());
            m.push(row);
        }
        if let Some(sol) = solve_square(m) {
            let p = AlcovePoint::new(sol.into_iter().map(ExactRational::from).collect());
            if rows.iter().all(|h| !h.slack(&p, &model.x).is_negative()) {
                found.insert(p);
            }
        }
    });
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort();
    out
}

fn subsets(total: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..total {
        if total - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(total, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Gauss–Jordan on an augmented `n × (n+1)` system; `None` if singular.
fn solve_square(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{classify_intervals, IntervalType};
    use crate::polytope::{build_h_representation, AlcovePoint};

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn n4_vertices() {
        let m = PolytopeModel::compute(4, &r(5, 12)).unwrap();
        assert_eq!(m.vertices.len(), 8);
        let pts: Vec<_> = m.vertices.iter().map(|v| v.point.clone()).collect();
        assert!(pts.contains(&AlcovePoint::from_fracs(&[(1, 4), (1, 6), (5, 12), (1, 6)])));
        assert!(pts.contains(&AlcovePoint::from_fracs(&[(0, 1), (5, 12), (1, 6), (5, 12)])));
    }

    #[test]
    fn vertex_counts_from_face_vectors() {
        assert_eq!(PolytopeModel::compute(5, &r(7, 24)).unwrap().vertices.len(), 15);
        assert_eq!(PolytopeModel::compute(6, &r(7, 30)).unwrap().vertices.len(), 24);
    }

    #[test]
    fn agrees_with_subset_scan_on_every_interval_up_to_7() {
        for n in 3..=7 {
            for iv in classify_intervals(n, false) {
                let m = PolytopeModel::compute(n, &iv.midpoint()).unwrap();
                let fast: Vec<_> = m.vertices.iter().map(|v| v.point.clone()).collect();
                let slow = enumerate_vertices_by_subsets(&m);
                assert_eq!(fast, slow, "n = {n}, interval ({}, {})", iv.lower, iv.upper);
                if iv.interval_type == IntervalType::TypeI {
                    assert_eq!(fast.len(), n);
                }
            }
        }
    }

    #[test]
    fn every_vertex_is_feasible_with_full_rank_active_set() {
        let m = PolytopeModel::compute(7, &r(3, 8)).unwrap();
        for v in &m.vertices {
            assert!(v.point.in_alcove());
            for h in &m.inequalities {
                assert!(!h.slack(&v.point, &m.x).is_negative());
            }
            assert!(v.active.count_ones() as usize >= m.n - 1);
        }
        let h = build_h_representation(7, &r(3, 8)).unwrap();
        assert_eq!(enumerate_vertices(&h), m.vertices);
    }
}
