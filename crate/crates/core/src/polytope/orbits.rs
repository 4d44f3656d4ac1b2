//! Orbits of the cyclic shift `σ(ξ)_j = ξ_{j+1}` on the vertex set.

use std::collections::HashMap;

use serde::Serialize;

use super::{mask_indices, AlcovePoint, PolytopeModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    /// Lexicographically smallest rotation.
    pub representative: AlcovePoint,
    pub orbit_size: usize,
    /// Some coordinate vanishes.
    pub is_singular: bool,
    pub active_equalities: Vec<usize>,
    /// Indices into the model's vertex list.
    pub members: Vec<usize>,
}

/// Shift `s` minimising the rotated sequence under `cmp`, and the orbit size
/// (number of distinct rotations).
pub fn canonical_rotation<T, F>(coords: &[T], mut cmp: F) -> (usize, usize)
where
    T: PartialEq,
    F: FnMut(&T, &T) -> std::cmp::Ordering,
{
    let n = coords.len();
    let rot = |s: usize| (0..n).map(move |j| &coords[(j + s) % n]);
    let mut best = 0;
    for s in 1..n {
        let ord =
            rot(s).zip(rot(best)).map(|(a, b)| cmp(a, b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal);
        if ord.is_lt() {
            best = s;
        }
    }
    let period = (1..=n).find(|&p| n % p == 0 && (0..n).all(|j| coords[j] == coords[(j + p) % n])).unwrap_or(n);
    (best, period)
}

/// Partition of the model's vertices into cyclic classes, sorted by
/// representative.
pub fn cyclic_orbits(model: &PolytopeModel) -> Vec<VertexClass> {
    let mut by_rep: HashMap<AlcovePoint, Vec<usize>> = HashMap::new();
    for (i, v) in model.vertices.iter().enumerate() {
        let (s, _) = canonical_rotation(&v.point.coords, |a, b| a.cmp(b));
        by_rep.entry(v.point.rotate(s as i64)).or_default().push(i);
    }
    let mut out: Vec<VertexClass> = by_rep
        .into_iter()
        .map(|(rep, members)| {
            let (_, orbit_size) = canonical_rotation(&rep.coords, |a, b| a.cmp(b));
            VertexClass {
                is_singular: rep.is_singular(),
                active_equalities: mask_indices(model.active_mask(&rep)),
                orbit_size,
                representative: rep,
                members,
            }
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ExactRational;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn n4_classes() {
        let m = PolytopeModel::compute(4, &r(5, 12)).unwrap();
        let cls = cyclic_orbits(&m);
        assert_eq!(cls.len(), 2);
        assert!(cls.iter().all(|c| c.orbit_size == 4 && c.members.len() == 4));
        assert_eq!(cls.iter().filter(|c| c.is_singular).count(), 1);
        assert_eq!(cls[0].representative, AlcovePoint::from_fracs(&[(0, 1), (5, 12), (1, 6), (5, 12)]));
    }

    #[test]
    fn vertex_set_closed_under_shift() {
        let m = PolytopeModel::compute(7, &r(3, 8)).unwrap();
        let pts: std::collections::HashSet<_> = m.vertices.iter().map(|v| v.point.clone()).collect();
        for p in &pts {
            assert!(pts.contains(&p.rotate(1)));
        }
        let total: usize = cyclic_orbits(&m).iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, m.vertices.len());
    }

    #[test]
    fn type_one_interval_is_one_orbit() {
        for (n, x) in [(4, r(1, 5)), (5, r(3, 8)), (7, r(1, 8))] {
            let m = PolytopeModel::compute(n, &x).unwrap();
            let cls = cyclic_orbits(&m);
            assert_eq!(cls.len(), 1);
            assert_eq!(cls[0].orbit_size, n);
            assert!(!cls[0].is_singular);
        }
    }

    #[test]
    fn orbit_size_of_periodic_sequence() {
        let v = [1, 2, 1, 2];
        assert_eq!(canonical_rotation(&v, |a, b| a.cmp(b)), (0, 2));
        let v = [3, 1, 2];
        assert_eq!(canonical_rotation(&v, |a, b| a.cmp(b)), (1, 3));
    }
}
