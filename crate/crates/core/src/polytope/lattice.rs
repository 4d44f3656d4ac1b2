//! Face lattice from vertex–constraint incidences.
//!
//! A face is identified by the set of constraints active on all of its
//! vertices. Its dimension is read off from that set: in prefix-sum
//! coordinates the active constraints are graph edges on `n` nodes, their
//! rank is `n − (#components)`, so the face has dimension `#components − 1`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use super::{mask_indices, PolytopeModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub vertices: FixedBitSet,
    /// Constraints active on every vertex of the face.
    pub active: u64,
}

impl Face {
    pub fn vertex_indices(&self) -> Vec<usize> {
        self.vertices.ones().collect()
    }

    pub fn active_indices(&self) -> Vec<usize> {
        mask_indices(self.active)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Face", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("vertices", &self.vertex_indices())?;
        st.serialize_field("active", &self.active_indices())?;
        st.end()
    }
}

/// Faces of every dimension `0..=n−2`; `faces[d]` holds the `d`-faces.
#[derive(Debug, Clone, Serialize)]
pub struct FaceLattice {
    pub faces: Vec<Vec<Face>>,
    pub face_vector: Vec<usize>,
}

impl FaceLattice {
    pub fn facets(&self) -> &[Face] {
        self.faces.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Constraint indices that generate facets.
    pub fn facet_constraints(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.facets().iter().flat_map(|f| f.active_indices()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Pairs of vertex indices joined by an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces
            .get(1)
            .map(|es| {
                es.iter()
                    .map(|f| {
                        let v = f.vertex_indices();
                        (v[0], v[1])
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Dimension of the face cut out by the active constraints in `mask`.
pub(crate) fn dim_of_active(model: &PolytopeModel, mask: u64) -> usize {
    let n = model.n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut comps = n;
    for h in &model.inequalities {
        if mask >> h.index & 1 == 0 || h.is_trivial() {
            continue;
        }
        let (a, b, _) = h.prefix_edge();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    comps - 1
}

/// Builds all proper faces. Facets are the tight sets of single constraints
/// of dimension `n−2`; lower faces come from intersecting each `d`-face with
/// every facet and keeping the `(d−1)`-dimensional results.
pub fn face_lattice(model: &PolytopeModel) -> FaceLattice {
    let n = model.n;
    let nv = model.vertices.len();
    let top = n - 2;
    let masks: Vec<u64> = model.vertices.iter().map(|v| v.active).collect();
    let face_of = |set: FixedBitSet| -> Face {
        let active = set.ones().fold(u64::MAX, |m, i| m & masks[i]);
        Face { dim: dim_of_active(model, active), vertices: set, active }
    };

    let mut facets: Vec<Face> = Vec::new();
    let mut seen: HashMap<u64, ()> = HashMap::new();
    for h in model.inequalities.iter().filter(|h| !h.is_trivial()) {
        let mut set = FixedBitSet::with_capacity(nv);
        for (i, m) in masks.iter().enumerate() {
            if m >> h.index & 1 == 1 {
                set.insert(i);
            }
        }
        if set.is_clear() {
            continue;
        }
        let f = face_of(set);
        if f.dim == top && seen.insert(f.active, ()).is_none() {
            facets.push(f);
        }
    }
    sort_faces(&mut facets);

    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
    faces[top] = facets.clone();
    for d in (0..top).rev() {
        let mut level: HashMap<u64, Face> = HashMap::new();
        for f in &faces[d + 1] {
            for g in &facets {
                if f.vertices.is_subset(&g.vertices) {
                    continue;
                }
                let mut inter = f.vertices.clone();
                inter.intersect_with(&g.vertices);
                if inter.is_clear() {
                    continue;
                }
                let cand = face_of(inter);
                if cand.dim == d {
                    level.entry(cand.active).or_insert(cand);
                }
            }
        }
        let mut v: Vec<Face> = level.into_values().collect();
        sort_faces(&mut v);
        faces[d] = v;
    }
    let face_vector = faces.iter().map(Vec::len).collect();
    FaceLattice { faces, face_vector }
}

fn sort_faces(v: &mut [Face]) {
    v.sort_by_key(Face::vertex_indices);
}

/// `Σ_d (−1)^d f_d = 1 − (−1)^{n−1}` for the boundary of an
/// `(n−1)`-polytope.
pub fn euler_characteristic_ok(face_vector: &[usize], n: usize) -> bool {
    let alt: i64 = face_vector.iter().enumerate().map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) }).sum();
    let expected = if (n - 1) % 2 == 0 { 0 } else { 2 };
    alt == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::classify_intervals;
    use crate::rational::ExactRational;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn n4_face_vector() {
        let m = PolytopeModel::compute(4, &r(5, 12)).unwrap();
        let l = face_lattice(&m);
        assert_eq!(l.face_vector, vec![8, 14, 8]);
        let mut sizes: Vec<usize> = l.facets().iter().map(|f| f.vertices.count_ones(..)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 3, 3, 3, 4, 4, 4, 4]);
    }

    #[test]
    fn simplex_lattice_is_boolean() {
        // Type (i): the polytope is an (n−1)-simplex with f_d = C(n, d+1).
        let m = PolytopeModel::compute(5, &r(1, 7)).unwrap();
        let l = face_lattice(&m);
        assert_eq!(l.face_vector, vec![5, 10, 10, 5]);
    }

    #[test]
    fn euler_relation_on_all_small_intervals() {
        for n in 3..=7 {
            for iv in classify_intervals(n, true) {
                let m = PolytopeModel::compute(n, &iv.midpoint()).unwrap();
                let l = face_lattice(&m);
                assert!(euler_characteristic_ok(&l.face_vector, n), "n={n} {:?}", l.face_vector);
            }
        }
    }

    #[test]
    fn dimension_matches_affine_rank_of_vertices() {
        // Oracle: affine rank of the vertex coordinates, by exact elimination.
        let m = PolytopeModel::compute(6, &r(9, 40)).unwrap();
        let l = face_lattice(&m);
        for level in &l.faces {
            for f in level {
                let pts: Vec<_> = f.vertex_indices().iter().map(|&i| m.vertices[i].point.clone()).collect();
                assert_eq!(affine_rank(&pts), f.dim);
            }
        }
    }

    fn affine_rank(pts: &[crate::polytope::AlcovePoint]) -> usize {
        let base = &pts[0];
        let mut rows: Vec<Vec<ExactRational>> =
            pts[1..].iter().map(|p| p.coords.iter().zip(&base.coords).map(|(a, b)| a - b).collect()).collect();
        let cols = base.n();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) {
                rows.swap(rank, p);
                for i in 0..rows.len() {
                    if i != rank && !rows[i][c].is_zero() {
                        let f = &rows[i][c] / &rows[rank][c];
                        for j in 0..cols {
                            let t = &rows[rank][j] * &f;
                            rows[i][j] = &rows[i][j] - &t;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }
}
