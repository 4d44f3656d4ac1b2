//! Edge directions at a vertex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::lattice::dim_of_active;
use super::{AlcovePoint, PolytopeModel};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeDirection {
    pub neighbour: AlcovePoint,
    /// `neighbour − vertex`.
    pub raw: Vec<ExactRational>,
    /// Positive multiple of `raw` with coprime integer entries.
    pub primitive: Vec<i64>,
}

/// Directions of all edges leaving `vertex`. Two vertices span an edge iff
/// their common active constraints cut out a one-dimensional face.
pub fn edge_directions_at(vertex: &AlcovePoint, model: &PolytopeModel) -> Result<Vec<EdgeDirection>> {
    let i = model
        .vertex_index(vertex)
        .ok_or_else(|| Error::NotInPolytope(format!("{vertex} is not a vertex at x = {}", model.x)))?;
    let mask = model.vertices[i].active;
    let mut out = Vec::new();
    for (j, w) in model.vertices.iter().enumerate() {
        if j == i || dim_of_active(model, mask & w.active) != 1 {
            continue;
        }
        let raw: Vec<ExactRational> = w.point.coords.iter().zip(&vertex.coords).map(|(a, b)| a - b).collect();
        let primitive = primitive_direction(&raw);
        out.push(EdgeDirection { neighbour: w.point.clone(), raw, primitive });
    }
    Ok(out)
}

/// Scales a nonzero rational vector by a positive factor to coprime
/// integers.
pub fn primitive_direction(v: &[ExactRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::from(1), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.iter()
        .map(|c| if g.is_zero() { c.clone() } else { c / &g })
        .map(|c| c.to_i64().expect("direction entry fits in i64"))
        .collect()
}

/// For `n = 4`: the linear part of `ξ ↦ (ξ₁, ξ₁+2ξ₂+ξ₃−π, ξ₃−(π−2y))`
/// applied to each direction, then made primitive.
pub fn mapped_cone_directions(dirs: &[EdgeDirection]) -> Vec<Vec<i64>> {
    dirs.iter()
        .map(|d| {
            let r = &d.raw;
            let mapped = vec![r[0].clone(), &(&r[0] + &r[1].scale(2)) + &r[2], r[2].clone()];
            primitive_direction(&mapped)
        })
        .collect()
}

/// Whether three integer vectors form a basis of `ℤ³`.
pub fn is_lattice_basis(v: &[Vec<i64>]) -> bool {
    if v.len() != 3 || v.iter().any(|r| r.len() != 3) {
        return false;
    }
    let det = v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) - v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0])
        + v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
    det.abs() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive_direction(&[r(1, 6), r(-1, 3), r(0, 1)]), vec![1, -2, 0]);
        assert_eq!(primitive_direction(&[r(-2, 5), r(4, 5)]), vec![-1, 2]);
    }

    #[test]
    fn singular_vertex_has_four_edges_and_cone_directions() {
        let x = r(5, 12);
        let m = PolytopeModel::compute(4, &x).unwrap();
        // (0, x, 1−2x, x)
        let v = AlcovePoint::new(vec![r(0, 1), x.clone(), &r(1, 1) - &x.scale(2), x.clone()]);
        let dirs = edge_directions_at(&v, &m).unwrap();
        assert_eq!(dirs.len(), 4);
        let mut mapped = mapped_cone_directions(&dirs);
        mapped.sort();
        assert_eq!(mapped, vec![vec![1, -1, 0], vec![1, 0, -1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn regular_vertex_edges_form_lattice_basis() {
        let m = PolytopeModel::compute(4, &r(5, 12)).unwrap();
        for v in m.vertices.iter().filter(|v| !v.point.is_singular()) {
            let dirs = edge_directions_at(&v.point, &m).unwrap();
            assert_eq!(dirs.len(), 3);
            let chart: Vec<Vec<i64>> = dirs.iter().map(|d| primitive_direction(&d.raw[..3])).collect();
            assert!(is_lattice_basis(&chart));
        }
    }

    #[test]
    fn simplex_vertices_have_n_minus_one_edges() {
        let m = PolytopeModel::compute(6, &r(1, 7)).unwrap();
        for v in &m.vertices {
            assert_eq!(edge_directions_at(&v.point, &m).unwrap().len(), 5);
        }
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let m = PolytopeModel::compute(4, &r(5, 12)).unwrap();
        assert!(edge_directions_at(&AlcovePoint::barycentre(4), &m).is_err());
    }
}
