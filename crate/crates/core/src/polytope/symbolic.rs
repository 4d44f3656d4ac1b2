//! Vertices as affine forms in `x` over a whole Farey interval.
//!
//! Vertices are enumerated at two interior samples, paired by identical
//! active sets and interpolated coordinate by coordinate. A third sample
//! must reproduce exactly the evaluated forms with the same active sets;
//! otherwise the combinatorics are not constant and nothing is guessed.

use std::collections::HashMap;

use serde::Serialize;

use super::{orbits::canonical_rotation, PolytopeModel};
use crate::error::{Error, Result};
use crate::farey::FareyInterval;
use crate::rational::{interpolate_affine, AffineForm, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicVertex {
    pub coords: Vec<AffineForm>,
    pub active: u64,
}

impl SymbolicVertex {
    pub fn evaluate(&self, x: &ExactRational) -> Vec<ExactRational> {
        self.coords.iter().map(|f| f.evaluate(x)).collect()
    }

    pub fn is_singular(&self) -> bool {
        self.coords.iter().any(|f| f.a.is_zero() && f.b.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicClass {
    /// Rotation smallest at the interval midpoint, ties broken by the
    /// coefficient pairs.
    pub representative: Vec<AffineForm>,
    pub orbit_size: usize,
    pub is_singular: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolicPolytope {
    pub n: usize,
    pub interval: FareyInterval,
    pub vertices: Vec<SymbolicVertex>,
    pub classes: Vec<SymbolicClass>,
}

/// Affine-form vertices valid on the whole open interval.
pub fn symbolic_vertices(n: usize, interval: &FareyInterval) -> Result<SymbolicPolytope> {
    let x1 = interval.sample(1, 4);
    let x2 = interval.sample(3, 4);
    let x3 = interval.sample(1, 2);
    let m1 = PolytopeModel::compute(n, &x1)?;
    let m2 = PolytopeModel::compute(n, &x2)?;
    let unstable = |why: String| {
        Error::StructuralInstability(format!(
            "n = {n}, interval ({}, {}), samples {x1} and {x2}: {why}",
            interval.lower, interval.upper
        ))
    };
    if m1.vertices.len() != m2.vertices.len() {
        return Err(unstable(format!("{} vs {} vertices", m1.vertices.len(), m2.vertices.len())));
    }
    let second: HashMap<u64, usize> = m2.vertices.iter().enumerate().map(|(i, v)| (v.active, i)).collect();
    if second.len() != m2.vertices.len() {
        return Err(unstable("two vertices share an active set".into()));
    }
    let mut vertices = Vec::with_capacity(m1.vertices.len());
    for v in &m1.vertices {
        let j = *second.get(&v.active).ok_or_else(|| unstable(format!("no partner for active set {:#x}", v.active)))?;
        let w = &m2.vertices[j];
        let coords = v
            .point
            .coords
            .iter()
            .zip(&w.point.coords)
            .map(|(a, b)| interpolate_affine(&x1, a, &x2, b))
            .collect::<Result<Vec<_>>>()?;
        vertices.push(SymbolicVertex { coords, active: v.active });
    }

    // Validation at a third sample.
    let m3 = PolytopeModel::compute(n, &x3)?;
    let third: HashMap<u64, &super::Vertex> = m3.vertices.iter().map(|v| (v.active, v)).collect();
    if m3.vertices.len() != vertices.len() {
        return Err(unstable(format!("third sample {x3} has {} vertices", m3.vertices.len())));
    }
    for sv in &vertices {
        let got =
            third.get(&sv.active).ok_or_else(|| unstable(format!("active set {:#x} missing at {x3}", sv.active)))?;
        if got.point.coords != sv.evaluate(&x3) {
            return Err(unstable(format!("interpolant disagrees at {x3}")));
        }
    }

    let mid = interval.midpoint();
    let mut classes: Vec<SymbolicClass> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for sv in &vertices {
        let (s, period) = canonical_rotation(&sv.coords, |a, b| cmp_forms(a, b, &mid));
        let rep: Vec<AffineForm> = (0..n).map(|j| sv.coords[(j + s) % n].clone()).collect();
        if seen.insert(rep.clone()) {
            classes.push(SymbolicClass { is_singular: sv.is_singular(), representative: rep, orbit_size: period });
        }
    }
    classes.sort_by(|a, b| {
        a.representative
            .iter()
            .zip(&b.representative)
            .map(|(p, q)| cmp_forms(p, q, &mid))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(SymbolicPolytope { n, interval: interval.clone(), vertices, classes })
}

fn cmp_forms(a: &AffineForm, b: &AffineForm, x: &ExactRational) -> std::cmp::Ordering {
    a.evaluate(x).cmp(&b.evaluate(x)).then_with(|| a.a.cmp(&b.a)).then_with(|| a.b.cmp(&b.b))
}
