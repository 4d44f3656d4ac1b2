//! Reference tables shared by the suites, the acceptance test and the CLI.

use std::sync::OnceLock;

use serde::{Deserialize, Deserializer};

use crate::error::{Error, Result};
use crate::farey::{interval_containing, FareyInterval};
use crate::polytope::AlcovePoint;
use crate::rational::{AffineForm, ExactRational};

const RAW: &str = include_str!("../../data/reference.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Reference {
    pub version: u32,
    pub interval_counts: IntervalTable,
    pub polytopes: Vec<PolytopeEntry>,
    pub double_zero_vertex: DoubleZeroEntry,
    pub edge_directions: EdgeEntry,
    pub singular_fibers: FiberTable,
}

#[derive(Debug, Clone, Deserialize)]
pub struct IntervalTable {
    pub source: String,
    pub rows: Vec<IntervalRow>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct IntervalRow {
    pub n: usize,
    pub type_i: usize,
    pub type_ii: usize,
    pub min_classes: usize,
    pub max_classes: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PolytopeEntry {
    pub n: usize,
    pub lower: ExactRational,
    pub upper: ExactRational,
    pub source: String,
    pub face_vector: Vec<usize>,
    pub rows: Vec<VertexRow>,
}

impl PolytopeEntry {
    /// The Farey interval the entry describes; fails if its endpoints are
    /// not consecutive in `F_n`.
    pub fn interval(&self) -> Result<FareyInterval> {
        let mid = (&self.lower + &self.upper) / ExactRational::from_integer(2);
        let iv = interval_containing(&mid, self.n)?;
        if iv.lower != self.lower || iv.upper != self.upper {
            return Err(Error::Precondition(format!(
                "({}, {}) is not a Farey interval for n = {}",
                self.lower, self.upper, self.n
            )));
        }
        Ok(iv)
    }

    pub fn label(&self) -> String {
        format!("({},{})", self.lower, self.upper)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct VertexRow {
    pub label: String,
    #[serde(deserialize_with = "forms")]
    pub forms: Vec<AffineForm>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DoubleZeroEntry {
    pub source: String,
    pub n: usize,
    pub x: ExactRational,
    #[serde(deserialize_with = "forms")]
    pub point: Vec<AffineForm>,
    pub active: usize,
    pub constraints: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct EdgeEntry {
    pub source: String,
    pub n: usize,
    pub xs: Vec<ExactRational>,
    #[serde(deserialize_with = "forms")]
    pub vertex: Vec<AffineForm>,
    pub directions: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FiberTable {
    pub source: String,
    pub cases: Vec<FiberCase>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FiberCase {
    pub n: usize,
    pub x: ExactRational,
    pub sphere_count: usize,
}

/// Affine forms are stored as strings such as `"1-2x"`.
fn forms<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<AffineForm>, D::Error> {
    Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
}

/// Evaluates a row of affine forms at `x`.
pub fn evaluate_row(forms: &[AffineForm], x: &ExactRational) -> AlcovePoint {
    AlcovePoint::new(forms.iter().map(|f| f.evaluate(x)).collect())
}

/// The parsed reference tables.
pub fn reference() -> &'static Reference {
    static CELL: OnceLock<Reference> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(RAW).expect("bundled reference data is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_is_consistent() {
        let r = reference();
        assert_eq!(r.interval_counts.rows.len(), 12);
        assert_eq!(r.polytopes.len(), 9);
        for p in &r.polytopes {
            p.interval().unwrap();
            assert_eq!(p.face_vector.len(), p.n - 1);
            assert!(p.rows.iter().all(|row| row.forms.len() == p.n));
            // Every row sums to 1 identically in x.
            for row in &p.rows {
                let s = row
                    .forms
                    .iter()
                    .fold(AffineForm::default(), |acc, f| AffineForm::new(&acc.a + &f.a, &acc.b + &f.b));
                assert_eq!(s, AffineForm::from_ints(1, 0), "n = {} row {}", p.n, row.label);
            }
        }
        assert_eq!(r.singular_fibers.cases.iter().map(|c| c.sphere_count).sum::<usize>(), 60);
    }
}
