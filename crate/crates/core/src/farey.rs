//! Farey sequences, excluded parameter values and the type (i) / type (ii)
//! classification of the open intervals between them.
//!
//! The parameter `x = y/π` is excluded for order `n` exactly when `m·x ∈ ℤ`
//! for some `1 ≤ m ≤ n`, i.e. when `x ∈ F_n`. Between two consecutive
//! excluded values the polytope has constant combinatorics.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntervalType {
    /// Adjacent to some `κ/n` with `gcd(κ, n) = 1`; the polytope is a simplex.
    TypeI,
    TypeII,
}

impl std::fmt::Display for IntervalType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IntervalType::TypeI => "I",
            IntervalType::TypeII => "II",
        })
    }
}

/// Open interval between two consecutive elements of `F_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyInterval {
    pub lower: ExactRational,
    pub upper: ExactRational,
    pub order_n: usize,
    pub interval_type: IntervalType,
    /// `⌊n·x⌋` for any `x` in the open interval.
    pub k_index: usize,
}

impl FareyInterval {
    pub fn midpoint(&self) -> ExactRational {
        (&self.lower + &self.upper) / ExactRational::from_integer(2)
    }

    /// `lower + (upper - lower)·i/d` for `0 < i < d`.
    pub fn sample(&self, i: i64, d: i64) -> ExactRational {
        debug_assert!(0 < i && i < d);
        &self.lower + &(&(&self.upper - &self.lower) * &ExactRational::new(i, d))
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lower < x && x < &self.upper
    }
}

/// Reduced fractions in `[0, 1]` with denominator at most `n`, increasing.
pub fn farey_sequence(n: usize) -> Vec<ExactRational> {
    farey_pairs(n).into_iter().map(|(p, q)| ExactRational::new(p as i64, q as i64)).collect()
}

/// `F_n` as `(numerator, denominator)` pairs, via the next-term recurrence.
pub fn farey_pairs(n: usize) -> Vec<(u64, u64)> {
    assert!(n >= 1, "Farey order must be positive");
    let n = n as u64;
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    let mut out = vec![(a, b)];
    while c <= n {
        let k = (n + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = nc;
        d = nd;
        out.push((a, b));
    }
    out
}

/// The neighbours `a/b < κ/n < c/d` of `κ/n` in `F_n`, from
/// `bκ − an = 1` and `nc − κd = 1` with `1 ≤ b, d ≤ n − 1`.
pub fn farey_neighbours(kappa: usize, n: usize) -> Result<(ExactRational, ExactRational)> {
    if n < 2 || kappa < 1 || kappa >= n {
        return Err(Error::Precondition(format!("need 1 ≤ κ ≤ n-1, got κ = {kappa}, n = {n}")));
    }
    if kappa.gcd(&n) != 1 {
        return Err(Error::Precondition(format!("gcd(κ, n) = gcd({kappa}, {n}) ≠ 1")));
    }
    let (k, m) = (kappa as i64, n as i64);
    let inv = mod_inverse(k, m);
    // b·κ ≡ 1 (mod n)
    let b = inv;
    let a = (b * k - 1) / m;
    // κ·d ≡ −1 (mod n)
    let d = m - inv;
    let c = (1 + k * d) / m;
    Ok((ExactRational::new(a, b), ExactRational::new(c, d)))
}

fn mod_inverse(k: i64, m: i64) -> i64 {
    let e = k.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Whether `x ∈ (0, 1)` avoids every excluded value of order `n`.
pub fn is_admissible(x: &ExactRational, n: usize) -> bool {
    if !(x.is_positive() && *x < 1) {
        return false;
    }
    excluded_multiplier(x, n).is_none()
}

/// Smallest `m ≤ n` with `m·x ∈ ℤ`, if any.
pub fn excluded_multiplier(x: &ExactRational, n: usize) -> Option<usize> {
    let q = x.denom();
    if *q <= num_bigint::BigInt::from(n) {
        Some(num_traits::ToPrimitive::to_usize(q).expect("small denominator"))
    } else {
        None
    }
}

/// Consecutive Farey intervals of `(0, 1)`, or of `(0, 1/2)` when
/// `restrict_to_half` is set, tagged with their type.
pub fn classify_intervals(n: usize, restrict_to_half: bool) -> Vec<FareyInterval> {
    let pairs = farey_pairs(n);
    let n64 = n as u64;
    let mut out = Vec::new();
    for w in pairs.windows(2) {
        let ((p, q), (r, s)) = (w[0], w[1]);
        if restrict_to_half && 2 * r > s {
            break;
        }
        // A reduced fraction with denominator exactly n is some κ/n with gcd 1.
        let adjacent = (q == n64 && p > 0) || (s == n64 && r < s);
        let lower = ExactRational::new(p as i64, q as i64);
        let upper = ExactRational::new(r as i64, s as i64);
        let mid = (&lower + &upper) / ExactRational::from_integer(2);
        let k_index = num_traits::ToPrimitive::to_usize(&mid.scale(n as i64).floor()).expect("k index fits");
        out.push(FareyInterval {
            lower,
            upper,
            order_n: n,
            interval_type: if adjacent { IntervalType::TypeI } else { IntervalType::TypeII },
            k_index,
        });
    }
    out
}

/// The interval of `F_n` containing `x`, if `x` is admissible.
pub fn interval_containing(x: &ExactRational, n: usize) -> Result<FareyInterval> {
    if let Some(m) = excluded_multiplier(x, n) {
        return Err(Error::Inadmissible { x: x.to_string(), n, m });
    }
    classify_intervals(n, false)
        .into_iter()
        .find(|iv| iv.contains(x))
        .ok_or_else(|| Error::Precondition(format!("x = {x} is not in (0, 1)")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalCounts {
    pub n: usize,
    pub type_i: usize,
    pub type_ii: usize,
}

/// Per-`n` counts of type (i) and type (ii) intervals inside `(0, 1/2)`.
pub fn interval_counts_table(n_min: usize, n_max: usize) -> Vec<IntervalCounts> {
    (n_min..=n_max)
        .map(|n| {
            let ivs = classify_intervals(n, true);
            let type_i = ivs.iter().filter(|iv| iv.interval_type == IntervalType::TypeI).count();
            IntervalCounts { n, type_i, type_ii: ivs.len() - type_i }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn totient(m: u64) -> u64 {
        (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
    }

    #[test]
    fn small_sequences() {
        assert_eq!(farey_sequence(1), vec![r(0, 1), r(1, 1)]);
        assert_eq!(farey_sequence(4), vec![r(0, 1), r(1, 4), r(1, 3), r(1, 2), r(2, 3), r(3, 4), r(1, 1)]);
        assert_eq!(farey_sequence(5).len(), 11);
    }

    #[test]
    fn sequence_matches_brute_force() {
        for n in 1..=12u64 {
            let mut all: Vec<ExactRational> = (1..=n)
                .flat_map(|q| (0..=q).filter(move |p| p.gcd(&q) == 1).map(move |p| r(p as i64, q as i64)))
                .collect();
            all.sort();
            all.dedup();
            assert_eq!(farey_sequence(n as usize), all, "n = {n}");
        }
    }

    #[test]
    fn neighbour_examples() {
        assert_eq!(farey_neighbours(1, 4).unwrap(), (r(0, 1), r(1, 3)));
        assert_eq!(farey_neighbours(2, 5).unwrap(), (r(1, 3), r(1, 2)));
        assert_eq!(farey_neighbours(1, 2).unwrap(), (r(0, 1), r(1, 1)));
        assert!(farey_neighbours(2, 4).is_err());
    }

    #[test]
    fn neighbours_are_adjacent_and_satisfy_mediant_identities() {
        for n in 2..=30usize {
            let seq = farey_pairs(n);
            for kappa in (1..n).filter(|k| k.gcd(&n) == 1) {
                let (lo, hi) = farey_neighbours(kappa, n).unwrap();
                let pos = seq.iter().position(|&(p, q)| p == kappa as u64 && q == n as u64).unwrap();
                let (a, b) = seq[pos - 1];
                let (c, d) = seq[pos + 1];
                assert_eq!(lo, r(a as i64, b as i64));
                assert_eq!(hi, r(c as i64, d as i64));
                // κ = a + c and n = b + d
                assert_eq!(a + c, kappa as u64);
                assert_eq!(b + d, n as u64);
            }
        }
    }

    #[test]
    fn consecutive_elements_are_unimodular() {
        for n in 1..=30usize {
            let seq = farey_pairs(n);
            let expected_len = 1 + (1..=n as u64).map(totient).sum::<u64>();
            assert_eq!(seq.len() as u64, expected_len);
            for w in seq.windows(2) {
                let ((p, q), (r_, s)) = (w[0], w[1]);
                assert_eq!(r_ * q - p * s, 1);
                assert!(q + s > n as u64);
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&r(5, 12), 4));
        assert!(!is_admissible(&r(1, 3), 4));
        assert!(!is_admissible(&r(2, 7), 9));
    }

    #[test]
    fn classification_examples() {
        let n4 = classify_intervals(4, true);
        let tags: Vec<_> = n4.iter().map(|iv| (iv.lower.clone(), iv.upper.clone(), iv.interval_type)).collect();
        assert_eq!(
            tags,
            vec![
                (r(0, 1), r(1, 4), IntervalType::TypeI),
                (r(1, 4), r(1, 3), IntervalType::TypeI),
                (r(1, 3), r(1, 2), IntervalType::TypeII),
            ]
        );
        let n6 = interval_counts_table(6, 6)[0];
        assert_eq!((n6.type_i, n6.type_ii), (2, 4));
        assert!(classify_intervals(3, true).iter().all(|iv| iv.interval_type == IntervalType::TypeI));
    }

    #[test]
    fn full_range_type_i_count_is_twice_totient() {
        for n in 3..=30usize {
            let c = classify_intervals(n, false).iter().filter(|iv| iv.interval_type == IntervalType::TypeI).count();
            assert_eq!(c as u64, 2 * totient(n as u64), "n = {n}");
        }
    }

    #[test]
    fn k_index_and_contiguity() {
        for n in 3..=15usize {
            let ivs = classify_intervals(n, false);
            assert_eq!(ivs.first().unwrap().lower, r(0, 1));
            assert_eq!(ivs.last().unwrap().upper, r(1, 1));
            for w in ivs.windows(2) {
                assert_eq!(w[0].upper, w[1].lower);
            }
            for iv in &ivs {
                let lo = iv.lower.scale(n as i64).floor();
                let hi_excl = iv.sample(99, 100).scale(n as i64).floor();
                assert_eq!(lo, hi_excl);
                assert_eq!(lo, num_bigint::BigInt::from(iv.k_index));
            }
        }
    }

    proptest! {
        #[test]
        fn no_reduced_fraction_strictly_between_neighbours(n in 2usize..25) {
            let seq = farey_pairs(n);
            for w in seq.windows(2) {
                let lo = r(w[0].0 as i64, w[0].1 as i64);
                let hi = r(w[1].0 as i64, w[1].1 as i64);
                for q in 1..=n as i64 {
                    for p in 0..=q {
                        let v = r(p, q);
                        prop_assert!(!(lo < v && v < hi));
                    }
                }
            }
        }

        #[test]
        fn admissible_iff_not_in_sequence(p in 1i64..200, q in 2i64..200, n in 1usize..20) {
            prop_assume!(p < q);
            let x = r(p, q);
            let in_seq = farey_sequence(n).contains(&x);
            prop_assert_eq!(is_admissible(&x, n), !in_seq);
        }
    }
}
