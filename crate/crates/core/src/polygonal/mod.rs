//! Words of polygonal numbers and the representability of differences.
//!
//! For `s ≥ 1` the word `w_s = f(g_s^ω(0))`, with `g_s: 0 ↦ 01, 1 ↦ 12^s,
//! 2 ↦ 2` and `f: 0 ↦ ε, 1 ↦ 1, 2 ↦ 0`, is the characteristic word of the
//! numbers `P_n = n(sn − s + 2)/2` (`s = 1` triangular numbers, `s = 2`
//! squares, `s = 3` pentagonal numbers, …).  Its 1-boundary set at `k ≥ 1`
//! always contains `(0,0)`, `(0,1)`, `(1,0)`, and contains `(1,1)` exactly
//! when `k = P_m − P_n` for some `m > n ≥ 0` (`k` is *representable*).
//! The two sets are named `a` (without `(1,1)`) and `b` (with it).

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::boundary::{boundary_sets, BoundarySet, PrefixPolicy, DEFAULT_MAX_SPARSE};
use crate::error::{Error, Result};
use crate::words::{detect_eventual_period, InfiniteWord, Letter, SetGenerator};

/// The family member `w_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonalFamily {
    s: u64,
}

impl PolygonalFamily {
    /// The member with parameter `s ≥ 1`.
    pub fn new(s: u64) -> Result<PolygonalFamily> {
        if s == 0 {
            return Err(Error::Invalid("polygonal parameter must be at least 1".into()));
        }
        Ok(PolygonalFamily { s })
    }

    /// The parameter `s`.
    pub fn s(&self) -> u64 {
        self.s
    }

    /// `P_n`, or `None` on overflow.
    pub fn number(&self, n: u64) -> Option<u64> {
        crate::words::polygonal_number(self.s, n)
    }

    /// `w_s` as a morphic word.
    pub fn morphic_word(&self) -> Result<InfiniteWord> {
        InfiniteWord::polygonal(self.s as usize)
    }

    /// `w_s` as the characteristic word of `{P_n}`.
    pub fn characteristic_word(&self) -> InfiniteWord {
        InfiniteWord::characteristic(&format!("polygonal-set:{}", self.s), SetGenerator::Polygonal(self.s))
    }

    /// A witness `(m, n)` with `m > n ≥ 0` and `P_m − P_n = k`, the one
    /// with the smallest `m − n`.
    pub fn representation(&self, k: u64) -> Option<(u64, u64)> {
        representation(self.s, k)
    }

    /// The 1-boundary word `∂[k]` for `k` in `range` through
    /// representability: `true` for `b`, `false` for `a`.
    pub fn boundary_letters(&self, range: RangeInclusive<u64>) -> Vec<bool> {
        range.map(|k| k == 0 || self.representation(k).is_some()).collect()
    }

    /// The 1-boundary sets for `k` in `range` from the window oracle on the
    /// characteristic word.
    pub fn boundary_sets(&self, range: RangeInclusive<usize>) -> Result<Vec<BoundarySet>> {
        let start = (8 * (*range.end() as u64 + 8)).max(1 << 12);
        let policy = PrefixPolicy::Doubling { start: start as usize, max: DEFAULT_MAX_SPARSE as usize };
        Ok(boundary_sets(&self.characteristic_word(), 1, range, policy)?.sets)
    }

    /// The smallest eventual period `≤ max_period` of `∂[1..=scan_len]`, if
    /// the scanned prefix shows one.
    pub fn boundary_period(&self, scan_len: u64, max_period: usize) -> Option<(usize, usize)> {
        let word: Vec<Letter> = self.boundary_letters(1..=scan_len).into_iter().map(Letter::from).collect();
        detect_eventual_period(&word, max_period)
    }
}

/// `(m, n)` with `m > n ≥ 0` and `P_m − P_n = k` for the parameter `s`,
/// minimizing `d = m − n`.
///
/// With `d = m − n` the difference is `d(s(2n + d − 1) + 2)/2`, so `d`
/// divides `2k` and `2k/d − 2 − s(d − 1)` must be a nonnegative multiple
/// of `2s`; `d` ranges while `P_d ≤ k`.
pub fn representation(s: u64, k: u64) -> Option<(u64, u64)> {
    if k == 0 || s == 0 {
        return None;
    }
    let (s, k) = (s as u128, k as u128);
    let mut d = 1u128;
    // P_d = d(s(d − 1) + 2)/2 is the smallest difference with m − n = d
    while d * (s * (d - 1) + 2) <= 2 * k {
        if (2 * k) % d == 0 {
            let rest = 2 * k / d;
            let base = 2 + s * (d - 1);
            if rest >= base && (rest - base).is_multiple_of(2 * s) {
                let n = (rest - base) / (2 * s);
                return Some(((n + d) as u64, n as u64));
            }
        }
        d += 1;
    }
    None
}

/// Whether `k` is a difference of two polygonal numbers.
pub fn representable(s: u64, k: u64) -> bool {
    representation(s, k).is_some()
}

/// One case of a threshold claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCase {
    /// Exponent of `s` (odd `s`) or `t = s/2` (even `s`).
    pub i: u32,
    /// Exponent of the prime.
    pub j: u32,
    /// The tested number.
    pub value: u64,
    /// Whether the threshold inequality holds.
    pub predicted: bool,
    /// Whether the number is representable.
    pub representable: bool,
}

/// Results of [`claim_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    /// The polygonal parameter.
    pub s: u64,
    /// The prime, `≡ 1 (mod s)`.
    pub p: u64,
    /// Every tested `(i, j)`.
    pub cases: Vec<ClaimCase>,
}

impl ClaimReport {
    /// Whether representability matched the threshold in every case.
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.predicted == c.representable)
    }

    /// The disagreeing cases.
    pub fn failures(&self) -> Vec<&ClaimCase> {
        self.cases.iter().filter(|c| c.predicted != c.representable).collect()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Checks the representability thresholds for `i ≤ i_max`, `j ≤ j_max`:
///
/// * odd `s`: `s^i p^j` is representable iff `p^j ≥ s(s^i − 1)/2 + 1`;
/// * even `s = 2t`: with `q = 1` for odd `t` and `q = t + 1` otherwise,
///   `t^i q p^j` is representable iff `p^j q ≥ t(t^i − 1) + 1`.
///
/// Cases whose value overflows `u64` are skipped.
// the thresholds are kept in the `≥ bound + 1` form in which they are stated
#[allow(clippy::int_plus_one)]
pub fn claim_check(s: u64, p: u64, i_max: u32, j_max: u32) -> Result<ClaimReport> {
    if s < 3 {
        return Err(Error::Invalid("the threshold claims need s ≥ 3".into()));
    }
    if !is_prime(p) || p % s != 1 {
        return Err(Error::Invalid(format!("{p} is not a prime congruent to 1 mod {s}")));
    }
    let mut cases = Vec::new();
    for i in 0..=i_max {
        for j in 0..=j_max {
            let pj = p.checked_pow(j);
            let (value, predicted) = if s % 2 == 1 {
                let si = s.checked_pow(i);
                let value = si.zip(pj).and_then(|(a, b)| a.checked_mul(b));
                let predicted = si.zip(pj).map(|(si, pj)| pj as u128 > (s as u128 * (si as u128 - 1)) / 2);
                (value, predicted)
            } else {
                let t = s / 2;
                let q = if t % 2 == 1 { 1 } else { t + 1 };
                let ti = t.checked_pow(i);
                let value = ti.zip(pj).and_then(|(a, b)| a.checked_mul(b)?.checked_mul(q));
                let predicted = ti.zip(pj).map(|(ti, pj)| pj as u128 * q as u128 > t as u128 * (ti as u128 - 1));
                (value, predicted)
            };
            if let (Some(value), Some(predicted)) = (value, predicted) {
                cases.push(ClaimCase { i, j, value, predicted, representable: representable(s, value) });
            }
        }
    }
    Ok(ClaimReport { s, p, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all pairs `m > n`.
    fn brute(s: u64, k: u64) -> bool {
        let p = |n: u64| s * n * n.saturating_sub(1) / 2 + n;
        (1..=k + 1).any(|m| (0..m).any(|n| p(m) - p(n) == k))
    }

    #[test]
    fn representation_matches_brute_force() {
        for s in 1..=6 {
            for k in 1..=300 {
                assert_eq!(representable(s, k), brute(s, k), "s={s} k={k}");
            }
        }
        assert_eq!(representation(3, 21), Some((4, 1)));
        assert!(!representable(3, 3));
        assert_eq!(representation(7, 1), Some((1, 0)));
    }

    #[test]
    fn morphic_and_characteristic_words_agree() {
        for s in 1..=6 {
            let fam = PolygonalFamily::new(s).unwrap();
            let a = fam.morphic_word().unwrap().prefix(10_000).unwrap();
            let b = fam.characteristic_word().prefix(10_000).unwrap();
            assert_eq!(a, b, "s = {s}");
        }
    }

    #[test]
    fn oracle_sets_follow_representability() {
        let fam = PolygonalFamily::new(3).unwrap();
        let sets = fam.boundary_sets(1..=400).unwrap();
        for (k, (set, b)) in sets.iter().zip(fam.boundary_letters(1..=400)).enumerate() {
            assert_eq!(set.contains(&[1], &[1]), b, "k = {}", k + 1);
            assert_eq!(set.len(), 3 + usize::from(b));
        }
    }

    #[test]
    fn small_members_are_periodic() {
        assert_eq!(PolygonalFamily::new(1).unwrap().boundary_period(2000, 10), Some((0, 1)));
        assert_eq!(PolygonalFamily::new(2).unwrap().boundary_period(2000, 10).map(|p| p.1), Some(4));
        assert_eq!(PolygonalFamily::new(3).unwrap().boundary_period(10_000, 500), None);
    }

    #[test]
    fn threshold_claims() {
        assert!(claim_check(3, 7, 4, 3).unwrap().passed());
        // the even-s threshold fails only at i = j = 0: 3 = t⁰·q·p⁰ meets
        // the bound but is not a difference of hexagonal numbers
        let even = claim_check(4, 5, 3, 2).unwrap();
        let failures: Vec<(u32, u32, u64)> = even.failures().iter().map(|c| (c.i, c.j, c.value)).collect();
        assert_eq!(failures, vec![(0, 0, 3)]);
        assert!(claim_check(4, 5, 6, 4)
            .unwrap()
            .cases
            .iter()
            .filter(|c| c.i > 0)
            .all(|c| c.predicted == c.representable));
        assert!(claim_check(3, 5, 1, 1).is_err());
        assert!(claim_check(2, 3, 1, 1).is_err());
    }
}
