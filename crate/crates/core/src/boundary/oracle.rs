//! Sliding-window computation of boundary sets over word prefixes.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::set::{BoundaryAlphabet, BoundarySet};
use crate::error::{Error, Result};
use crate::words::{InfiniteWord, Letter};

/// How much of a word the oracle scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrefixPolicy {
    /// Exactly this prefix length.
    Fixed(usize),
    /// Start at `start` and double until the answer is unchanged between
    /// consecutive lengths, never exceeding `max`.
    Doubling {
        /// First prefix length.
        start: usize,
        /// Largest prefix length.
        max: usize,
    },
}

impl PrefixPolicy {
    /// Doubling from a start adapted to the largest index requested.
    pub fn doubling_for(max_index: usize, max: usize) -> PrefixPolicy {
        PrefixPolicy::Doubling { start: (8 * (max_index + 8)).max(1024), max }
    }
}

/// Default cap on the prefix length for dense words.
pub const DEFAULT_MAX_PREFIX: usize = 1 << 22;

/// Default cap on the scanned length for sparse characteristic words.
pub const DEFAULT_MAX_SPARSE: u64 = 1 << 34;

/// Boundary sets over an index range, with the prefix evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundarySets {
    /// First index of `sets`.
    pub start: usize,
    /// `sets[i]` is the boundary set at index `start + i`.
    pub sets: Vec<BoundarySet>,
    /// Prefix length scanned for the final answer.
    pub prefix_len: u64,
    /// Whether doubling the prefix left the answer unchanged.
    pub stabilized: bool,
}

/// Per-letter occurrence data for windows of one length.
struct Windows {
    factors: Vec<Vec<Letter>>,
    /// Occurrence bitset of each factor, indexed by start position.
    bits: Vec<Vec<u64>>,
}

impl Windows {
    fn new(prefix: &[Letter], len: usize) -> Windows {
        let count = (prefix.len() + 1).saturating_sub(len);
        let mut index: HashMap<&[Letter], u32> = HashMap::new();
        let mut factors = Vec::new();
        let mut ids = Vec::with_capacity(count);
        for i in 0..count {
            let w = &prefix[i..i + len];
            let id = *index.entry(w).or_insert_with(|| {
                factors.push(w.to_vec());
                (factors.len() - 1) as u32
            });
            ids.push(id);
        }
        let mut bits = vec![vec![0u64; count.div_ceil(64)]; factors.len()];
        for (i, &id) in ids.iter().enumerate() {
            bits[id as usize][i / 64] |= 1 << (i % 64);
        }
        Windows { factors, bits }
    }

    /// Bit word `k` of the occurrences of factor `id` shifted down by `shift`
    /// (bit `i` set iff the factor occurs at `i + shift`).
    fn shifted_word(&self, id: usize, k: usize, shift: usize) -> u64 {
        let bits = &self.bits[id];
        let (q, r) = (k + shift / 64, shift % 64);
        let low = bits.get(q).map_or(0, |&w| w >> r);
        let high = if r == 0 { 0 } else { bits.get(q + 1).map_or(0, |&w| w << (64 - r)) };
        low | high
    }

    /// Whether factor `u` of `self` occurs at some `i ≤ last` with factor `v`
    /// of `right` occurring at `i + n`.
    fn meets(&self, u: usize, right: &Windows, v: usize, n: usize, last: usize) -> bool {
        let full = (last + 1) / 64;
        let left = &self.bits[u];
        (0..full).any(|k| left[k] & right.shifted_word(v, k, n) != 0) || {
            let tail = (last + 1) % 64;
            tail != 0 && left[full] & right.shifted_word(v, full, n) & ((1u64 << tail) - 1) != 0
        }
    }
}

/// The (left, right)-boundary set at `n` of a finite prefix: pairs
/// `(x[i..i+left], x[i+n..i+n+right])` over all windows of length `n+right`
/// lying inside the prefix (with `left ≤ n + right`).
fn sets_of_prefix(prefix: &[Letter], left: usize, right: usize, ns: RangeInclusive<usize>) -> Vec<BoundarySet> {
    let lw = Windows::new(prefix, left);
    let rw = Windows::new(prefix, right);
    let ns: Vec<usize> = ns.collect();
    ns.par_iter()
        .map(|&n| {
            // window i needs i + n + right ≤ len and i + left ≤ len
            let last = match (prefix.len() + 1).checked_sub(n + right.max(left.saturating_sub(n))) {
                Some(count) if count > 0 => count - 1,
                _ => return BoundarySet::new(left, right, Vec::new()),
            };
            let mut pairs = Vec::new();
            for u in 0..lw.factors.len() {
                for v in 0..rw.factors.len() {
                    let found = lw.meets(u, &rw, v, n, last);
                    if found {
                        pairs.push((lw.factors[u].clone(), rw.factors[v].clone()));
                    }
                }
            }
            BoundarySet::new(left, right, pairs)
        })
        .collect()
}

/// 1-boundary sets of a binary characteristic word given by its sorted
/// 1-positions below `len` (windows fully inside `[0, len)`).
fn sparse_sets(ones: &[u64], len: u64, ns: RangeInclusive<usize>) -> Vec<BoundarySet> {
    let max_n = *ns.end() as u64;
    let mut both = vec![0u64; max_n as usize + 1];
    for (k, &a) in ones.iter().enumerate() {
        for &b in &ones[k + 1..] {
            if b - a > max_n {
                break;
            }
            if b < len {
                both[(b - a) as usize] += 1;
            }
        }
    }
    let count_below = |x: u64| ones.partition_point(|&p| p < x) as u64;
    ns.map(|n| {
        let n64 = n as u64;
        if n64 >= len {
            return BoundarySet::new(1, 1, Vec::new());
        }
        let windows = len - n64;
        let c11 = if n == 0 { count_below(len) } else { both[n] };
        let ones_left = count_below(windows);
        let ones_right = count_below(len) - count_below(n64);
        let c10 = ones_left - c11;
        let c01 = ones_right - c11;
        let c00 = windows - c11 - c10 - c01;
        let mut pairs = Vec::new();
        for (count, u, v) in [(c00, 0, 0), (c01, 0, 1), (c10, 1, 0), (c11, 1, 1)] {
            if count > 0 {
                pairs.push((vec![u], vec![v]));
            }
        }
        BoundarySet::new(1, 1, pairs)
    })
    .collect()
}

/// (left, right)-boundary sets of `w` for indices in `ns`.
pub fn boundary_sets_kl(
    w: &InfiniteWord,
    left: usize,
    right: usize,
    ns: RangeInclusive<usize>,
    policy: PrefixPolicy,
) -> Result<BoundarySets> {
    if left == 0 || right == 0 {
        return Err(Error::Invalid("boundary lengths must be positive".into()));
    }
    if ns.is_empty() {
        return Err(Error::Invalid("empty index range".into()));
    }
    let start = *ns.start();
    let sparse = left == 1 && right == 1 && w.characteristic_positions(0).is_some();
    let compute = |len: u64| -> Result<Vec<BoundarySet>> {
        if sparse {
            let ones = w.characteristic_positions(len).expect("characteristic word")?;
            Ok(sparse_sets(&ones, len, ns.clone()))
        } else {
            w.with_prefix(len as usize, |p| sets_of_prefix(p, left, right, ns.clone()))
        }
    };
    let (first, max) = match policy {
        PrefixPolicy::Fixed(len) => {
            let sets = compute(len as u64)?;
            return Ok(BoundarySets { start, sets, prefix_len: len as u64, stabilized: false });
        }
        PrefixPolicy::Doubling { start, max } => {
            let max = if sparse { DEFAULT_MAX_SPARSE.max(max as u64) } else { max as u64 };
            (start as u64, max)
        }
    };
    let mut len = first.min(max);
    let mut sets = compute(len)?;
    while len < max {
        let next_len = (2 * len).min(max);
        let next = compute(next_len)?;
        let same = next == sets;
        sets = next;
        len = next_len;
        if same {
            return Ok(BoundarySets { start, sets, prefix_len: len, stabilized: true });
        }
    }
    Ok(BoundarySets { start, sets, prefix_len: len, stabilized: false })
}

/// ℓ-boundary sets of `w` for indices in `ns`.
pub fn boundary_sets(
    w: &InfiniteWord,
    ell: usize,
    ns: RangeInclusive<usize>,
    policy: PrefixPolicy,
) -> Result<BoundarySets> {
    boundary_sets_kl(w, ell, ell, ns, policy)
}

/// The ℓ-boundary set `∂_{w,ℓ}[n]` on the prefix of length `prefix_len`.
pub fn boundary_set(w: &InfiniteWord, ell: usize, n: usize, prefix_len: usize) -> Result<BoundarySet> {
    Ok(boundary_sets(w, ell, n..=n, PrefixPolicy::Fixed(prefix_len))?.sets.remove(0))
}

/// The (k, ℓ)-boundary set: pairs (length-`k` prefix, length-`ℓ` suffix) of
/// the length-`(n+ℓ)` factors.
pub fn boundary_set_kl(w: &InfiniteWord, k: usize, ell: usize, n: usize, prefix_len: usize) -> Result<BoundarySet> {
    if n < k.max(ell) {
        return Err(Error::Invalid(format!("index {n} below max(k, ℓ) = {}", k.max(ell))));
    }
    Ok(boundary_sets_kl(w, k, ell, n..=n, PrefixPolicy::Fixed(prefix_len))?.sets.remove(0))
}

/// A boundary word: letters over a first-appearance boundary alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryWord {
    /// First index.
    pub start: usize,
    /// Letters (indices into `alphabet`).
    pub letters: Vec<u32>,
    /// The boundary alphabet in first-appearance order.
    pub alphabet: BoundaryAlphabet,
    /// Prefix length scanned.
    pub prefix_len: u64,
    /// Whether the prefix policy reached a stable answer.
    pub stabilized: bool,
}

impl BoundaryWord {
    /// Names the sets of a computed range.
    pub fn from_sets(sets: &BoundarySets) -> BoundaryWord {
        let mut alphabet = BoundaryAlphabet::new();
        let letters = sets.sets.iter().map(|s| alphabet.intern(s)).collect();
        BoundaryWord { start: sets.start, letters, alphabet, prefix_len: sets.prefix_len, stabilized: sets.stabilized }
    }

    /// Letters rendered with their names (`a`, `b`, …).
    pub fn render(&self) -> String {
        self.letters.iter().map(|&l| super::set::letter_name(l as usize)).collect()
    }

    /// Letters as a word over `u8` (for word analytics).
    pub fn as_word(&self) -> Vec<Letter> {
        self.letters.iter().map(|&l| l as Letter).collect()
    }
}

/// ℓ-boundary word of `w` over `range` with first-appearance naming.
pub fn boundary_word(
    w: &InfiniteWord,
    ell: usize,
    range: RangeInclusive<usize>,
    policy: PrefixPolicy,
) -> Result<BoundaryWord> {
    Ok(BoundaryWord::from_sets(&boundary_sets(w, ell, range, policy)?))
}

/// One distinct boundary set of a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    /// The set.
    pub set: BoundarySet,
    /// First index where it occurs.
    pub first: usize,
    /// Last index where it occurs.
    pub last: usize,
    /// Number of occurrences in the range.
    pub count: usize,
}

/// Distinct boundary sets over a range, in first-appearance order.
pub fn alphabet_census(
    w: &InfiniteWord,
    ell: usize,
    range: RangeInclusive<usize>,
    policy: PrefixPolicy,
) -> Result<(Vec<CensusEntry>, BoundarySets)> {
    let sets = boundary_sets(w, ell, range, policy)?;
    let mut entries: Vec<CensusEntry> = Vec::new();
    let mut index: HashMap<&BoundarySet, usize> = HashMap::new();
    for (i, s) in sets.sets.iter().enumerate() {
        let n = sets.start + i;
        match index.get(s) {
            Some(&e) => {
                entries[e].last = n;
                entries[e].count += 1;
            }
            None => {
                index.insert(s, entries.len());
                entries.push(CensusEntry { set: s.clone(), first: n, last: n, count: 1 });
            }
        }
    }
    Ok((entries, sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::SetGenerator;

    fn brute(prefix: &[Letter], left: usize, right: usize, n: usize) -> BoundarySet {
        let mut pairs = Vec::new();
        let mut i = 0;
        while i + n + right <= prefix.len() && i + left <= prefix.len() {
            pairs.push((prefix[i..i + left].to_vec(), prefix[i + n..i + n + right].to_vec()));
            i += 1;
        }
        BoundarySet::new(left, right, pairs)
    }

    #[test]
    fn matches_brute_force() {
        let w = InfiniteWord::tribonacci();
        let p = w.prefix(600).unwrap();
        for (k, l) in [(1, 1), (2, 2), (1, 3), (3, 1), (2, 3)] {
            let sets = sets_of_prefix(&p, k, l, 0..=40);
            for (n, s) in sets.iter().enumerate() {
                assert_eq!(s, &brute(&p, k, l, n), "k={k} l={l} n={n}");
            }
        }
    }

    #[test]
    fn sparse_matches_dense() {
        let w = InfiniteWord::characteristic("tri", SetGenerator::Triangular);
        let p = w.prefix(3000).unwrap();
        let ones = w.characteristic_positions(3000).unwrap().unwrap();
        assert_eq!(sparse_sets(&ones, 3000, 0..=200), sets_of_prefix(&p, 1, 1, 0..=200));
    }

    #[test]
    fn fibonacci_one_boundary() {
        let f = InfiniteWord::fibonacci();
        let word = boundary_word(&f, 1, 1..=29, PrefixPolicy::doubling_for(29, DEFAULT_MAX_PREFIX)).unwrap();
        assert_eq!(word.render(), "abbabbbbabbabbbbabbbbabbabbbb");
        assert!(word.stabilized);
    }

    #[test]
    fn periodic_kl() {
        let w = InfiniteWord::periodic("p", vec![], vec![0, 1]).unwrap();
        let s = boundary_set_kl(&w, 1, 1, 4, 100).unwrap();
        assert_eq!(s, BoundarySet::new(1, 1, vec![(vec![0], vec![0]), (vec![1], vec![1])]));
    }
}
