//! Factor analytics on word prefixes: factor sets, complexity, powers,
//! special factors and eventual periodicity.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::word::InfiniteWord;
use super::Letter;
use crate::error::Result;

/// A value computed on a finite prefix, with the evidence that it is stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilized<T> {
    /// The computed value (on the longest prefix examined).
    pub value: T,
    /// Length of the longest prefix examined.
    pub prefix_len: usize,
    /// Whether doubling the prefix left the value unchanged.
    pub stabilized: bool,
}

/// Recomputes `f` on prefixes of length `start, 2·start, …` (at most
/// `max_len`) until two consecutive results agree.
pub fn stabilize<T: PartialEq>(
    start: usize,
    max_len: usize,
    mut f: impl FnMut(usize) -> Result<T>,
) -> Result<Stabilized<T>> {
    let mut len = start.max(1).min(max_len.max(1));
    let mut value = f(len)?;
    while len < max_len {
        let next_len = (2 * len).min(max_len);
        let next = f(next_len)?;
        if next == value {
            return Ok(Stabilized { value: next, prefix_len: next_len, stabilized: true });
        }
        value = next;
        len = next_len;
    }
    Ok(Stabilized { value, prefix_len: len, stabilized: false })
}

/// Distinct length-`n` factors of a finite word.
pub fn factors_of(word: &[Letter], n: usize) -> BTreeSet<Vec<Letter>> {
    if n > word.len() {
        return BTreeSet::new();
    }
    word.windows(n.max(1))
        .map(|w| w[..n].to_vec())
        .chain(std::iter::once(Vec::new()).filter(|_| n == 0))
        .collect::<HashSet<_>>()
        .into_iter()
        .filter(|w| w.len() == n)
        .collect()
}

/// `Fac_n` of the prefix of length `prefix_len`.
pub fn factor_set(w: &InfiniteWord, n: usize, prefix_len: usize) -> Result<BTreeSet<Vec<Letter>>> {
    w.with_prefix(prefix_len.max(n), |p| factors_of(p, n))
}

/// Number of distinct length-`n` factors of a finite word.
pub fn complexity_of(word: &[Letter], n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    if n > word.len() {
        return 0;
    }
    word.windows(n).collect::<HashSet<_>>().len()
}

/// Factor complexity at `n` on the prefix of length `prefix_len`.
pub fn factor_complexity(w: &InfiniteWord, n: usize, prefix_len: usize) -> Result<usize> {
    w.with_prefix(prefix_len.max(n), |p| complexity_of(p, n))
}

/// Factor complexity at `n` with prefix doubling from `start` up to `max_len`.
pub fn factor_complexity_stable(w: &InfiniteWord, n: usize, start: usize, max_len: usize) -> Result<Stabilized<usize>> {
    stabilize(start.max(n), max_len, |len| factor_complexity(w, n, len))
}

/// Factor complexities `p(1..=max_n)` of one finite word.
pub fn complexity_profile(word: &[Letter], max_n: usize) -> Vec<usize> {
    (1..=max_n).map(|n| complexity_of(word, n)).collect()
}

/// Largest power of a word inside a scanned prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PowerCount {
    /// `u^r` occurs and `u^{r+1}` does not.
    Bounded(usize),
    /// The longest run reaches the end of the scanned prefix: the exponent
    /// may be larger (or unbounded).
    AtScanLimit(usize),
}

impl PowerCount {
    /// The exponent observed.
    pub fn exponent(self) -> usize {
        match self {
            PowerCount::Bounded(r) | PowerCount::AtScanLimit(r) => r,
        }
    }
}

/// Largest `r` with `u^r` a factor of `word`.  A run still open at the
/// end of `word` and longer than every closed run is reported as
/// [`PowerCount::AtScanLimit`].
pub fn max_power_in(word: &[Letter], u: &[Letter]) -> PowerCount {
    assert!(!u.is_empty(), "power base must be nonempty");
    let m = u.len();
    let mut closed = 0usize;
    let mut open = 0usize;
    for start in 0..m.min(word.len()) {
        let mut run = 0usize;
        let mut pos = start;
        while pos + m <= word.len() {
            if &word[pos..pos + m] == u {
                run += 1;
            } else {
                closed = closed.max(run);
                run = 0;
            }
            pos += m;
        }
        open = open.max(run);
    }
    if open > closed {
        PowerCount::AtScanLimit(open)
    } else {
        PowerCount::Bounded(closed)
    }
}

/// Largest `r` with `u^r` a factor of the prefix of length `prefix_len`.
pub fn max_power(w: &InfiniteWord, u: &[Letter], prefix_len: usize) -> Result<PowerCount> {
    w.with_prefix(prefix_len, |p| max_power_in(p, u))
}

/// Length-`n` factors having at least two right extensions in `word`
/// (extensions judged within `word`).
pub fn right_special_factors(word: &[Letter], n: usize) -> BTreeSet<Vec<Letter>> {
    let mut ext: HashMap<&[Letter], HashSet<Letter>> = HashMap::new();
    if word.len() > n {
        for w in word.windows(n + 1) {
            ext.entry(&w[..n]).or_default().insert(w[n]);
        }
    }
    ext.into_iter().filter(|(_, e)| e.len() >= 2).map(|(f, _)| f.to_vec()).collect()
}

/// Smallest eventual period `(preperiod, period)` of a finite word: the
/// least `q ≤ max_period` such that `w[n+q] = w[n]` for all `n ≥ p` with `p`
/// minimal, accepted only when the verified tail spans at least three
/// periods and `p ≤ len/2`.  Heuristic by nature: a candidate, not a proof.
pub fn detect_eventual_period(word: &[Letter], max_period: usize) -> Option<(usize, usize)> {
    let len = word.len();
    for q in 1..=max_period.min(len / 3) {
        // last mismatch position
        let mut p = 0;
        for n in (0..len - q).rev() {
            if word[n + q] != word[n] {
                p = n + 1;
                break;
            }
        }
        if p <= len / 2 && len - p >= 3 * q {
            return Some((p, q));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::InfiniteWord;

    #[test]
    fn fibonacci_factors() {
        let f = InfiniteWord::fibonacci();
        let two: Vec<Vec<Letter>> = factor_set(&f, 2, 1000).unwrap().into_iter().collect();
        assert_eq!(two, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        let three = factor_set(&f, 3, 1000).unwrap();
        assert_eq!(three.len(), 4);
        assert!(three.contains(&vec![1, 0, 1]));
        assert_eq!(factor_set(&f, 0, 10).unwrap().len(), 1);
    }

    #[test]
    fn sturmian_complexity() {
        let f = InfiniteWord::fibonacci();
        for n in 1..=50 {
            assert_eq!(factor_complexity(&f, n, 5000).unwrap(), n + 1);
        }
        let s = factor_complexity_stable(&f, 10, 100, 100_000).unwrap();
        assert!(s.stabilized);
        assert_eq!(s.value, 11);
    }

    #[test]
    fn powers() {
        let f = InfiniteWord::fibonacci();
        assert_eq!(max_power(&f, &[0, 1], 10_000).unwrap(), PowerCount::Bounded(2));
        assert_eq!(max_power(&f, &[0], 10_000).unwrap(), PowerCount::Bounded(2));
        let p = InfiniteWord::periodic("p", vec![], vec![0, 1]).unwrap();
        assert_eq!(max_power(&p, &[0, 1], 100).unwrap(), PowerCount::AtScanLimit(50));
    }

    #[test]
    fn periods() {
        let w = [2, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1];
        assert_eq!(detect_eventual_period(&w, 5), Some((1, 2)));
        let f = InfiniteWord::fibonacci().prefix(10_000).unwrap();
        assert_eq!(detect_eventual_period(&f, 5000), None);
    }

    #[test]
    fn right_special() {
        let f = InfiniteWord::fibonacci().prefix(2000).unwrap();
        for n in 1..20 {
            assert_eq!(right_special_factors(&f, n).len(), 1);
        }
    }
}
