//! Genealogical (radix) enumeration of regular languages: rank and unrank
//! through per-state path counts.

use std::sync::{Arc, Mutex};

use super::alphabet::Symbol;
use super::dfa::{Dfa, StateId};
use crate::error::{Error, Result};

/// Ranks and unranks the words of `L(dfa)` in genealogical order: by length,
/// then lexicographically by a total order on symbols.
///
/// Path-count tables (`counts[len][q]` = number of accepted words of length
/// `len` readable from `q`) are extended on demand behind a mutex, so a
/// shared enumerator can be used from several threads.
#[derive(Debug)]
pub struct RadixEnumerator {
    dfa: Arc<Dfa>,
    order: Vec<Symbol>,
    counts: Mutex<Vec<Vec<u128>>>,
    infinite: bool,
}

impl RadixEnumerator {
    /// Enumerator with the natural symbol order.
    pub fn new(dfa: Dfa) -> RadixEnumerator {
        let order = (0..dfa.alphabet().size() as Symbol).collect();
        RadixEnumerator::with_order(dfa, order).expect("natural order is total")
    }

    /// Enumerator with an explicit total order (`order[i]` is the i-th
    /// smallest symbol).
    pub fn with_order(dfa: Dfa, order: Vec<Symbol>) -> Result<RadixEnumerator> {
        let k = dfa.alphabet().size();
        let mut seen = vec![false; k];
        for &s in &order {
            if s as usize >= k || std::mem::replace(&mut seen[s as usize], true) {
                return Err(Error::Invalid(format!("letter order {order:?} is not a permutation")));
            }
        }
        if order.len() != k {
            return Err(Error::Invalid(format!("letter order {order:?} is not total")));
        }
        let dfa = dfa.canonicalize();
        let n = dfa.num_states();
        let base: Vec<u128> = (0..n).map(|q| dfa.is_accepting(q as StateId) as u128).collect();
        let enumerator = RadixEnumerator { dfa: Arc::new(dfa), order, counts: Mutex::new(vec![base]), infinite: false };
        // L is infinite iff it contains a word whose length lies in [n, 2n).
        let infinite = (n..2 * n).any(|len| enumerator.count_from(enumerator.dfa.initial(), len).unwrap_or(1) > 0);
        Ok(RadixEnumerator { infinite, ..enumerator })
    }

    /// The (canonical) automaton being enumerated.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Whether the language is infinite.
    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// Number of accepted words of length `len` readable from state `q`.
    pub fn count_from(&self, q: StateId, len: usize) -> Result<u128> {
        let mut counts = self.counts.lock().expect("count table lock poisoned");
        let k = self.dfa.alphabet().size();
        while counts.len() <= len {
            let prev = counts.last().expect("length-0 row present");
            let mut row = vec![0u128; self.dfa.num_states()];
            for (q, slot) in row.iter_mut().enumerate() {
                let mut total: u128 = 0;
                for s in 0..k as Symbol {
                    let t = self.dfa.next(q as StateId, s) as usize;
                    total = total.checked_add(prev[t]).ok_or_else(|| Error::Overflow("counting paths".into()))?;
                }
                *slot = total;
            }
            counts.push(row);
        }
        Ok(counts[len][q as usize])
    }

    /// Number of accepted words of length exactly `len`.
    pub fn count(&self, len: usize) -> Result<u128> {
        self.count_from(self.dfa.initial(), len)
    }

    /// Number of accepted words of length `< len`.
    pub fn count_shorter(&self, len: usize) -> Result<u128> {
        let mut total: u128 = 0;
        for l in 0..len {
            total = total.checked_add(self.count(l)?).ok_or_else(|| Error::Overflow("counting words".into()))?;
        }
        Ok(total)
    }

    /// Position of `word` in the genealogical enumeration (0-based).
    pub fn rank(&self, word: &[Symbol]) -> Result<u128> {
        if !self.dfa.accepts(word) {
            return Err(Error::NotInLanguage(self.dfa.alphabet().render_word(word)));
        }
        let mut r = self.count_shorter(word.len())?;
        let mut q = self.dfa.initial();
        for (i, &s) in word.iter().enumerate() {
            let rest = word.len() - i - 1;
            for &c in &self.order {
                if c == s {
                    break;
                }
                r = r
                    .checked_add(self.count_from(self.dfa.next(q, c), rest)?)
                    .ok_or_else(|| Error::Overflow("ranking".into()))?;
            }
            q = self.dfa.next(q, s);
        }
        Ok(r)
    }

    /// The word at position `index` of the genealogical enumeration.
    pub fn unrank(&self, index: u128) -> Result<Vec<Symbol>> {
        let mut remaining = index;
        let mut len = 0usize;
        let n = self.dfa.num_states();
        loop {
            let c = self.count(len)?;
            if remaining < c {
                break;
            }
            remaining -= c;
            len += 1;
            if !self.infinite && len >= n {
                return Err(Error::IndexOutOfRange { size: index - remaining, index });
            }
        }
        let mut word = Vec::with_capacity(len);
        let mut q = self.dfa.initial();
        for i in 0..len {
            let rest = len - i - 1;
            for &c in &self.order {
                let t = self.dfa.next(q, c);
                let cnt = self.count_from(t, rest)?;
                if remaining < cnt {
                    word.push(c);
                    q = t;
                    break;
                }
                remaining -= cnt;
            }
        }
        Ok(word)
    }

    /// Compares two words genealogically under the enumerator's order.
    pub fn genealogical_cmp(&self, a: &[Symbol], b: &[Symbol]) -> std::cmp::Ordering {
        let mut pos = vec![0usize; self.order.len()];
        for (i, &s) in self.order.iter().enumerate() {
            pos[s as usize] = i;
        }
        a.len().cmp(&b.len()).then_with(|| a.iter().map(|&s| pos[s as usize]).cmp(b.iter().map(|&s| pos[s as usize])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Alphabet, Direction};

    /// α*β* over letters a < b.
    fn astar_bstar() -> Dfa {
        let a = Alphabet::plain(&["a", "b"]);
        Dfa::new(a, Direction::Msd, 0, vec![true, true, false], vec![0, 1, 2, 1, 2, 2]).unwrap()
    }

    #[test]
    fn astar_bstar_examples() {
        let e = RadixEnumerator::new(astar_bstar());
        assert_eq!(e.rank(&[0, 0]).unwrap(), 3);
        assert_eq!(e.rank(&[]).unwrap(), 0);
        assert_eq!(e.unrank(2).unwrap(), vec![1]);
        assert!(e.rank(&[1, 0]).is_err());
    }

    #[test]
    fn one_two_star() {
        let a = Alphabet::plain(&["1", "2"]);
        let e = RadixEnumerator::new(Dfa::universal(a, Direction::Msd));
        assert_eq!(e.unrank(5).unwrap(), vec![1, 0]);
        for i in 0..200 {
            assert_eq!(e.rank(&e.unrank(i).unwrap()).unwrap(), i);
        }
    }

    #[test]
    fn custom_order_reverses_letters() {
        let e = RadixEnumerator::with_order(astar_bstar(), vec![1, 0]).unwrap();
        assert_eq!(e.unrank(1).unwrap(), vec![1]);
        assert_eq!(e.unrank(2).unwrap(), vec![0]);
        assert_eq!(e.unrank(3).unwrap(), vec![1, 1]);
    }

    #[test]
    fn finite_language_errors() {
        let a = Alphabet::plain(&["x"]);
        let d = Dfa::new(a, Direction::Msd, 0, vec![true, true, false], vec![1, 2, 2]).unwrap();
        let e = RadixEnumerator::new(d);
        assert!(!e.is_infinite());
        assert_eq!(e.unrank(1).unwrap(), vec![0]);
        assert!(matches!(e.unrank(2), Err(Error::IndexOutOfRange { size: 2, index: 2 })));
    }
}
