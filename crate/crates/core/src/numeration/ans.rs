//! Abstract numeration systems: a regular language enumerated in
//! genealogical order, with the padded track alphabet used by relations.

use std::sync::Arc;

use super::positional::PositionalSystem;
use crate::automata::{Alphabet, Dfa, Direction, RadixEnumerator, Symbol};
use crate::error::{Error, Result};

/// How representations of different lengths are aligned on tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Padding {
    /// Pad with the digit 0 (positional systems).
    ZeroDigit,
    /// Pad with a fresh letter `#` that is smaller than every letter.
    Hash,
}

/// An abstract numeration system `S = (L, A, <)`: `rep_S(n)` is the
/// `(n+1)`-st word of `L` in genealogical order.
#[derive(Clone, Debug)]
pub struct Ans {
    name: String,
    language: Dfa,
    enumerator: Arc<RadixEnumerator>,
    positional: Option<PositionalSystem>,
    padding: Padding,
}

impl Ans {
    /// Numeration system of a regular language over letters in their natural
    /// order; representations are padded with `#`.
    pub fn from_language(name: &str, language: Dfa) -> Result<Ans> {
        let enumerator = RadixEnumerator::new(language.clone());
        if !enumerator.is_infinite() {
            return Err(Error::Invalid(format!("numeration language of {name} is finite")));
        }
        Ok(Ans {
            name: name.to_string(),
            language: enumerator.dfa().clone(),
            enumerator: Arc::new(enumerator),
            positional: None,
            padding: Padding::Hash,
        })
    }

    /// Numeration system of greedy representations; padded with 0.
    pub fn from_positional(sys: PositionalSystem) -> Ans {
        let enumerator = RadixEnumerator::new(sys.language().clone());
        Ans {
            name: sys.name().to_string(),
            language: enumerator.dfa().clone(),
            enumerator: Arc::new(enumerator),
            positional: Some(sys),
            padding: Padding::ZeroDigit,
        }
    }

    /// `α*β*` over letters `a < b`.
    pub fn astar_bstar() -> Ans {
        let a = Alphabet::plain(&["a", "b"]);
        let dfa =
            Dfa::new(a, Direction::Msd, 0, vec![true, true, false], vec![0, 1, 2, 1, 2, 2]).expect("well-formed table");
        Ans::from_language("ans:astar-bstar", dfa).expect("infinite language")
    }

    /// `α*β* ∪ β*γ*` over letters `a < b < c`.
    pub fn astar_bstar_or_bstar_cstar() -> Ans {
        let a = Alphabet::plain(&["a", "b", "c"]);
        // 0: start, 1: in a+ (or a+b*), 2: in b+ (either branch), 3: a+b+,
        // 4: b*c+ , 5: sink
        let delta = vec![
            1, 2, 4, // start
            1, 3, 5, // a+
            5, 2, 4, // b+ : more b, or c
            5, 3, 5, // a+b+
            5, 5, 4, // b*c+
            5, 5, 5,
        ];
        let dfa = Dfa::new(a, Direction::Msd, 0, vec![true, true, true, true, true, false], delta)
            .expect("well-formed table");
        Ans::from_language("ans:astar-bstar-or-bstar-cstar", dfa).expect("infinite language")
    }

    /// `{1,2}*` with `1 < 2`: the value of `d_t…d_0` is `Σ d_i 2^i`.
    pub fn one_two_star() -> Ans {
        let a = Alphabet::plain(&["1", "2"]);
        Ans::from_language("ans:one-two-star", Dfa::universal(a, Direction::Msd)).expect("infinite language")
    }

    /// Built-in by registry name: positional names (see
    /// [`PositionalSystem::builtin`]) or `ans:astar-bstar`,
    /// `ans:astar-bstar-or-bstar-cstar`, `ans:one-two-star`.
    pub fn builtin(name: &str) -> Result<Ans> {
        match name {
            "ans:astar-bstar" => Ok(Ans::astar_bstar()),
            "ans:astar-bstar-or-bstar-cstar" => Ok(Ans::astar_bstar_or_bstar_cstar()),
            "ans:one-two-star" => Ok(Ans::one_two_star()),
            other => PositionalSystem::builtin(other).map(Ans::from_positional),
        }
    }

    /// Registry name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The numeration language (canonical).
    pub fn language(&self) -> &Dfa {
        &self.language
    }

    /// Letters of the language alphabet.
    pub fn letters(&self) -> &[String] {
        self.language.alphabet().letters()
    }

    /// The positional system, when the ANS comes from one.
    pub fn positional(&self) -> Option<&PositionalSystem> {
        self.positional.as_ref()
    }

    /// Padding convention.
    pub fn padding(&self) -> Padding {
        self.padding
    }

    /// The radix enumerator of the language.
    pub fn enumerator(&self) -> &RadixEnumerator {
        &self.enumerator
    }

    /// `rep_S(n)` as letter indices.
    pub fn rep(&self, n: u64) -> Result<Vec<Symbol>> {
        match &self.positional {
            Some(sys) => Ok(sys.greedy_rep(n)),
            None => self.enumerator.unrank(n as u128),
        }
    }

    /// `val_S(w)` for a word over the language letters.
    pub fn val(&self, word: &[Symbol]) -> Result<u64> {
        match &self.positional {
            Some(sys) if self.language.accepts(word) => sys.value(word),
            _ => {
                let r = self.enumerator.rank(word)?;
                u64::try_from(r).map_err(|_| Error::Overflow("valuation".into()))
            }
        }
    }

    /// Renders `rep_S(n)`.
    pub fn rep_string(&self, n: u64) -> Result<String> {
        Ok(self.language.alphabet().render_word(&self.rep(n)?))
    }

    /// Track alphabet for relations of the given arity: the language letters,
    /// preceded by `#` when padding with a fresh letter.
    pub fn track_alphabet(&self, arity: usize) -> Alphabet {
        match self.padding {
            Padding::ZeroDigit => {
                let zero = self.language.alphabet().letter_index("0").expect("digit 0");
                Alphabet::tuples(self.letters(), arity, Some(zero))
            }
            Padding::Hash => {
                let mut letters = vec!["#".to_string()];
                letters.extend(self.letters().iter().cloned());
                Alphabet::tuples(&letters, arity, Some(0))
            }
        }
    }

    /// Track letter of a language letter.
    pub fn to_track(&self, letter: Symbol) -> Symbol {
        match self.padding {
            Padding::ZeroDigit => letter,
            Padding::Hash => letter + 1,
        }
    }

    /// Padding letter on tracks.
    pub fn pad_letter(&self) -> Symbol {
        self.track_alphabet(1).pad().expect("track alphabets are padded")
    }

    /// Representation of `n` on a track, left-padded to `len` letters (or
    /// longer if the representation needs it).
    pub fn padded_rep(&self, n: u64, len: usize) -> Result<Vec<Symbol>> {
        let rep = self.rep(n)?;
        let pad = self.pad_letter();
        let mut out = vec![pad; len.saturating_sub(rep.len())];
        out.extend(rep.into_iter().map(|l| self.to_track(l)));
        Ok(out)
    }

    /// Value of a padded track word (msd); error if it is not `pad* rep`.
    pub fn track_value(&self, track: &[Symbol]) -> Result<u64> {
        let pad = self.pad_letter();
        let start = track.iter().position(|&l| l != pad).unwrap_or(track.len());
        let mut word = Vec::with_capacity(track.len() - start);
        for &l in &track[start..] {
            match self.padding {
                Padding::ZeroDigit => word.push(l),
                Padding::Hash if l == 0 => return Err(Error::Invalid("padding letter inside a representation".into())),
                Padding::Hash => word.push(l - 1),
            }
        }
        self.val(&word)
    }

    /// Single-track msd automaton of valid padded representations
    /// (`pad* L`).
    pub fn valid_track(&self) -> Dfa {
        let alphabet = self.track_alphabet(1);
        let pad = self.pad_letter();
        let lang = &self.language;
        let padding = self.padding;
        // key: None = still in the padding prefix, Some(q) = language state
        Dfa::explore(
            alphabet,
            Direction::Msd,
            None,
            usize::MAX,
            |key: &Option<u32>, s| match (*key, padding) {
                (None, _) if s == pad => None,
                (None, Padding::ZeroDigit) => Some(lang.next(lang.initial(), s)),
                (None, Padding::Hash) => Some(lang.next(lang.initial(), s - 1)),
                (Some(q), Padding::ZeroDigit) => Some(lang.next(q, s)),
                (Some(_), Padding::Hash) if s == 0 => Some(u32::MAX),
                (Some(q), Padding::Hash) if q == u32::MAX => Some(u32::MAX),
                (Some(q), Padding::Hash) => Some(lang.next(q, s - 1)),
            },
            |key| match *key {
                None => lang.is_accepting(lang.initial()),
                Some(u32::MAX) => false,
                Some(q) => lang.is_accepting(q),
            },
        )
        .expect("unbounded budget")
        .0
        .canonicalize()
    }

    /// Automaton over `arity` tracks accepting tuples whose every track is a
    /// valid padded representation (msd).
    pub fn valid_tuples(&self, arity: usize) -> Dfa {
        let single = self.valid_track();
        let alphabet = self.track_alphabet(arity);
        let tracks = alphabet.clone();
        Dfa::explore(
            alphabet,
            Direction::Msd,
            vec![single.initial(); arity],
            usize::MAX,
            |qs: &Vec<u32>, s| qs.iter().enumerate().map(|(t, &q)| single.next(q, tracks.track_letter(s, t))).collect(),
            |qs| qs.iter().all(|&q| single.is_accepting(q)),
        )
        .expect("unbounded budget")
        .0
        .canonicalize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn astar_bstar_examples() {
        let s = Ans::astar_bstar();
        assert_eq!(s.rep_string(3).unwrap(), "aa");
        assert_eq!(s.rep_string(2).unwrap(), "b");
        assert_eq!(s.val(&[]).unwrap(), 0);
    }

    #[test]
    fn triangular_valuation_identity() {
        // val(a^i b^j) = T_{i+j} + j
        let s = Ans::astar_bstar();
        for i in 0..=60usize {
            for j in 0..=60 - i {
                let mut w = vec![0; i];
                w.extend(vec![1; j]);
                let m = (i + j) as u64;
                assert_eq!(s.val(&w).unwrap(), m * (m + 1) / 2 + j as u64);
            }
        }
    }

    #[test]
    fn one_two_star_values() {
        let s = Ans::one_two_star();
        assert_eq!(s.rep_string(5).unwrap(), "21");
        assert_eq!(s.val(&[0, 0]).unwrap(), 3);
    }

    #[test]
    fn padded_track_values() {
        let s = Ans::one_two_star();
        let t = s.padded_rep(3, 4).unwrap();
        assert_eq!(t, vec![0, 0, 1, 1]);
        assert_eq!(s.track_value(&t).unwrap(), 3);
        assert!(s.valid_track().accepts(&t));
        assert!(!s.valid_track().accepts(&[1, 0, 1]));
        let f = Ans::builtin("fibonacci").unwrap();
        assert_eq!(f.padded_rep(4, 5).unwrap(), vec![0, 0, 1, 0, 1]);
        assert!(f.valid_track().accepts(&[0, 0, 1, 0, 1]));
        assert!(!f.valid_track().accepts(&[0, 1, 1]));
    }
}
