//! Finite alphabets of plain letters or fixed-arity tuples of letters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside an [`Alphabet`].
pub type Symbol = u32;

/// Reading direction of an automaton over representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Most significant digit first; padding goes on the left.
    #[default]
    Msd,
    /// Least significant digit first; padding goes on the right.
    Lsd,
}

impl Direction {
    /// The opposite reading direction.
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Msd => Direction::Lsd,
            Direction::Lsd => Direction::Msd,
        }
    }
}

/// An alphabet whose symbols are `arity`-tuples over a track alphabet.
///
/// Arity 1 is an ordinary alphabet and arity 0 has the single empty tuple.
/// Symbols are numbered in mixed radix with track 0 most significant, so the
/// numeric order of symbols is the lexicographic order of tuples.  An optional
/// padding letter marks the track letter used to left-pad (msd) or right-pad
/// (lsd) representations of unequal lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    letters: Vec<String>,
    arity: usize,
    pad: Option<u32>,
}

impl Alphabet {
    /// A single-track alphabet without padding letter.
    pub fn plain<S: AsRef<str>>(letters: &[S]) -> Alphabet {
        Alphabet { letters: letters.iter().map(|s| s.as_ref().to_string()).collect(), arity: 1, pad: None }
    }

    /// A tuple alphabet over `letters` with the given arity and padding letter.
    pub fn tuples<S: AsRef<str>>(letters: &[S], arity: usize, pad: Option<u32>) -> Alphabet {
        Alphabet { letters: letters.iter().map(|s| s.as_ref().to_string()).collect(), arity, pad }
    }

    /// The same track alphabet with another arity.
    pub fn with_arity(&self, arity: usize) -> Alphabet {
        Alphabet { letters: self.letters.clone(), arity, pad: self.pad }
    }

    /// Track letters.
    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    /// Number of tracks.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Padding letter, if any.
    pub fn pad(&self) -> Option<u32> {
        self.pad
    }

    /// Number of track letters.
    pub fn track_size(&self) -> usize {
        self.letters.len()
    }

    /// Number of symbols (`track_size ^ arity`).
    pub fn size(&self) -> usize {
        self.letters.len().pow(self.arity as u32)
    }

    /// Encodes a tuple of track letters as a symbol.
    pub fn encode(&self, tracks: &[u32]) -> Symbol {
        debug_assert_eq!(tracks.len(), self.arity);
        let m = self.letters.len() as u32;
        tracks.iter().fold(0, |acc, &t| acc * m + t)
    }

    /// Decodes a symbol into its track letters.
    pub fn decode(&self, sym: Symbol) -> Vec<u32> {
        let m = self.letters.len() as u32;
        let mut out = vec![0; self.arity];
        let mut s = sym;
        for slot in out.iter_mut().rev() {
            *slot = s % m;
            s /= m;
        }
        out
    }

    /// The letter carried by `sym` on `track`.
    pub fn track_letter(&self, sym: Symbol, track: usize) -> u32 {
        let m = self.letters.len() as u32;
        let shift = (self.arity - 1 - track) as u32;
        (sym / m.pow(shift)) % m
    }

    /// The all-padding symbol, if a padding letter is declared.
    pub fn pad_symbol(&self) -> Option<Symbol> {
        self.pad.map(|p| self.encode(&vec![p; self.arity]))
    }

    /// Display name of a symbol: the letter for arity 1, `[x,y,z]` otherwise.
    pub fn symbol_name(&self, sym: Symbol) -> String {
        if self.arity == 1 {
            return self.letters[sym as usize].clone();
        }
        let parts: Vec<&str> = self.decode(sym).into_iter().map(|t| self.letters[t as usize].as_str()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Index of a track letter by name.
    pub fn letter_index(&self, name: &str) -> Result<u32> {
        self.letters
            .iter()
            .position(|l| l == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::Invalid(format!("letter `{name}` not in alphabet {:?}", self.letters)))
    }

    /// Parses a word of single-character letters (arity 1 only).
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>> {
        text.chars().map(|c| self.letter_index(&c.to_string())).collect()
    }

    /// Renders a word of arity-1 symbols by concatenating letter names.
    pub fn render_word(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.symbol_name(s)).collect()
    }

    /// Checks that two alphabets coincide.
    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{:?}^{} vs {:?}^{}",
                self.letters, self.arity, other.letters, other.arity
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_round_trip() {
        let a = Alphabet::tuples(&["#", "1", "2"], 3, Some(0));
        for s in 0..a.size() as u32 {
            assert_eq!(a.encode(&a.decode(s)), s);
        }
        assert_eq!(a.decode(a.encode(&[2, 0, 1])), vec![2, 0, 1]);
        assert_eq!(a.track_letter(a.encode(&[2, 0, 1]), 2), 1);
        assert_eq!(a.pad_symbol(), Some(0));
        assert_eq!(a.symbol_name(a.encode(&[0, 1, 2])), "[#,1,2]");
    }

    #[test]
    fn arity_zero_has_one_symbol() {
        let a = Alphabet::tuples(&["0", "1"], 0, Some(0));
        assert_eq!(a.size(), 1);
        assert_eq!(a.encode(&[]), 0);
        assert!(a.decode(0).is_empty());
    }
}
