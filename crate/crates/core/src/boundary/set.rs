//! Boundary sets and boundary alphabets.

use std::collections::HashMap;

use serde::Serialize;

use crate::words::Letter;

/// A set of (prefix, suffix) pairs with uniform lengths, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoundarySet {
    left: usize,
    right: usize,
    pairs: Vec<(Vec<Letter>, Vec<Letter>)>,
}

impl BoundarySet {
    /// Canonical set from arbitrary pairs (sorted, deduplicated).
    ///
    /// # Panics
    /// If some pair does not have lengths `(left, right)`.
    pub fn new(left: usize, right: usize, mut pairs: Vec<(Vec<Letter>, Vec<Letter>)>) -> BoundarySet {
        assert!(
            pairs.iter().all(|(u, v)| u.len() == left && v.len() == right),
            "boundary pairs must have uniform lengths"
        );
        pairs.sort();
        pairs.dedup();
        BoundarySet { left, right, pairs }
    }

    /// Parses `"(00,01),(10,00)"`-style text over digit letters.
    pub fn parse(text: &str) -> Option<BoundarySet> {
        let mut pairs = Vec::new();
        let mut rest = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
        while !rest.is_empty() {
            rest = rest.strip_prefix('(')?;
            let close = rest.find(')')?;
            let (u, v) = rest[..close].split_once(',')?;
            let digits = |s: &str| -> Option<Vec<Letter>> {
                s.trim().chars().map(|c| c.to_digit(10).map(|d| d as Letter)).collect()
            };
            pairs.push((digits(u)?, digits(v)?));
            rest = rest[close + 1..].trim_start_matches([',', ' ']).trim();
        }
        let (left, right) = pairs.first().map(|(u, v)| (u.len(), v.len()))?;
        if pairs.iter().any(|(u, v)| u.len() != left || v.len() != right) {
            return None;
        }
        Some(BoundarySet::new(left, right, pairs))
    }

    /// Length of the left words.
    pub fn left_len(&self) -> usize {
        self.left
    }

    /// Length of the right words.
    pub fn right_len(&self) -> usize {
        self.right
    }

    /// The sorted pairs.
    pub fn pairs(&self) -> &[(Vec<Letter>, Vec<Letter>)] {
        &self.pairs
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Whether there are no pairs.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Membership of a pair.
    pub fn contains(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.pairs.binary_search_by(|(a, b)| (a.as_slice(), b.as_slice()).cmp(&(u, v))).is_ok()
    }

    /// Renders as `{(00,01),(01,00)}` with the given letter names.
    pub fn render(&self, names: &[String]) -> String {
        let word = |w: &[Letter]| -> String { w.iter().map(|&a| names[a as usize].as_str()).collect() };
        let body: Vec<String> = self.pairs.iter().map(|(u, v)| format!("({},{})", word(u), word(v))).collect();
        format!("{{{}}}", body.join(","))
    }
}

/// Display name of the `i`-th boundary letter: `a…z`, then `A…Z`, then
/// `x52`, `x53`, ….
pub fn letter_name(i: usize) -> String {
    match i {
        0..=25 => ((b'a' + i as u8) as char).to_string(),
        26..=51 => ((b'A' + (i - 26) as u8) as char).to_string(),
        _ => format!("x{i}"),
    }
}

/// Name of the pre-letter standing for index `n < ℓ` in compiled boundary
/// words: `#`, `$`, `%`, `&`, then `p4`, `p5`, ….
pub fn pre_letter_name(n: usize) -> String {
    match n {
        0 => "#".into(),
        1 => "$".into(),
        2 => "%".into(),
        3 => "&".into(),
        _ => format!("p{n}"),
    }
}

/// Bijection between boundary sets and letters, in order of first
/// appearance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundaryAlphabet {
    sets: Vec<BoundarySet>,
    #[serde(skip)]
    index: HashMap<BoundarySet, u32>,
}

impl BoundaryAlphabet {
    /// An empty alphabet.
    pub fn new() -> BoundaryAlphabet {
        BoundaryAlphabet::default()
    }

    /// Letter of `set`, allocating the next letter if it is new.
    pub fn intern(&mut self, set: &BoundarySet) -> u32 {
        if let Some(&i) = self.index.get(set) {
            return i;
        }
        let i = self.sets.len() as u32;
        self.sets.push(set.clone());
        self.index.insert(set.clone(), i);
        i
    }

    /// Letter of `set`, if present.
    pub fn letter_of(&self, set: &BoundarySet) -> Option<u32> {
        self.index.get(set).copied()
    }

    /// Set of a letter.
    pub fn set_of(&self, letter: u32) -> &BoundarySet {
        &self.sets[letter as usize]
    }

    /// All sets in letter order.
    pub fn sets(&self) -> &[BoundarySet] {
        &self.sets
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    /// Whether no letter has been allocated.
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Letter display names.
    pub fn names(&self) -> Vec<String> {
        (0..self.sets.len()).map(letter_name).collect()
    }

    /// Legend lines `a = {(0,0),(0,1)}` using the word's letter names.
    pub fn legend(&self, word_letters: &[String]) -> Vec<String> {
        self.sets.iter().enumerate().map(|(i, s)| format!("{} = {}", letter_name(i), s.render(word_letters))).collect()
    }

    /// JSON form: one `{letter, pairs}` object per letter.
    pub fn to_json(&self, word_letters: &[String]) -> serde_json::Value {
        let word = |w: &[Letter]| -> String { w.iter().map(|&a| word_letters[a as usize].as_str()).collect() };
        serde_json::Value::Array(
            self.sets
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    serde_json::json!({
                        "letter": letter_name(i),
                        "pairs": s.pairs().iter().map(|(u, v)| [word(u), word(v)]).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_and_parse() {
        let s = BoundarySet::new(1, 1, vec![(vec![1], vec![0]), (vec![0], vec![0]), (vec![1], vec![0])]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(&[1], &[0]));
        let names = vec!["0".to_string(), "1".to_string()];
        assert_eq!(s.render(&names), "{(0,0),(1,0)}");
        assert_eq!(BoundarySet::parse("{(0,0),(1,0)}").unwrap(), s);
        assert!(BoundarySet::parse("(0,00),(1,0)").is_none());
    }

    #[test]
    fn alphabet_first_appearance() {
        let a = BoundarySet::new(1, 1, vec![(vec![0], vec![0])]);
        let b = BoundarySet::new(1, 1, vec![(vec![0], vec![1])]);
        let mut alpha = BoundaryAlphabet::new();
        assert_eq!(alpha.intern(&b), 0);
        assert_eq!(alpha.intern(&a), 1);
        assert_eq!(alpha.intern(&b), 0);
        assert_eq!(alpha.names(), vec!["a", "b"]);
        assert_eq!(letter_name(27), "B");
    }
}
