//! The sliding block code from factors of length 2ℓ of the characteristic
//! word to boundary sets, the morphism presenting the shifted boundary
//! sequence, and the first-letter analysis.

use std::collections::BTreeMap;

use serde::Serialize;

use super::fraction::ContinuedFraction;
use super::rotation::FactorPartition;
use super::slope::Slope;
use crate::boundary::{boundary_sets, BoundaryAlphabet, BoundarySet, PrefixPolicy};
use crate::error::{Error, Result};
use crate::words::{max_power_in, InfiniteWord, Letter, Morphism};

/// A code `B` with `∂[n] = B(s[n−ℓ−1 .. n+ℓ−1])` for all `n > ℓ`, where `s`
/// is the characteristic word.  Letters of the shifted boundary sequence
/// are numbered by first appearance from `n = ℓ + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct BlockCode {
    ell: usize,
    table: BTreeMap<Vec<Letter>, u32>,
    alphabet: BoundaryAlphabet,
    scanned: usize,
}

impl BlockCode {
    /// The window length ℓ (the code reads blocks of length 2ℓ).
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `(block, letter)` entries in lexicographic order of blocks.
    pub fn entries(&self) -> impl Iterator<Item = (&[Letter], u32)> {
        self.table.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// The boundary sets, indexed by letter.
    pub fn alphabet(&self) -> &BoundaryAlphabet {
        &self.alphabet
    }

    /// Prefix length of the characteristic word used to derive the code.
    pub fn scanned(&self) -> usize {
        self.scanned
    }

    /// The letter of a block of length 2ℓ.
    pub fn letter_of(&self, block: &[Letter]) -> Option<u32> {
        self.table.get(block).copied()
    }

    /// The boundary set of a block of length 2ℓ.
    pub fn set_of(&self, block: &[Letter]) -> Option<&BoundarySet> {
        self.letter_of(block).map(|l| self.alphabet.set_of(l))
    }

    /// Whether distinct blocks have distinct sets.
    pub fn is_injective(&self) -> bool {
        self.alphabet.len() == self.table.len()
    }

    /// The sliding block code on a finite word: one letter per window of
    /// length 2ℓ.
    pub fn apply(&self, word: &[Letter]) -> Result<Vec<u32>> {
        word.windows(2 * self.ell)
            .map(|w| {
                self.letter_of(w)
                    .ok_or_else(|| Error::Invalid(format!("{w:?} is not a factor of the characteristic word")))
            })
            .collect()
    }

    /// `∂[n]` for `n > ℓ` through the code.
    pub fn boundary_set(&self, prefix: &[Letter], n: usize) -> Result<&BoundarySet> {
        if n <= self.ell {
            return Err(Error::Invalid(format!("the block code covers n > ℓ = {}", self.ell)));
        }
        let block = prefix
            .get(n - self.ell - 1..n + self.ell - 1)
            .ok_or_else(|| Error::Invalid(format!("prefix too short for index {n}")))?;
        self.set_of(block)
            .ok_or_else(|| Error::Invalid(format!("{block:?} is not a factor of the characteristic word")))
    }
}

/// Derives the block code from the window oracle run on a prefix of length
/// `scan_len` of the characteristic word, then checks that it is well
/// defined (a block never meets two sets), total (all `2ℓ + 1` blocks
/// occur) and, for `ℓ ≥ 2`, injective.
pub fn block_code_table(slope: &Slope, ell: usize, scan_len: usize) -> Result<BlockCode> {
    if ell == 0 {
        return Err(Error::Invalid("ℓ must be positive".into()));
    }
    let prefix = slope.characteristic_prefix(scan_len)?;
    let width = 2 * ell;
    // scan positions until every block has been seen, then as far again
    let mut seen = std::collections::BTreeSet::new();
    let mut complete = None;
    for (m, w) in prefix.windows(width).enumerate() {
        seen.insert(w);
        if seen.len() == width + 1 {
            complete = Some(m);
            break;
        }
    }
    let complete = complete.ok_or_else(|| {
        Error::Validation(format!(
            "only {} of the {} blocks of length {width} occur in a prefix of length {scan_len}",
            seen.len(),
            width + 1
        ))
    })?;
    let last_m = (2 * complete + 64).min(scan_len / 4);
    let word = InfiniteWord::explicit("characteristic", vec!["0".into(), "1".into()], prefix.clone());
    let sets = boundary_sets(&word, ell, ell + 1..=ell + 1 + last_m, PrefixPolicy::Fixed(scan_len))?;
    let mut table = BTreeMap::new();
    let mut alphabet = BoundaryAlphabet::new();
    for (m, set) in sets.sets.iter().enumerate() {
        let letter = alphabet.intern(set);
        let block = prefix[m..m + width].to_vec();
        match table.insert(block.clone(), letter) {
            Some(previous) if previous != letter => {
                return Err(Error::Validation(format!(
                    "block {block:?} meets two boundary sets (at n = {})",
                    m + ell + 1
                )))
            }
            _ => {}
        }
    }
    let code = BlockCode { ell, table, alphabet, scanned: scan_len };
    if code.table.len() != width + 1 {
        return Err(Error::Validation(format!("block code covers {} blocks", code.table.len())));
    }
    if ell >= 2 && !code.is_injective() {
        return Err(Error::Validation("distinct blocks share a boundary set".into()));
    }
    Ok(code)
}

/// `T∂ = h(s_{β,β})`: the shifted boundary sequence as a morphic image of
/// the characteristic word of the derived slope `β`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryMorphism {
    /// Smallest `k` with `|S_k S_{k−1}| ≥ 2ℓ + 1`.
    pub k: usize,
    /// `β = [0; a_{k+1} + 1, a_{k+2}, …]`.
    pub beta: ContinuedFraction,
    /// `X = pref_{2ℓ−1}(S_k S_{k−1})`.
    pub overlap: Vec<Letter>,
    /// `h: 0 ↦ B(S_k X), 1 ↦ B(S_{k−1} X)`.
    pub morphism: Morphism,
}

impl BoundaryMorphism {
    /// Renders `h` with letters written as numbers.
    pub fn render(&self) -> String {
        let names: Vec<String> = (0..self.morphism.target_size().max(2)).map(|i| i.to_string()).collect();
        self.morphism.render(&names[..2], &names)
    }

    /// Compares `h(s_{β,β})` with the block code applied to `s_{α,α}` on
    /// `len` letters.
    pub fn validate(&self, slope: &Slope, code: &BlockCode, len: usize) -> Result<()> {
        let shortest = self.morphism.images().iter().map(Vec::len).min().unwrap_or(0).max(1);
        let source = self.beta.characteristic_prefix(len / shortest + 2)?;
        let image = self.morphism.apply(&source);
        let expected = code.apply(&slope.characteristic_prefix(len + 2 * code.ell())?)?;
        if image.len() < len {
            return Err(Error::Validation("morphic image shorter than requested".into()));
        }
        match (0..len).find(|&i| image[i] as u32 != expected[i]) {
            None => Ok(()),
            Some(i) => Err(Error::Validation(format!("h(s_β) and the shifted boundary word differ at letter {i}"))),
        }
    }
}

/// Builds `h` from the standard words of the slope and its block code.
pub fn morphism_h(slope: &Slope, code: &BlockCode) -> Result<BoundaryMorphism> {
    let ell = code.ell();
    if ell < 2 {
        return Err(Error::Invalid("the morphic presentation needs ℓ ≥ 2".into()));
    }
    let cf = slope.expansion();
    let mut k = 1;
    let words = loop {
        let words = cf.standard_words(k)?;
        // words[i] = S_{i−1}
        if words[k + 1].len() + words[k].len() > 2 * ell {
            break words;
        }
        k += 1;
    };
    let (current, previous) = (&words[k + 1], &words[k]);
    let joined: Vec<Letter> = current.iter().chain(previous).copied().collect();
    let overlap = joined[..2 * ell - 1].to_vec();
    let swapped: Vec<Letter> = previous.iter().chain(current).copied().collect();
    if swapped[..2 * ell - 1] != overlap[..] {
        return Err(Error::Validation("S_k S_{k−1} and S_{k−1} S_k disagree on the overlap".into()));
    }
    let image = |w: &[Letter]| -> Result<Vec<Letter>> {
        let extended: Vec<Letter> = w.iter().chain(&overlap).copied().collect();
        code.apply(&extended)?
            .into_iter()
            .map(|l| Letter::try_from(l).map_err(|_| Error::Invalid("too many boundary letters".into())))
            .collect()
    };
    let morphism = Morphism::new(vec![image(current)?, image(previous)?]);
    Ok(BoundaryMorphism { k, beta: cf.derived(k)?, overlap, morphism })
}

/// Whether the first boundary set `∂[ℓ]` recurs, decided three ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstLetterReport {
    /// Window length ℓ.
    pub ell: usize,
    /// `0^{2ℓ}` or `1^{2ℓ}` occurs in the scanned prefix.
    pub by_runs: bool,
    /// `2ℓ‖α‖ < 1`.
    pub by_norm: bool,
    /// Occurrences of `∂[ℓ]` among `∂[ℓ], …, ∂[ℓ + scanned − 1]`.
    pub occurrences: usize,
    /// Number of indices examined.
    pub scanned: usize,
}

impl FirstLetterReport {
    /// The verdict (recurrent when the runs occur).
    pub fn recurrent(&self) -> bool {
        self.by_runs
    }

    /// Whether the three criteria agree (a recurrent first set must show
    /// up again in the scan; otherwise it occurs exactly once).
    pub fn consistent(&self) -> bool {
        self.by_runs == self.by_norm && (if self.by_runs { self.occurrences >= 2 } else { self.occurrences == 1 })
    }
}

/// Decides whether `∂[ℓ]` occurs infinitely often, cross-checking the run
/// criterion on a prefix of length `scan_len`, the norm criterion, and a
/// count over `scan_len` boundary sets computed from rotations.
pub fn first_letter_recurrence(slope: &Slope, ell: usize, scan_len: usize) -> Result<FirstLetterReport> {
    let prefix = slope.characteristic_prefix(scan_len)?;
    let run = 2 * ell;
    let by_runs = max_power_in(&prefix, &[0]).exponent() >= run || max_power_in(&prefix, &[1]).exponent() >= run;
    let by_norm = slope.has_run(run)?;
    let partition = FactorPartition::new(slope, ell)?;
    let first = partition.boundary_first()?;
    let mut occurrences = 1;
    for n in ell + 1..ell + scan_len {
        if partition.boundary_set(n)? == first {
            occurrences += 1;
        }
    }
    Ok(FirstLetterReport { ell, by_runs, by_norm, occurrences, scanned: scan_len })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_one_block_code() {
        let code = block_code_table(&Slope::golden(), 1, 1 << 12).unwrap();
        let a = BoundarySet::parse("(0,0),(0,1),(1,0)").unwrap();
        let b = BoundarySet::parse("(0,0),(0,1),(1,0),(1,1)").unwrap();
        assert_eq!(code.set_of(&[0, 0]), Some(&a));
        assert_eq!(code.set_of(&[0, 1]), Some(&b));
        assert_eq!(code.set_of(&[1, 0]), Some(&b));
        assert!(!code.is_injective());
    }

    #[test]
    fn golden_two_block_code_is_injective() {
        let code = block_code_table(&Slope::golden(), 2, 1 << 12).unwrap();
        assert!(code.is_injective());
        assert_eq!(code.alphabet().len(), 5);
    }

    #[test]
    fn block_code_reproduces_the_boundary_word() {
        let slope = Slope::golden();
        let code = block_code_table(&slope, 3, 1 << 13).unwrap();
        let prefix = slope.characteristic_prefix(4000).unwrap();
        let sets = boundary_sets(&InfiniteWord::fibonacci(), 3, 4..=1500, PrefixPolicy::Fixed(1 << 15)).unwrap();
        for (i, set) in sets.sets.iter().enumerate() {
            assert_eq!(code.boundary_set(&prefix, 4 + i).unwrap(), set);
        }
    }

    #[test]
    fn golden_morphism_is_validated() {
        let slope = Slope::golden();
        let code = block_code_table(&slope, 2, 1 << 12).unwrap();
        let h = morphism_h(&slope, &code).unwrap();
        assert_eq!(&h.beta, slope.expansion());
        h.validate(&slope, &code, 3000).unwrap();
    }

    #[test]
    fn first_letter_reports() {
        let golden = first_letter_recurrence(&Slope::golden(), 2, 3000).unwrap();
        assert!(!golden.recurrent() && golden.consistent() && golden.occurrences == 1);
        let one = first_letter_recurrence(&Slope::golden(), 1, 3000).unwrap();
        assert!(one.recurrent() && one.consistent());
    }
}
