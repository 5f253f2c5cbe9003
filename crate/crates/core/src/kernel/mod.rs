//! S-kernels: suffix subsequences `x∘s`, bounded kernel enumeration, and
//! DFAO synthesis from a finite kernel.
//!
//! For a suffix `s`, `(x∘s)[n] = x[val_S(p_{s,n} s)]` where `p_{s,n}` is the
//! `n`-th word of the quotient `L s⁻¹ = {u : us ∈ L}` in genealogical order.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::automata::{Dfa, Dfao, Direction, RadixEnumerator, StateId, Symbol};
use crate::error::{Error, Result};
use crate::numeration::Ans;
use crate::words::{InfiniteWord, Letter};

/// Default number of subsequence terms compared when grouping suffixes.
pub const DEFAULT_CMP_PREFIX: usize = 2048;

/// The quotient `L s⁻¹` of the numeration language: same automaton with
/// accepting states `{q : δ(q, s) ∈ F}`, canonicalized.
pub fn quotient_language(ans: &Ans, suffix: &[Symbol]) -> Dfa {
    let lang = ans.language();
    let accepting = (0..lang.num_states() as StateId).map(|q| lang.is_accepting(lang.run_from(q, suffix))).collect();
    lang.with_accepting(accepting).canonicalize()
}

/// A kernel element `x∘s`, materialized up to a length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelElement {
    /// The suffix `s` (language letters).
    pub suffix: Vec<Symbol>,
    /// `μ_s(0), μ_s(1), …` (all of them when the quotient is finite).
    pub index_map: Vec<u64>,
    /// `(x∘s)[n] = x[μ_s(n)]` for the same range.
    pub subsequence: Vec<Letter>,
    /// Whether the quotient `L s⁻¹` (hence the element) is finite.
    pub finite: bool,
}

/// Index map `μ_s(0..len)` (shorter when the quotient is finite).
pub fn index_map(ans: &Ans, suffix: &[Symbol], len: usize) -> Result<(Vec<u64>, bool)> {
    let quotient = quotient_language(ans, suffix);
    if quotient.is_empty() {
        return Err(Error::Invalid(format!(
            "no word of {} ends with {}",
            ans.name(),
            ans.language().alphabet().render_word(suffix)
        )));
    }
    let enumerator = RadixEnumerator::new(quotient);
    let finite = !enumerator.is_infinite();
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let mut word = match enumerator.unrank(n as u128) {
            Ok(w) => w,
            Err(Error::IndexOutOfRange { .. }) if finite => break,
            Err(e) => return Err(e),
        };
        word.extend_from_slice(suffix);
        out.push(ans.val(&word)?);
    }
    Ok((out, finite))
}

/// `x∘s` materialized on `len` terms.
pub fn suffix_subsequence(w: &InfiniteWord, ans: &Ans, suffix: &[Symbol], len: usize) -> Result<KernelElement> {
    let (index_map, finite) = index_map(ans, suffix, len)?;
    let max = index_map.iter().copied().max().map_or(0, |m| m as usize + 1);
    let subsequence = w.with_prefix(max, |p| index_map.iter().map(|&i| p[i as usize]).collect())?;
    Ok(KernelElement { suffix: suffix.to_vec(), index_map, subsequence, finite })
}

/// Result of a bounded kernel enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    /// One representative element per class (the genealogically first
    /// suffix of the class), in order of discovery.
    pub classes: Vec<KernelElement>,
    /// `(suffix, class id)` for every suffix examined.
    pub membership: Vec<(Vec<Symbol>, usize)>,
    /// Number of classes known after each suffix length `0..=max_len`.
    pub classes_by_length: Vec<usize>,
    /// Whether the last suffix length produced no new class.
    pub stabilized: bool,
    /// Terms compared per element.
    pub cmp_prefix_len: usize,
}

impl KernelReport {
    /// Class id of a suffix, if it was examined.
    pub fn class_of(&self, suffix: &[Symbol]) -> Option<usize> {
        self.membership.iter().find(|(s, _)| s == suffix).map(|&(_, c)| c)
    }
}

/// Groups all suffixes `s` with `|s| ≤ max_suffix_len` and `L s⁻¹ ≠ ∅` by
/// (quotient language, first `cmp_prefix_len` terms of `x∘s`).  Finite
/// elements are compared by their full content.
pub fn kernel_enumerate(
    w: &InfiniteWord,
    ans: &Ans,
    max_suffix_len: usize,
    cmp_prefix_len: usize,
) -> Result<KernelReport> {
    let k = ans.language().alphabet().size() as Symbol;
    let mut classes: Vec<KernelElement> = Vec::new();
    let mut keys: HashMap<(Dfa, Vec<Letter>), usize> = HashMap::new();
    let mut membership = Vec::new();
    let mut classes_by_length = Vec::new();
    let mut layer: Vec<Vec<Symbol>> = vec![Vec::new()];
    let mut new_in_last = 0;
    for len in 0..=max_suffix_len {
        let mut next_layer = Vec::new();
        new_in_last = 0;
        for s in &layer {
            let quotient = quotient_language(ans, s);
            if quotient.is_empty() {
                continue;
            }
            let element = suffix_subsequence(w, ans, s, cmp_prefix_len)?;
            let key = (quotient, element.subsequence.clone());
            let id = match keys.get(&key) {
                Some(&id) => id,
                None => {
                    keys.insert(key, classes.len());
                    classes.push(element);
                    new_in_last += 1;
                    classes.len() - 1
                }
            };
            membership.push((s.clone(), id));
            if len < max_suffix_len {
                for c in 0..k {
                    let mut cs = vec![c];
                    cs.extend_from_slice(s);
                    next_layer.push(cs);
                }
            }
        }
        classes_by_length.push(classes.len());
        layer = next_layer;
    }
    Ok(KernelReport { classes, membership, classes_by_length, stabilized: new_in_last == 0, cmp_prefix_len })
}

/// Builds the DFAO reading representations least significant letter first:
/// states are kernel classes, the class of `s` moves on `c` to the class of
/// `cs`, and outputs `(x∘s)[0]`.  The automaton is converted to msd reading
/// and minimized, then validated against `w` on `validate_len` letters.
///
/// Needs every class representative's one-letter extensions to have been
/// examined (enumerate to depth ≥ 1 beyond the deepest representative).
pub fn dfao_from_kernel(report: &KernelReport, w: &InfiniteWord, ans: &Ans, validate_len: usize) -> Result<Dfao> {
    if !report.stabilized {
        return Err(Error::Validation("kernel enumeration has not stabilized; raise the suffix depth".into()));
    }
    let k = ans.language().alphabet().size();
    let n = report.classes.len();
    // sink class for suffixes that end no word of L
    let sink = n as StateId;
    let mut delta = vec![sink; (n + 1) * k];
    let mut defined = vec![false; (n + 1) * k];
    for (s, id) in &report.membership {
        for c in 0..k as Symbol {
            let mut cs = vec![c];
            cs.extend_from_slice(s);
            let target = match report.class_of(&cs) {
                Some(t) => t as StateId,
                None if quotient_language(ans, &cs).is_empty() => sink,
                None => continue,
            };
            let slot = id * k + c as usize;
            if defined[slot] && delta[slot] != target {
                return Err(Error::Validation(format!(
                    "kernel classes are inconsistent at suffix {}; raise the comparison length",
                    ans.language().alphabet().render_word(s)
                )));
            }
            delta[slot] = target;
            defined[slot] = true;
        }
    }
    for id in 0..n {
        if (0..k).any(|c| !defined[id * k + c]) {
            return Err(Error::Validation(format!("class {id} has unexamined extensions; raise the suffix depth")));
        }
    }
    for c in 0..k {
        delta[n * k + c] = sink;
    }
    let mut outputs: Vec<u32> =
        report.classes.iter().map(|e| e.subsequence.first().copied().unwrap_or(0) as u32).collect();
    outputs.push(0);
    let lang_alphabet = ans.language().alphabet().clone();
    let base = Dfa::new(lang_alphabet, Direction::Lsd, 0, vec![false; n + 1], delta)?;
    let names = w.letters().to_vec();
    let lsd = Dfao::new(base, outputs, names)?;
    let mut msd = lsd_to_msd(&lsd)?;
    if let Some(pad) = ans.positional().and(ans.language().alphabet().letter_index("0").ok()) {
        msd = saturate_leading_padding(&msd, pad)?;
    }
    // validation
    let ans_arc = Arc::new(ans.clone());
    let regenerated = InfiniteWord::automatic("kernel-dfao", ans_arc, Arc::new(msd.clone()))?;
    let expected = w.prefix(validate_len)?;
    let got = regenerated.prefix(validate_len)?;
    if let Some(pos) = (0..validate_len).find(|&i| expected[i] != got[i]) {
        return Err(Error::Validation(format!(
            "synthesized DFAO disagrees with the word at index {pos}; raise the comparison length"
        )));
    }
    Ok(msd)
}

/// Converts a DFAO reading least significant letter first into one reading
/// most significant first: after reading `u`, the state is the map
/// `q ↦ δ(q, reverse(u))`, so `f_{uc}(q) = f_u(δ(q, c))`; the output is that
/// of `f_u(initial)`.  The result is minimized.
pub fn lsd_to_msd(dfao: &Dfao) -> Result<Dfao> {
    let base = dfao.base();
    let n = base.num_states();
    let identity: Vec<StateId> = (0..n as StateId).collect();
    let init = base.initial();
    let (dfa, maps) = Dfa::explore(
        base.alphabet().clone(),
        Direction::Msd,
        identity,
        1 << 20,
        |f: &Vec<StateId>, c| (0..n as StateId).map(|q| f[base.next(q, c) as usize]).collect(),
        |_| false,
    )?;
    let outputs = maps.iter().map(|f| dfao.output(f[init as usize])).collect();
    Ok(Dfao::new(dfa, outputs, dfao.output_names().to_vec())?.canonicalize())
}

/// Makes an msd DFAO ignore leading padding letters: a fresh initial state
/// copies the old initial state's moves except that `pad` loops on it.
/// Words without leading padding are read exactly as before.
pub fn saturate_leading_padding(dfao: &Dfao, pad: Symbol) -> Result<Dfao> {
    let base = dfao.base();
    let n = base.num_states();
    let k = base.alphabet().size();
    let mut delta = base.delta().to_vec();
    let fresh = n as StateId;
    for c in 0..k as Symbol {
        delta.push(if c == pad { fresh } else { base.next(base.initial(), c) });
    }
    let mut outputs = dfao.outputs().to_vec();
    outputs.push(dfao.output(base.initial()));
    let dfa = Dfa::new(base.alphabet().clone(), base.direction(), fresh, vec![false; n + 1], delta)?;
    Ok(Dfao::new(dfa, outputs, dfao.output_names().to_vec())?.canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::SetGenerator;

    fn fib_rows() -> Vec<(&'static str, Vec<u64>)> {
        vec![
            ("", vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9]),
            ("0", vec![2, 3, 5, 7, 8, 10, 11, 13, 15]),
            ("1", vec![1, 4, 6, 9, 12, 14, 17, 19, 22, 25]),
            ("01", vec![4, 6, 9, 12, 14, 17, 19, 22, 25]),
            ("00", vec![3, 5, 8, 11, 13, 16, 18, 21, 24]),
            ("10", vec![2, 7, 10, 15, 20, 23, 28, 31, 36, 41]),
        ]
    }

    #[test]
    fn fibonacci_index_maps() {
        let ans = Ans::builtin("fibonacci").unwrap();
        for (s, expected) in fib_rows() {
            let suffix = ans.language().alphabet().parse_word(s).unwrap();
            let (map, finite) = index_map(&ans, &suffix, expected.len()).unwrap();
            assert!(!finite);
            assert_eq!(map, expected, "suffix {s:?}");
        }
    }

    #[test]
    fn thue_morse_kernel_and_resynthesis() {
        let ans = Ans::builtin("base:2").unwrap();
        let tm = InfiniteWord::thue_morse();
        let report = kernel_enumerate(&tm, &ans, 6, 512).unwrap();
        assert!(report.stabilized);
        // t, its complement, and their shifts n ↦ 2n+2 coming from the
        // quotient 0⁻¹ that excludes the empty prefix
        assert_eq!(report.classes.len(), 4);
        let dfao = dfao_from_kernel(&report, &tm, &ans, 4096).unwrap();
        assert_eq!(dfao.num_states(), 2);
    }

    #[test]
    fn fibonacci_numbers_characteristic_word() {
        let sys = Arc::new(crate::numeration::PositionalSystem::fibonacci());
        let ans = Ans::builtin("fibonacci").unwrap();
        let w = InfiniteWord::characteristic("fib-numbers", SetGenerator::Basis(sys));
        let report = kernel_enumerate(&w, &ans, 6, 512).unwrap();
        let dfao = dfao_from_kernel(&report, &w, &ans, 10_000).unwrap();
        // rep ∈ 10*: start, after 1, after 10*, dead
        assert!(dfao.num_states() <= 4);
    }

    #[test]
    fn constant_word_single_state() {
        let ans = Ans::builtin("base:2").unwrap();
        let w = InfiniteWord::periodic("zero", vec![], vec![0]).unwrap();
        let report = kernel_enumerate(&w, &ans, 3, 64).unwrap();
        let dfao = dfao_from_kernel(&report, &w, &ans, 1000).unwrap();
        assert_eq!(dfao.num_states(), 1);
    }

    #[test]
    fn empty_quotient_rejected() {
        let ans = Ans::astar_bstar();
        assert!(index_map(&ans, &[1, 0], 3).is_err());
    }
}
