//! Boundary sequences of automatic words as automata with output.
//!
//! For factors `u, v` of length ℓ, the pair `(u, v)` lies in the boundary
//! set at `n` iff `∃i (x[i..i+ℓ) = u ∧ x[i+n..i+n+ℓ) = v)`.  Each pair
//! formula compiles to a one-track automaton in the free variable `n`; the
//! product of all of them, with outputs = the set of satisfied pairs, is the
//! boundary DFAO.  Indices `n < ℓ` (where prefix and suffix overlap in a
//! different way) output pre-letters `#`, `$`, ….

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use super::ast::{Formula, Term};
use super::compile::Compiler;
use crate::automata::{Dfa, Dfao, Direction, StateId, Symbol};
use crate::boundary::{letter_name, pre_letter_name, BoundaryAlphabet, BoundarySet};
use crate::error::{Error, Result};
use crate::numeration::Ans;
use crate::words::Letter;

/// How far naming by first appearance scans before naming the remaining
/// sets in a fixed order.
const NAMING_SCAN_LIMIT: u64 = 1 << 20;

/// Output name of states reached only on invalid representations.
pub const INVALID_OUTPUT: &str = "_";

/// A compiled boundary DFAO with its letter legend.
#[derive(Clone, Debug)]
pub struct CompiledBoundary {
    /// Boundary length ℓ.
    pub ell: usize,
    /// Minimal msd DFAO over the single-track alphabet; outputs are the
    /// pre-letters, the boundary letters `a, b, …` (first appearance from
    /// `n = ℓ`) and [`INVALID_OUTPUT`].
    pub dfao: Dfao,
    /// Boundary sets by letter.
    pub alphabet: BoundaryAlphabet,
    /// Length-ℓ factors of the word (as letter indices).
    pub factors: Vec<Vec<Letter>>,
    /// Letter names of the underlying word.
    pub word_letters: Vec<String>,
    /// Number of pair automata that were compiled.
    pub pairs_compiled: usize,
    /// Size of the product before minimization.
    pub product_states: usize,
}

impl CompiledBoundary {
    /// Output name at index `n`.
    pub fn letter_at(&self, ans: &Ans, n: u64) -> Result<String> {
        Ok(self.dfao.eval_name(&ans.padded_rep(n, 0)?).to_string())
    }

    /// Boundary set at `n ≥ ℓ`.
    pub fn set_at(&self, ans: &Ans, n: u64) -> Result<&BoundarySet> {
        let name = self.letter_at(ans, n)?;
        let index = (0..self.alphabet.len())
            .find(|&i| letter_name(i) == name)
            .ok_or_else(|| Error::Invalid(format!("index {n} has no boundary set (output `{name}`)")))?;
        Ok(self.alphabet.set_of(index as u32))
    }

    /// Output names for `n` in `0..len`.
    pub fn word(&self, ans: &Ans, len: u64) -> Result<Vec<String>> {
        (0..len).map(|n| self.letter_at(ans, n)).collect()
    }

    /// Legend lines `a = {(…,…),…}`.
    pub fn legend(&self) -> Vec<String> {
        self.alphabet.legend(&self.word_letters)
    }
}

/// `x[base + j] = u_j` for every `j`.
fn factor_at(seq: &str, base: &Term, u: &[Letter], letters: &[String]) -> Formula {
    Formula::all(
        u.iter()
            .enumerate()
            .map(|(j, &a)| Formula::seq_is(seq, base.clone().offset(j as u64), &letters[a as usize]))
            .collect(),
    )
}

/// The pair formula in free variable `n`.
pub fn pair_formula(seq: &str, u: &[Letter], v: &[Letter], letters: &[String]) -> Formula {
    let i = Term::var("i");
    let shifted = Term::var("i").plus(Term::var("n"));
    Formula::Exists(
        vec!["i".into()],
        Box::new(factor_at(seq, &i, u, letters).and(factor_at(seq, &shifted, v, letters))),
    )
}

/// Length-ℓ factors of the sequence bound to `seq`, decided one candidate
/// at a time.
pub fn factors(compiler: &Compiler, seq: &str, ell: usize) -> Result<Vec<Vec<Letter>>> {
    let letters = compiler.sequence_letters(seq)?.to_vec();
    let k = letters.len();
    let total = k.checked_pow(ell as u32).ok_or_else(|| Error::Overflow("enumerating factors".into()))?;
    let candidates: Vec<Vec<Letter>> = (0..total)
        .map(|mut code| {
            let mut w = vec![0 as Letter; ell];
            for slot in w.iter_mut().rev() {
                *slot = (code % k) as Letter;
                code /= k;
            }
            w
        })
        .collect();
    let found = candidates
        .par_iter()
        .map(|u| {
            let f = Formula::Exists(vec!["i".into()], Box::new(factor_at(seq, &Term::var("i"), u, &letters)));
            compiler.decide(&f)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(candidates.into_iter().zip(found).filter_map(|(u, ok)| ok.then_some(u)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Label {
    Pre(usize),
    Pairs(Vec<usize>),
}

/// Compiles the ℓ-boundary DFAO of the sequence bound to `seq`.
pub fn boundary_dfao(compiler: &Compiler, seq: &str, ell: usize) -> Result<CompiledBoundary> {
    if ell == 0 {
        return Err(Error::Invalid("boundary length must be at least 1".into()));
    }
    if !compiler.has_adder() {
        return Err(Error::Invalid(format!(
            "boundary formulas need addition; numeration {} has no validated adder installed",
            compiler.ans().name()
        )));
    }
    let letters = compiler.sequence_letters(seq)?.to_vec();
    let factors = factors(compiler, seq, ell)?;
    let pairs: Vec<(usize, usize)> = (0..factors.len()).flat_map(|a| (0..factors.len()).map(move |b| (a, b))).collect();
    let pair_dfas = pairs
        .par_iter()
        .map(|&(a, b)| {
            compiler.compile(&pair_formula(seq, &factors[a], &factors[b], &letters)).map(|p| p.dfa().clone())
        })
        .collect::<Result<Vec<Dfa>>>()?;
    let constants = (0..ell as u64).map(|j| compiler.constant(j)).collect::<Result<Vec<Dfa>>>()?;

    let ans = compiler.ans();
    let machines: Vec<&Dfa> = pair_dfas.iter().chain(constants.iter()).collect();
    let start: Vec<StateId> = machines.iter().map(|m| m.initial()).collect();
    let (product, keys) = Dfa::explore(
        ans.track_alphabet(1),
        Direction::Msd,
        start,
        compiler.budget(),
        |qs: &Vec<StateId>, s| machines.iter().zip(qs).map(|(m, &q)| m.next(q, s)).collect(),
        |_| false,
    )?;
    let label_of = |qs: &Vec<StateId>| -> Label {
        let (pair_states, const_states) = qs.split_at(pair_dfas.len());
        if let Some(j) = const_states.iter().zip(&constants).position(|(&q, m)| m.is_accepting(q)) {
            return Label::Pre(j);
        }
        Label::Pairs(
            pair_states
                .iter()
                .zip(&pair_dfas)
                .enumerate()
                .filter(|(_, (&q, m))| m.is_accepting(q))
                .map(|(i, _)| i)
                .collect(),
        )
    };
    let labels: Vec<Label> = keys.iter().map(label_of).collect();

    // Labels reachable on valid representations.
    let valid = ans.valid_track();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(product.initial(), valid.initial())]);
    seen.insert((product.initial(), valid.initial()));
    let mut live = BTreeSet::new();
    let coaccessible = valid.coaccessible();
    while let Some((p, v)) = queue.pop_front() {
        if valid.is_accepting(v) {
            live.insert(labels[p as usize].clone());
        }
        for s in 0..product.alphabet().size() as Symbol {
            let next = (product.next(p, s), valid.next(v, s));
            if coaccessible[next.1 as usize] && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }

    // Name boundary letters by first appearance from n = ℓ.
    let mut names: BTreeMap<Label, String> = BTreeMap::new();
    for j in 0..ell {
        names.insert(Label::Pre(j), pre_letter_name(j));
    }
    let pending = |names: &BTreeMap<Label, String>| live.iter().filter(|l| !names.contains_key(*l)).count();
    let mut alphabet = BoundaryAlphabet::new();
    let mut intern = |label: &Label, names: &mut BTreeMap<Label, String>| {
        if let Label::Pairs(members) = label {
            let set = BoundarySet::new(
                ell,
                ell,
                members.iter().map(|&i| (factors[pairs[i].0].clone(), factors[pairs[i].1].clone())).collect(),
            );
            let letter = alphabet.intern(&set);
            names.insert(label.clone(), letter_name(letter as usize));
        }
    };
    let mut n = ell as u64;
    while pending(&names) > 0 && n < NAMING_SCAN_LIMIT {
        let state = product.run(&ans.padded_rep(n, 0)?);
        let label = &labels[state as usize];
        if !names.contains_key(label) {
            intern(label, &mut names);
        }
        n += 1;
    }
    for label in live.iter() {
        if !names.contains_key(label) {
            intern(label, &mut names);
        }
    }

    let mut output_names: Vec<String> = Vec::new();
    let mut outputs = Vec::with_capacity(labels.len());
    for label in &labels {
        let name = names.get(label).cloned().unwrap_or_else(|| INVALID_OUTPUT.to_string());
        let index = match output_names.iter().position(|o| *o == name) {
            Some(i) => i,
            None => {
                output_names.push(name);
                output_names.len() - 1
            }
        };
        outputs.push(index as u32);
    }
    let product_states = product.num_states();
    let dfao = Dfao::new(product, outputs, output_names)?.canonicalize();
    Ok(CompiledBoundary {
        ell,
        dfao,
        alphabet,
        factors,
        word_letters: letters,
        pairs_compiled: pairs.len(),
        product_states,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::boundary::{boundary_sets, PrefixPolicy};
    use crate::logic::sequences::builtin_sequence;
    use crate::numeration::{adder_builtin, adder_explore, DEFAULT_CARRY_BOUND};
    use crate::words::InfiniteWord;

    fn compiler_for(name: &str) -> Compiler {
        let (ans, dfao) = builtin_sequence(name).unwrap();
        let adder = match ans.positional() {
            Some(sys) if sys.name() == "base:2" => adder_builtin("base:2").unwrap(),
            Some(sys) => adder_explore(sys, DEFAULT_CARRY_BOUND, Direction::Msd).unwrap(),
            None => unreachable!(),
        };
        let mut c = Compiler::new(Arc::new(ans)).with_adder(&adder).unwrap();
        c.add_sequence("X", &dfao).unwrap();
        c
    }

    fn agrees_with_oracle(name: &str, ell: usize, upto: usize) {
        let c = compiler_for(name);
        let compiled = boundary_dfao(&c, "X", ell).unwrap();
        let word = InfiniteWord::builtin(name).unwrap();
        let oracle = boundary_sets(&word, ell, ell..=upto, PrefixPolicy::doubling_for(upto, 1 << 20)).unwrap();
        assert!(oracle.stabilized);
        for (k, set) in oracle.sets.iter().enumerate() {
            let n = (ell + k) as u64;
            let ours = compiled.set_at(c.ans(), n).unwrap();
            assert_eq!(ours, set, "{name} ℓ={ell} n={n}");
        }
        for j in 0..ell as u64 {
            assert_eq!(compiled.letter_at(c.ans(), j).unwrap(), pre_letter_name(j as usize));
        }
    }

    #[test]
    fn thue_morse_matches_oracle() {
        agrees_with_oracle("thue-morse", 1, 2000);
        agrees_with_oracle("thue-morse", 2, 2000);
    }

    #[test]
    fn fibonacci_matches_oracle() {
        agrees_with_oracle("fibonacci", 1, 2000);
        agrees_with_oracle("fibonacci", 2, 2000);
    }

    #[test]
    fn fibonacci_one_boundary_word() {
        let c = compiler_for("fibonacci");
        let compiled = boundary_dfao(&c, "X", 1).unwrap();
        let word: String = compiled.word(c.ans(), 30).unwrap()[1..].concat();
        assert_eq!(word, "abbabbbbabbabbbbabbbbabbabbbb");
    }
}
