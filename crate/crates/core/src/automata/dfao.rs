//! Deterministic automata with output.

use std::collections::{HashMap, VecDeque};

use super::alphabet::{Alphabet, Direction, Symbol};
use super::dfa::{minimize_labelled, Dfa, StateId};
use crate::error::{Error, Result};

/// A complete deterministic automaton with one output letter per state.
///
/// The accepting set of the underlying automaton is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    base: Dfa,
    outputs: Vec<u32>,
    output_names: Vec<String>,
}

impl Dfao {
    /// Attaches outputs (indices into `output_names`) to an automaton.
    pub fn new(base: Dfa, outputs: Vec<u32>, output_names: Vec<String>) -> Result<Dfao> {
        if outputs.len() != base.num_states() {
            return Err(Error::Invalid(format!("{} outputs for {} states", outputs.len(), base.num_states())));
        }
        if let Some(&bad) = outputs.iter().find(|&&o| o as usize >= output_names.len()) {
            return Err(Error::Invalid(format!("output index {bad} has no name")));
        }
        Ok(Dfao { base, outputs, output_names })
    }

    /// Builds a DFAO from named states with partial transitions given as
    /// `(from, letter, to)` name triples; every state outputs its own name.
    /// Missing moves go to an added sink whose output is `sink_output`.
    pub fn from_named_table(
        alphabet: Alphabet,
        direction: Direction,
        states: &[&str],
        transitions: &[(&str, &str, &str)],
        sink_output: &str,
    ) -> Result<Dfao> {
        let id = |name: &str| -> Result<StateId> {
            states
                .iter()
                .position(|s| *s == name)
                .map(|i| i as StateId)
                .ok_or_else(|| Error::Invalid(format!("unknown state `{name}`")))
        };
        let mut triples = Vec::new();
        for &(p, a, q) in transitions {
            triples.push((id(p)?, alphabet.letter_index(a)?, id(q)?));
        }
        let base = Dfa::from_partial(alphabet, direction, states.len(), 0, &[], &triples)?;
        let mut names: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let sink = match names.iter().position(|n| n == sink_output) {
            Some(i) => i as u32,
            None => {
                names.push(sink_output.to_string());
                (names.len() - 1) as u32
            }
        };
        let mut outputs: Vec<u32> = (0..states.len() as u32).collect();
        outputs.push(sink);
        Dfao::new(base, outputs, names)
    }

    /// Underlying automaton.
    pub fn base(&self) -> &Dfa {
        &self.base
    }

    /// Input alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        self.base.alphabet()
    }

    /// Number of states.
    pub fn num_states(&self) -> usize {
        self.base.num_states()
    }

    /// Output letter index of a state.
    pub fn output(&self, q: StateId) -> u32 {
        self.outputs[q as usize]
    }

    /// Output indices by state.
    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    /// Output letter names.
    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    /// Output letter index after reading `word` from the initial state.
    pub fn eval(&self, word: &[Symbol]) -> u32 {
        self.output(self.base.run(word))
    }

    /// Output letter name after reading `word`.
    pub fn eval_name(&self, word: &[Symbol]) -> &str {
        &self.output_names[self.eval(word) as usize]
    }

    /// The automaton accepting the words whose output is `letter`.
    pub fn preimage(&self, letter: u32) -> Dfa {
        self.base.with_accepting(self.outputs.iter().map(|&o| o == letter).collect())
    }

    /// Minimal equivalent DFAO, states renumbered breadth-first.
    pub fn canonicalize(&self) -> Dfao {
        let (initial, delta, outputs) =
            minimize_labelled(self.base.initial(), self.alphabet().size(), self.base.delta(), &self.outputs);
        let n = outputs.len();
        let base = Dfa::new(self.alphabet().clone(), self.base.direction(), initial, vec![false; n], delta)
            .expect("minimization preserves well-formedness");
        Dfao { base, outputs, output_names: self.output_names.clone() }
    }

    /// Renames outputs through `map` (old index → new name), merging equal names.
    pub fn relabel_outputs<F: Fn(u32) -> String>(&self, map: F) -> Dfao {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let translate: Vec<u32> = (0..self.output_names.len() as u32)
            .map(|o| {
                let name = map(o);
                *index.entry(name.clone()).or_insert_with(|| {
                    names.push(name);
                    (names.len() - 1) as u32
                })
            })
            .collect();
        Dfao {
            base: self.base.clone(),
            outputs: self.outputs.iter().map(|&o| translate[o as usize]).collect(),
            output_names: names,
        }
    }

    /// Compares two DFAOs by output names on every word accepted by `domain`
    /// (all three over the same alphabet).  Returns a word on which they
    /// differ, or `None` if they agree on the whole domain.
    pub fn difference_on(&self, other: &Dfao, domain: &Dfa) -> Result<Option<Vec<Symbol>>> {
        self.alphabet().ensure_same(other.alphabet())?;
        self.alphabet().ensure_same(domain.alphabet())?;
        let k = self.alphabet().size();
        let start = (self.base.initial(), other.base.initial(), domain.initial());
        type Triple = (StateId, StateId, StateId);
        let mut parent: HashMap<Triple, Option<(Triple, Symbol)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        let live = domain.coaccessible();
        while let Some(t @ (p, q, d)) = queue.pop_front() {
            if domain.is_accepting(d)
                && self.output_names[self.output(p) as usize] != other.output_names[other.output(q) as usize]
            {
                let mut word = Vec::new();
                let mut cur = t;
                while let Some(Some((prev, s))) = parent.get(&cur) {
                    word.push(*s);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for s in 0..k as Symbol {
                let next = (self.base.next(p, s), other.base.next(q, s), domain.next(d, s));
                if live[next.2 as usize] && !parent.contains_key(&next) {
                    parent.insert(next, Some((t, s)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> Dfao {
        let a = Alphabet::tuples(&["0", "1"], 1, Some(0));
        let base = Dfa::new(a, Direction::Msd, 0, vec![false; 2], vec![0, 1, 1, 0]).unwrap();
        Dfao::new(base, vec![0, 1], vec!["0".into(), "1".into()]).unwrap()
    }

    #[test]
    fn eval_parity() {
        let t = parity();
        assert_eq!(t.eval(&[1, 1, 0]), 0);
        assert_eq!(t.eval(&[1, 0, 0]), 1);
        assert_eq!(t.canonicalize(), t);
    }

    #[test]
    fn named_table_adds_sink() {
        let a = Alphabet::tuples(&["0", "1"], 1, Some(0));
        let d =
            Dfao::from_named_table(a, Direction::Msd, &["x", "y"], &[("x", "0", "x"), ("x", "1", "y")], "!").unwrap();
        assert_eq!(d.num_states(), 3);
        assert_eq!(d.eval_name(&[1, 1]), "!");
        assert_eq!(d.eval_name(&[0, 1]), "y");
    }

    #[test]
    fn difference_on_domain() {
        let t = parity();
        let flipped = t.relabel_outputs(|o| if o == 0 { "1".into() } else { "0".into() });
        let everything = Dfa::universal(t.alphabet().clone(), Direction::Msd);
        assert!(t.difference_on(&t, &everything).unwrap().is_none());
        assert_eq!(t.difference_on(&flipped, &everything).unwrap(), Some(vec![]));
    }
}
