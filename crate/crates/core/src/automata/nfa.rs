//! Nondeterministic automata, used as intermediates of projection and
//! reversal.

use std::collections::HashMap;

use super::alphabet::{Alphabet, Direction};
use super::dfa::{Dfa, StateId};

/// A nondeterministic automaton with a set of initial states.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    direction: Direction,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    delta: Vec<Vec<StateId>>,
    k: usize,
}

impl Nfa {
    /// Builds an NFA; `delta[q * k + s]` lists the successors of `q` on `s`.
    pub fn new(
        alphabet: Alphabet,
        direction: Direction,
        initial: Vec<StateId>,
        accepting: Vec<bool>,
        delta: Vec<Vec<StateId>>,
        k: usize,
    ) -> Nfa {
        debug_assert_eq!(delta.len(), accepting.len() * k);
        debug_assert!(delta.iter().flatten().all(|&t| (t as usize) < accepting.len()));
        Nfa { alphabet, direction, initial, accepting, delta, k }
    }

    /// Number of states.
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    fn step(&self, set: &[StateId], s: usize) -> Vec<StateId> {
        let mut out: Vec<StateId> =
            set.iter().flat_map(|&q| self.delta[q as usize * self.k + s].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// For msd automata over a padded alphabet: adds as initial states every
    /// state reachable from an initial state by reading padding symbols, so
    /// that `w` is accepted iff `pad^j w` was accepted for some `j`.
    /// Identity for lsd automata or alphabets without padding.
    pub fn saturate_padding(mut self) -> Nfa {
        let (Direction::Msd, Some(pad)) = (self.direction, self.alphabet.pad_symbol()) else {
            return self;
        };
        let mut all: Vec<StateId> = self.initial.clone();
        let mut frontier = self.initial.clone();
        loop {
            let next = self.step(&frontier, pad as usize);
            let fresh: Vec<StateId> = next.iter().copied().filter(|q| !all.contains(q)).collect();
            if fresh.is_empty() {
                break;
            }
            all.extend(&fresh);
            frontier = next;
        }
        all.sort_unstable();
        all.dedup();
        self.initial = all;
        self
    }

    /// For msd automata over a padded alphabet: closes the language under
    /// adding and removing leading padding, so that `pad^j w` is accepted
    /// for every `j` as soon as `pad^i w` is for some `i`.  Identity for lsd
    /// automata or alphabets without padding.
    pub fn close_padding(self) -> Nfa {
        let (Direction::Msd, Some(pad)) = (self.direction, self.alphabet.pad_symbol()) else {
            return self;
        };
        let mut nfa = self.saturate_padding();
        let fresh = nfa.accepting.len() as StateId;
        let k = nfa.k;
        for s in 0..k {
            let mut succ = nfa.step(&nfa.initial, s);
            if s == pad as usize {
                succ.push(fresh);
            }
            nfa.delta.push(succ);
        }
        let accepts_empty = nfa.initial.iter().any(|&q| nfa.accepting[q as usize]);
        nfa.accepting.push(accepts_empty);
        nfa.initial.push(fresh);
        nfa
    }

    /// Subset construction; the empty subset becomes the sink.
    pub fn determinize(&self) -> Dfa {
        let mut start = self.initial.clone();
        start.sort_unstable();
        start.dedup();
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for s in 0..self.k {
                let next = self.step(&sets[i], s);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len() as StateId;
                        index.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = sets.iter().map(|set| set.iter().any(|&q| self.accepting[q as usize])).collect();
        Dfa::new(self.alphabet.clone(), self.direction, 0, accepting, delta)
            .expect("subset construction yields a well-formed automaton")
    }
}
