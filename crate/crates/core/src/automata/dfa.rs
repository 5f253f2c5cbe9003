//! Complete deterministic automata and the algebra over them.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::alphabet::{Alphabet, Direction, Symbol};
use super::nfa::Nfa;
use crate::error::{Error, Result};

/// State identifier.
pub type StateId = u32;

/// Boolean connective used by [`Dfa::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    /// Intersection.
    And,
    /// Union.
    Or,
    /// Difference `a \ b`.
    AndNot,
    /// Symmetric difference.
    Xor,
    /// `¬a ∨ b`.
    Implies,
    /// `a ⇔ b`.
    Iff,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::AndNot => a && !b,
            BoolOp::Xor => a != b,
            BoolOp::Implies => !a || b,
            BoolOp::Iff => a == b,
        }
    }
}

/// A complete deterministic finite automaton.
///
/// Every `(state, symbol)` pair has exactly one successor; an undefined move
/// of a partial automaton is represented by an explicit sink state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    direction: Direction,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<StateId>,
}

impl Dfa {
    /// Builds an automaton from a flat transition table
    /// (`delta[q * |alphabet| + s]`).
    pub fn new(
        alphabet: Alphabet,
        direction: Direction,
        initial: StateId,
        accepting: Vec<bool>,
        delta: Vec<StateId>,
    ) -> Result<Dfa> {
        let n = accepting.len();
        let k = alphabet.size();
        if n == 0 || initial as usize >= n {
            return Err(Error::Invalid("automaton needs an initial state".into()));
        }
        if delta.len() != n * k {
            return Err(Error::Invalid(format!("transition table has {} entries, expected {}", delta.len(), n * k)));
        }
        if let Some(bad) = delta.iter().find(|&&t| t as usize >= n) {
            return Err(Error::Invalid(format!("transition to undeclared state {bad}")));
        }
        Ok(Dfa { alphabet, direction, initial, accepting, delta })
    }

    /// Builds an automaton from partial transitions; missing moves go to an
    /// added sink state.
    pub fn from_partial(
        alphabet: Alphabet,
        direction: Direction,
        states: usize,
        initial: StateId,
        accepting: &[StateId],
        transitions: &[(StateId, Symbol, StateId)],
    ) -> Result<Dfa> {
        let k = alphabet.size();
        let sink = states as StateId;
        let mut delta = vec![sink; (states + 1) * k];
        for &(p, s, q) in transitions {
            if p as usize >= states || q as usize >= states || s as usize >= k {
                return Err(Error::Invalid(format!("bad transition ({p}, {s}, {q})")));
            }
            let slot = &mut delta[p as usize * k + s as usize];
            if *slot != sink && *slot != q {
                return Err(Error::Invalid(format!("nondeterministic transition ({p}, {s})")));
            }
            *slot = q;
        }
        let mut acc = vec![false; states + 1];
        for &q in accepting {
            acc[q as usize] = true;
        }
        Dfa::new(alphabet, direction, initial, acc, delta)
    }

    /// Builds the reachable part of an automaton whose states are values of
    /// type `K`, exploring breadth-first from `start` in symbol order.
    ///
    /// Returns the automaton and the key of every state (indexed by state).
    pub fn explore<K, F, A>(
        alphabet: Alphabet,
        direction: Direction,
        start: K,
        budget: usize,
        mut step: F,
        mut accept: A,
    ) -> Result<(Dfa, Vec<K>)>
    where
        K: Hash + Eq + Clone,
        F: FnMut(&K, Symbol) -> K,
        A: FnMut(&K) -> bool,
    {
        let k = alphabet.size();
        let mut index: HashMap<K, StateId> = HashMap::new();
        let mut keys = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut next = 0usize;
        while next < keys.len() {
            let key = keys[next].clone();
            for s in 0..k as Symbol {
                let succ = step(&key, s);
                let id = match index.get(&succ) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len() as StateId;
                        if keys.len() >= budget {
                            return Err(Error::StateBudget(budget));
                        }
                        index.insert(succ.clone(), id);
                        keys.push(succ);
                        id
                    }
                };
                delta.push(id);
            }
            next += 1;
        }
        let accepting = keys.iter().map(&mut accept).collect();
        Ok((Dfa { alphabet, direction, initial: 0, accepting, delta }, keys))
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: Alphabet, direction: Direction) -> Dfa {
        let k = alphabet.size();
        Dfa { alphabet, direction, initial: 0, accepting: vec![true], delta: vec![0; k] }
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: Alphabet, direction: Direction) -> Dfa {
        let mut d = Dfa::universal(alphabet, direction);
        d.accepting[0] = false;
        d
    }

    /// Alphabet of the automaton.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Reading direction tag.
    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Returns a copy with another direction tag (no structural change).
    pub fn with_direction(mut self, direction: Direction) -> Dfa {
        self.direction = direction;
        self
    }

    /// Number of states.
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    /// Initial state.
    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// Whether `q` is accepting.
    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    /// Accepting flags indexed by state.
    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    /// Successor of `q` on `s`.
    #[inline]
    pub fn next(&self, q: StateId, s: Symbol) -> StateId {
        self.delta[q as usize * self.alphabet.size() + s as usize]
    }

    /// Flat transition table.
    pub fn delta(&self) -> &[StateId] {
        &self.delta
    }

    /// State reached from `q` after reading `word`.
    pub fn run_from(&self, q: StateId, word: &[Symbol]) -> StateId {
        word.iter().fold(q, |q, &s| self.next(q, s))
    }

    /// State reached from the initial state after reading `word`.
    pub fn run(&self, word: &[Symbol]) -> StateId {
        self.run_from(self.initial, word)
    }

    /// Membership test.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.is_accepting(self.run(word))
    }

    /// Same language, other accepting set.
    pub fn with_accepting(&self, accepting: Vec<bool>) -> Dfa {
        assert_eq!(accepting.len(), self.num_states());
        Dfa { accepting, ..self.clone() }
    }

    /// Complement (the automaton is complete, so flipping suffices).
    pub fn complement(&self) -> Dfa {
        self.with_accepting(self.accepting.iter().map(|a| !a).collect())
    }

    /// Boolean combination of two automata over the same alphabet; canonical.
    pub fn combine(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        Ok(self.product(other, op)?.canonicalize())
    }

    /// Boolean combination without canonicalization (reachable product only).
    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let (d, _) = Dfa::explore(
            self.alphabet.clone(),
            self.direction,
            (self.initial, other.initial),
            usize::MAX,
            |&(p, q), s| (self.next(p, s), other.next(q, s)),
            |&(p, q)| op.apply(self.is_accepting(p), other.is_accepting(q)),
        )?;
        Ok(d)
    }

    /// Intersection (canonical).
    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::And)
    }

    /// Union (canonical).
    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, BoolOp::Or)
    }

    /// States reachable from the initial state, in breadth-first symbol order.
    pub fn reachable_order(&self) -> Vec<StateId> {
        bfs_order(self.initial, self.alphabet.size(), &self.delta, self.num_states())
    }

    /// States from which some accepting state is reachable.
    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.alphabet.size();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..k {
                rev[self.delta[q * k + s] as usize].push(q as StateId);
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<StateId> = (0..n as StateId).filter(|&q| live[q as usize]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// Whether the language is empty.
    pub fn is_empty(&self) -> bool {
        self.reachable_order().iter().all(|&q| !self.is_accepting(q))
    }

    /// A shortest accepted word (symbol-order minimal among the shortest), if any.
    pub fn shortest_word(&self) -> Option<Vec<Symbol>> {
        let n = self.num_states();
        let k = self.alphabet.size();
        let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial as usize] = true;
        while let Some(q) = queue.pop_front() {
            if self.is_accepting(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur as usize] {
                    word.push(s);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for s in 0..k as Symbol {
                let t = self.next(q, s);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, s));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Minimal, complete, reachable-only equivalent automaton with states
    /// numbered breadth-first from the initial state in symbol order.
    pub fn canonicalize(&self) -> Dfa {
        let labels: Vec<u32> = self.accepting.iter().map(|&a| a as u32).collect();
        let (initial, delta, labels) = minimize_labelled(self.initial, self.alphabet.size(), &self.delta, &labels);
        Dfa {
            alphabet: self.alphabet.clone(),
            direction: self.direction,
            initial,
            accepting: labels.into_iter().map(|l| l == 1).collect(),
            delta,
        }
    }

    /// Language equality, decided on the product automaton.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, BoolOp::Xor)?.is_empty())
    }

    /// A word in exactly one of the two languages, if any.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Vec<Symbol>>> {
        Ok(self.product(other, BoolOp::Xor)?.shortest_word())
    }

    /// The automaton as an NFA.
    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.size();
        let delta = self.delta.iter().map(|&t| vec![t]).collect();
        Nfa::new(self.alphabet.clone(), self.direction, vec![self.initial], self.accepting.clone(), delta, k)
    }

    /// Automaton of the reversed language with the opposite direction tag.
    pub fn reverse(&self) -> Dfa {
        let n = self.num_states();
        let k = self.alphabet.size();
        let mut delta = vec![Vec::new(); n * k];
        for q in 0..n {
            for s in 0..k {
                let t = self.delta[q * k + s] as usize;
                delta[t * k + s].push(q as StateId);
            }
        }
        let initial: Vec<StateId> = (0..n as StateId).filter(|&q| self.is_accepting(q)).collect();
        let mut accepting = vec![false; n];
        accepting[self.initial as usize] = true;
        Nfa::new(self.alphabet.clone(), self.direction.flipped(), initial, accepting, delta, k)
            .determinize()
            .canonicalize()
    }

    /// Re-targets the automaton to another alphabet: the successor on a new
    /// symbol `s` is the old successor on `map(s)`.
    ///
    /// Used for track permutation and cylindrification (adding tracks the
    /// language does not constrain).
    pub fn map_symbols<F: Fn(Symbol) -> Symbol>(&self, alphabet: Alphabet, map: F) -> Dfa {
        let k_old = self.alphabet.size();
        let k_new = alphabet.size();
        let table: Vec<Symbol> = (0..k_new as Symbol).map(&map).collect();
        let mut delta = Vec::with_capacity(self.num_states() * k_new);
        for q in 0..self.num_states() {
            for &s in &table {
                delta.push(self.delta[q * k_old + s as usize]);
            }
        }
        Dfa { alphabet, direction: self.direction, initial: self.initial, accepting: self.accepting.clone(), delta }
    }

    /// Existentially projects away `track`, then saturates padding and
    /// canonicalizes.
    ///
    /// The result accepts `w` iff some padding extension of `w` (on the left
    /// for msd, on the right for lsd) is the projection of an accepted tuple
    /// word.
    pub fn project(&self, track: usize) -> Result<Dfa> {
        let arity = self.alphabet.arity();
        if track >= arity {
            return Err(Error::Invalid(format!("track {track} out of range for arity {arity}")));
        }
        let new_alphabet = self.alphabet.with_arity(arity - 1);
        let k_old = self.alphabet.size();
        let k_new = new_alphabet.size();
        let n = self.num_states();
        let mut delta: Vec<Vec<StateId>> = vec![Vec::new(); n * k_new];
        for q in 0..n {
            for s in 0..k_old as Symbol {
                let mut tracks = self.alphabet.decode(s);
                tracks.remove(track);
                let s2 = new_alphabet.encode(&tracks) as usize;
                let t = self.delta[q * k_old + s as usize];
                let slot = &mut delta[q * k_new + s2];
                if !slot.contains(&t) {
                    slot.push(t);
                }
            }
        }
        let nfa = Nfa::new(new_alphabet, self.direction, vec![self.initial], self.accepting.clone(), delta, k_new);
        Ok(nfa.saturate_padding().determinize().saturate_padding_accepting().canonicalize())
    }

    /// For lsd automata: marks as accepting every state from which some
    /// number of padding symbols leads to acceptance.  Identity for msd.
    pub fn saturate_padding_accepting(&self) -> Dfa {
        let (Direction::Lsd, Some(pad)) = (self.direction, self.alphabet.pad_symbol()) else {
            return self.clone();
        };
        let accepting = (0..self.num_states() as StateId)
            .map(|q| {
                let mut seen = vec![false; self.num_states()];
                let mut cur = q;
                while !seen[cur as usize] {
                    if self.is_accepting(cur) {
                        return true;
                    }
                    seen[cur as usize] = true;
                    cur = self.next(cur, pad);
                }
                false
            })
            .collect();
        self.with_accepting(accepting)
    }

    /// Whether padding is saturated on the given sample words: `w` accepted
    /// iff `pad·w` (msd) or `w·pad` (lsd) accepted.
    pub fn padding_saturated_on(&self, words: &[Vec<Symbol>]) -> bool {
        let Some(pad) = self.alphabet.pad_symbol() else {
            return true;
        };
        words.iter().all(|w| {
            let mut padded = w.clone();
            match self.direction {
                Direction::Msd => padded.insert(0, pad),
                Direction::Lsd => padded.push(pad),
            }
            self.accepts(w) == self.accepts(&padded)
        })
    }
}

/// Breadth-first order of the states reachable from `initial`.
pub(crate) fn bfs_order(initial: StateId, k: usize, delta: &[StateId], n: usize) -> Vec<StateId> {
    let mut seen = vec![false; n];
    let mut order = vec![initial];
    seen[initial as usize] = true;
    let mut i = 0;
    while i < order.len() {
        let q = order[i] as usize;
        for s in 0..k {
            let t = delta[q * k + s];
            if !seen[t as usize] {
                seen[t as usize] = true;
                order.push(t);
            }
        }
        i += 1;
    }
    order
}

/// Minimizes a complete labelled transition system (labels are accepting
/// flags or output letters): drops unreachable states, merges states with
/// equal label behaviour (Moore refinement) and renumbers breadth-first.
pub(crate) fn minimize_labelled(
    initial: StateId,
    k: usize,
    delta: &[StateId],
    labels: &[u32],
) -> (StateId, Vec<StateId>, Vec<u32>) {
    let n = labels.len();
    let order = bfs_order(initial, k, delta, n);
    // Restrict to reachable states.
    let mut local = vec![u32::MAX; n];
    for (i, &q) in order.iter().enumerate() {
        local[q as usize] = i as u32;
    }
    let m = order.len();
    let mut rdelta = vec![0u32; m * k];
    for (i, &q) in order.iter().enumerate() {
        for s in 0..k {
            rdelta[i * k + s] = local[delta[q as usize * k + s] as usize];
        }
    }
    let rlabels: Vec<u32> = order.iter().map(|&q| labels[q as usize]).collect();

    // Moore refinement.
    let mut class = normalize_classes(&rlabels);
    let mut count = class.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let mut sig_index: HashMap<Vec<u32>, u32> = HashMap::with_capacity(m);
        let mut next = vec![0u32; m];
        let mut sig = Vec::with_capacity(k + 1);
        for q in 0..m {
            sig.clear();
            sig.push(class[q]);
            sig.extend((0..k).map(|s| class[rdelta[q * k + s] as usize]));
            let len = sig_index.len() as u32;
            next[q] = *sig_index.entry(sig.clone()).or_insert(len);
        }
        let new_count = sig_index.len() as u32;
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // Quotient, renumbered breadth-first from the initial class.
    let classes = count as usize;
    let mut qdelta = vec![0u32; classes * k];
    let mut qlabels = vec![0u32; classes];
    for q in 0..m {
        let c = class[q] as usize;
        qlabels[c] = rlabels[q];
        for s in 0..k {
            qdelta[c * k + s] = class[rdelta[q * k + s] as usize];
        }
    }
    let start = class[0];
    let bfs = bfs_order(start, k, &qdelta, classes);
    let mut rename = vec![0u32; classes];
    for (i, &c) in bfs.iter().enumerate() {
        rename[c as usize] = i as u32;
    }
    let mut fdelta = vec![0u32; classes * k];
    let mut flabels = vec![0u32; classes];
    for &c in &bfs {
        let nc = rename[c as usize] as usize;
        flabels[nc] = qlabels[c as usize];
        for s in 0..k {
            fdelta[nc * k + s] = rename[qdelta[c as usize * k + s] as usize];
        }
    }
    (0, fdelta, flabels)
}

fn normalize_classes(labels: &[u32]) -> Vec<u32> {
    let mut map: HashMap<u32, u32> = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let len = map.len() as u32;
            *map.entry(l).or_insert(len)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits() -> Alphabet {
        Alphabet::tuples(&["0", "1"], 1, Some(0))
    }

    /// Base-2 representations (msd, leading zeros allowed) of even numbers.
    fn even() -> Dfa {
        Dfa::new(bits(), Direction::Msd, 0, vec![true, false], vec![0, 1, 0, 1]).unwrap()
    }

    /// Representations of n < 8 (at most three significant digits).
    fn below_eight() -> Dfa {
        // states: number of significant digits read (0..3), 4 = too many
        let mut delta = Vec::new();
        for q in 0..5u32 {
            let on0 = if q == 0 { 0 } else { (q + 1).min(4) };
            let on1 = (q + 1).min(4);
            delta.push(on0);
            delta.push(on1);
        }
        Dfa::new(bits(), Direction::Msd, 0, vec![true, true, true, true, false], delta).unwrap()
    }

    #[test]
    fn canonicalize_universal_language() {
        let d = Dfa::new(bits(), Direction::Msd, 0, vec![true; 3], vec![1, 2, 2, 0, 0, 1]).unwrap();
        let c = d.canonicalize();
        assert_eq!(c.num_states(), 1);
        assert!(c.is_accepting(0));
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn canonicalize_empty_language() {
        let d = Dfa::new(bits(), Direction::Msd, 0, vec![false; 2], vec![1, 0, 0, 1]).unwrap();
        let c = d.canonicalize();
        assert_eq!(c.num_states(), 1);
        assert!(c.is_empty());
    }

    #[test]
    fn combine_laws() {
        let e = even();
        let empty = Dfa::empty(bits(), Direction::Msd);
        assert!(e.combine(&empty, BoolOp::Or).unwrap().equivalent(&e).unwrap());
        assert!(e.combine(&e, BoolOp::AndNot).unwrap().is_empty());
    }

    #[test]
    fn even_and_small() {
        let both = even().combine(&below_eight(), BoolOp::And).unwrap();
        // Enumerate words without leading zeros up to length 4.
        let mut got = Vec::new();
        for len in 1..=4 {
            for v in 0..(1u32 << len) {
                let w: Vec<Symbol> = (0..len).rev().map(|i| (v >> i) & 1).collect();
                if w[0] == 1 && both.accepts(&w) {
                    got.push(bits().render_word(&w));
                }
            }
        }
        assert_eq!(got, vec!["10", "100", "110"]);
        assert!(both.accepts(&[0]));
    }

    #[test]
    fn reverse_twice_is_identity() {
        let d = below_eight();
        let r = d.reverse();
        assert_eq!(r.direction(), Direction::Lsd);
        assert!(r.reverse().with_direction(Direction::Msd).equivalent(&d.canonicalize()).unwrap());
    }

    #[test]
    fn project_equality_relation_is_universal() {
        let a = Alphabet::tuples(&["0", "1"], 2, Some(0));
        let eq = Dfa::explore(
            a.clone(),
            Direction::Msd,
            true,
            16,
            |&ok, s| ok && a.track_letter(s, 0) == a.track_letter(s, 1),
            |&ok| ok,
        )
        .unwrap()
        .0;
        let p = eq.project(1).unwrap();
        assert_eq!(p.num_states(), 1);
        assert!(p.is_accepting(0));
    }

    #[test]
    fn shortest_word_and_distinguisher() {
        let e = even();
        assert_eq!(e.shortest_word(), Some(vec![]));
        let w = e.distinguishing_word(&below_eight()).unwrap().unwrap();
        assert_ne!(e.accepts(&w), below_eight().accepts(&w));
    }
}
