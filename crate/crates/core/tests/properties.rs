//! Randomized properties of the automaton, numeration, kernel and boundary
//! layers, each checked against a direct computation written here.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use boundary_core::automata::{Alphabet, Dfa, Dfao, Direction, StateId, Symbol};
use boundary_core::boundary::{boundary_sets, PrefixPolicy};
use boundary_core::kernel::{dfao_from_kernel, kernel_enumerate};
use boundary_core::numeration::Ans;
use boundary_core::words::{InfiniteWord, Letter};

const SYSTEMS: [&str; 7] = [
    "base:2",
    "base:3",
    "fibonacci",
    "tribonacci",
    "ans:astar-bstar",
    "ans:one-two-star",
    "ans:astar-bstar-or-bstar-cstar",
];

/// A complete automaton over `alphabet` with up to `max_states` states.
fn arb_dfa(alphabet: Alphabet, max_states: usize, direction: Direction) -> impl Strategy<Value = Dfa> {
    let k = alphabet.size();
    (1..=max_states).prop_flat_map(move |n| {
        let alphabet = alphabet.clone();
        (0..n as StateId, prop::collection::vec(any::<bool>(), n), prop::collection::vec(0..n as StateId, n * k))
            .prop_map(move |(initial, accepting, delta)| {
                Dfa::new(alphabet.clone(), direction, initial, accepting, delta).unwrap()
            })
    })
}

/// An msd automaton that ignores leading padding columns: a fresh initial
/// state loops on the padding column and otherwise moves like the old
/// initial state.  Its reversal is the lsd counterpart.
fn respecting_padding(dfa: &Dfa, direction: Direction) -> Dfa {
    let k = dfa.alphabet().size();
    let pad = dfa.alphabet().pad_symbol().unwrap();
    let fresh = dfa.num_states() as StateId;
    let mut delta = dfa.delta().to_vec();
    delta.extend((0..k as Symbol).map(|s| if s == pad { fresh } else { dfa.next(dfa.initial(), s) }));
    let mut accepting = dfa.accepting().to_vec();
    accepting.push(dfa.is_accepting(dfa.initial()));
    let msd = Dfa::new(dfa.alphabet().clone(), Direction::Msd, fresh, accepting, delta).unwrap();
    match direction {
        Direction::Msd => msd,
        Direction::Lsd => msd.reverse(),
    }
}

fn pair_alphabet() -> Alphabet {
    Alphabet::tuples(&["0", "1"], 2, Some(0))
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Msd), Just(Direction::Lsd)]
}

/// Whether `dfa` (two tracks) accepts some tuple word whose track 0 reads
/// `w` after padding with `k` pad letters, for some `k`.  Subsets of states
/// are simulated directly; the sequence of subsets under padding repeats
/// after finitely many steps, which bounds `k`.
fn projection_oracle(dfa: &Dfa, w: &[Symbol]) -> bool {
    let alphabet = dfa.alphabet();
    let symbols_for = |letter: u32| -> Vec<Symbol> { (0..2).map(|other| alphabet.encode(&[letter, other])).collect() };
    let step = |set: &BTreeSet<StateId>, letter: u32| -> BTreeSet<StateId> {
        set.iter().flat_map(|&q| symbols_for(letter).into_iter().map(move |s| dfa.next(q, s))).collect()
    };
    let accepts_any = |set: &BTreeSet<StateId>| set.iter().any(|&q| dfa.is_accepting(q));
    let read = |set: BTreeSet<StateId>| w.iter().fold(set, |acc, &letter| step(&acc, letter));
    let mut seen = Vec::new();
    match dfa.direction() {
        Direction::Msd => {
            // padding first: explore every reachable subset after pad^k
            let mut current: BTreeSet<StateId> = [dfa.initial()].into();
            while !seen.contains(&current) {
                if accepts_any(&read(current.clone())) {
                    return true;
                }
                seen.push(current.clone());
                current = step(&current, 0);
            }
            false
        }
        Direction::Lsd => {
            let mut current = read([dfa.initial()].into());
            while !seen.contains(&current) {
                if accepts_any(&current) {
                    return true;
                }
                seen.push(current.clone());
                current = step(&current, 0);
            }
            false
        }
    }
}

/// Whether two automata agree on every word of length at most `max_len`.
fn agree_up_to(a: &Dfa, b: &Dfa, max_len: usize) -> bool {
    let k = a.alphabet().size() as Symbol;
    let mut words: Vec<Vec<Symbol>> = vec![Vec::new()];
    for _ in 0..=max_len {
        if words.iter().any(|w| a.accepts(w) != b.accepts(w)) {
            return false;
        }
        words = words
            .iter()
            .flat_map(|w| {
                (0..k).map(move |s| {
                    let mut next = w.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_and_unrank_are_inverse(system in 0..SYSTEMS.len(), index in 0u128..1_000_000) {
        let ans = Ans::builtin(SYSTEMS[system]).unwrap();
        let e = ans.enumerator();
        let word = e.unrank(index).unwrap();
        prop_assert!(e.dfa().accepts(&word));
        prop_assert_eq!(e.rank(&word).unwrap(), index);
        let next = e.unrank(index + 1).unwrap();
        prop_assert!(e.genealogical_cmp(&word, &next).is_lt());
    }

    #[test]
    fn representations_round_trip(system in 0..SYSTEMS.len(), n in 0u64..1_000_000) {
        let ans = Ans::builtin(SYSTEMS[system]).unwrap();
        let rep = ans.rep(n).unwrap();
        prop_assert_eq!(ans.val(&rep).unwrap(), n);
    }

    #[test]
    fn projection_is_sound_and_complete(
        dfa in direction().prop_flat_map(|d| arb_dfa(pair_alphabet(), 4, d)),
        words in prop::collection::vec(prop::collection::vec(0u32..2, 0..7), 1..12),
    ) {
        let projected = dfa.project(1).unwrap();
        for w in &words {
            prop_assert_eq!(projected.accepts(w), projection_oracle(&dfa, w), "word {:?}", w);
        }
    }

    #[test]
    fn projection_preserves_padding_saturation(
        dfa in arb_dfa(pair_alphabet(), 4, Direction::Msd),
        direction in direction(),
        words in prop::collection::vec(prop::collection::vec(0u32..2, 0..8), 1..16),
        pairs in prop::collection::vec(prop::collection::vec(0u32..4, 0..8), 1..16),
    ) {
        let dfa = respecting_padding(&dfa, direction);
        prop_assert!(dfa.padding_saturated_on(&pairs));
        let projected = dfa.project(1).unwrap();
        prop_assert!(projected.padding_saturated_on(&words));
    }

    #[test]
    fn canonicalization_is_idempotent_and_faithful(
        dfa in arb_dfa(Alphabet::plain(&["a", "b", "c"]), 6, Direction::Msd),
    ) {
        let once = dfa.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        prop_assert!(once.num_states() <= dfa.num_states());
        prop_assert!(agree_up_to(&dfa, &once, 6));
        prop_assert!(dfa.equivalent(&once).unwrap());
    }

    #[test]
    fn output_canonicalization_is_idempotent_and_faithful(
        dfa in arb_dfa(Alphabet::plain(&["0", "1"]), 6, Direction::Msd),
        labels in prop::collection::vec(0u32..3, 6),
        words in prop::collection::vec(prop::collection::vec(0u32..2, 0..10), 1..24),
    ) {
        let outputs = labels[..dfa.num_states()].to_vec();
        let dfao = Dfao::new(dfa, outputs, vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let once = dfao.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        for w in &words {
            prop_assert_eq!(dfao.eval(w), once.eval(w));
        }
    }

    #[test]
    fn kernel_resynthesizes_automatic_words(
        dfa in arb_dfa(Ans::builtin("base:2").unwrap().language().alphabet().clone(), 3, Direction::Msd),
        labels in prop::collection::vec(0u32..2, 3),
    ) {
        let ans = Ans::builtin("base:2").unwrap();
        let outputs = labels[..dfa.num_states()].to_vec();
        let dfao = Dfao::new(dfa, outputs, vec!["0".into(), "1".into()]).unwrap();
        let word = InfiniteWord::automatic("random", Arc::new(ans.clone()), Arc::new(dfao)).unwrap();
        let report = kernel_enumerate(&word, &ans, 10, 256).unwrap();
        let rebuilt = dfao_from_kernel(&report, &word, &ans, 1024).unwrap();
        let regenerated = InfiniteWord::automatic("rebuilt", Arc::new(ans), Arc::new(rebuilt)).unwrap();
        prop_assert_eq!(regenerated.prefix(1024).unwrap(), word.prefix(1024).unwrap());
    }

    #[test]
    fn boundary_of_eventually_periodic_words_is_eventually_periodic(
        u in prop::collection::vec(0 as Letter..3, 0..=6),
        v in prop::collection::vec(0 as Letter..3, 1..=6),
        ell in 1usize..=3,
    ) {
        let word = InfiniteWord::periodic("uv", u.clone(), v.clone()).unwrap();
        let from = ell.max(u.len());
        let to = from + 3 * v.len() + 6;
        let sets = boundary_sets(&word, ell, from..=to, PrefixPolicy::Fixed(512)).unwrap().sets;
        for i in 0..sets.len() - v.len() {
            prop_assert_eq!(&sets[i], &sets[i + v.len()], "n = {}", from + i);
        }
    }
}
