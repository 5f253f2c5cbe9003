//! Hand-entered reference data: boundary words and sets, automata drawn as
//! figures, morphisms and tables, transcribed verbatim so that computed
//! objects can be compared against them.

use crate::automata::{Alphabet, Dfa, Dfao, Direction, Symbol};
use crate::boundary::BoundarySet;
use crate::error::Result;
use crate::numeration::{AdditionAutomaton, Ans};

/// 1-boundary word of the Fibonacci word for `n = 1..=29`.
pub const FIBONACCI_ONE_BOUNDARY: &str = "abbabbbbabbabbbbabbbbabbabbbb";

/// The two sets of 1-boundary words of binary words with long zero blocks:
/// `a` lacks `(1,1)`, `b` is full.
pub const BINARY_ONE_BOUNDARY_SETS: [&str; 2] = ["{(0,0),(0,1),(1,0)}", "{(0,0),(0,1),(1,0),(1,1)}"];

/// 2-boundary word of the Fibonacci word for `n = 2..=26`.
pub const FIBONACCI_TWO_BOUNDARY: &str = "abcdefbcdbcdefbcdefbcdbcd";

/// The sets `a`–`f` of the Fibonacci 2-boundary word.
pub const FIBONACCI_TWO_BOUNDARY_SETS: [&str; 6] = [
    "{(00,10),(01,00),(01,01),(10,01),(10,10)}",
    "{(00,00),(00,01),(01,01),(01,10),(10,00),(10,10)}",
    "{(00,01),(00,10),(01,00),(01,10),(10,00),(10,01)}",
    "{(00,00),(00,10),(01,00),(01,01),(10,01),(10,10)}",
    "{(00,01),(01,01),(01,10),(10,00),(10,01),(10,10)}",
    "{(00,10),(01,00),(01,01),(01,10),(10,01),(10,10)}",
];

/// 2-boundary word of the Thue–Morse word for `n = 2..=35`.
pub const THUE_MORSE_TWO_BOUNDARY: &str = "abcdedfdgdgdgdcdgdgdgdgdgdgdgdfdgd";

/// The sets `a`–`g` of the Thue–Morse 2-boundary word, given by the pairs
/// missing from `{0,1}² × {0,1}²`.
pub const THUE_MORSE_TWO_BOUNDARY_MISSING: [&str; 7] = [
    "{(00,00),(00,01),(01,11),(10,00),(11,10),(11,11)}",
    "{(00,00),(00,11),(01,10),(10,01),(11,00),(11,11)}",
    "{(00,10),(01,00),(10,11),(11,01)}",
    "{(00,00),(00,11),(11,00),(11,11)}",
    "{(00,11),(11,00)}",
    "{(00,01),(01,11),(10,00),(11,10)}",
    "{}",
];

/// The sets `a`–`e` of the 2-boundary word of the triangular-number word.
pub const TRIANGULAR_TWO_BOUNDARY_SETS: [&str; 5] = [
    "{(00,00),(00,01),(00,10),(01,00),(10,00),(10,01),(10,10),(11,01)}",
    "{(00,00),(00,01),(00,10),(01,00),(10,00),(01,01),(10,01),(10,10),(11,10)}",
    "{(00,00),(00,01),(00,10),(01,00),(10,00),(01,01),(01,10),(10,01),(10,10),(11,00)}",
    "{(00,00),(00,01),(00,10),(01,00),(10,00),(01,01),(01,10),(10,01),(10,10),(11,01)}",
    "{(00,00),(00,01),(00,10),(01,00),(10,00),(01,01),(01,10),(10,01),(10,10),(11,10)}",
];

/// Morphism generating the Thue–Morse 2-boundary DFAO word from `#`.
pub const THUE_MORSE_BOUNDARY_MORPHISM: &str = "#->#$, $->ab, a->cd, b->ed, c->fd, d->gd, e->gd, f->cd, g->gd";

/// Morphism generating the Fibonacci 2-boundary DFAO word from `#`.
pub const FIBONACCI_BOUNDARY_MORPHISM: &str = "#->#$, $->a, a->bc, b->de, c->f, d->bc, e->d, f->bc";

/// The 2-boundary word of the triangular-number word begins `ab`, followed
/// by the blocks `cⁿde` for `n = 1, 2, …`.
pub const TRIANGULAR_TWO_BOUNDARY_HEAD: &str = "ab";

/// The repeated tail `de` of each block of the triangular 2-boundary word.
pub const TRIANGULAR_TWO_BOUNDARY_TAIL: &str = "de";

/// Period of the 1-boundary word of the squares word, from `n = 1`.
pub const SQUARES_ONE_BOUNDARY_PERIOD: &str = "babb";

/// Printed prefix of the 1-boundary word of the characteristic word of
/// `{2^{n+1} − 1}`, from `n = 1`.
pub const MERSENNE_ONE_BOUNDARY: &str = "ababababaaabababaaaaaaabaaabababaaaaaaaaaaaaaaabaaa";

/// Printed prefix of the 1-boundary word of the characteristic word of the
/// V-recurrence terms `1, 4, 15, 54, …`, from `n = 1`.
pub const V_SYSTEM_ONE_BOUNDARY: &str = "aabaaaaaaabaabaaaaaaaaaaaaaaaaaaaaaaaabaaaaaaaaaab";

/// The printed V-representations of `V_{m+3} − V_m` for `m = 0..=14`.
pub const V_SYSTEM_GAP_THREE_ROWS: [&str; 15] = [
    "1000",
    "3200",
    "31313",
    "313122",
    "3131210",
    "31312031",
    "313120231",
    "3131202301",
    "31312023001",
    "313120230010",
    "3131202300022",
    "31312023000210",
    "313120230002022",
    "3131202300020213",
    "31312023000202113",
];

/// Leading digits of the β-expansion of `1 − 1/β³` for the V-system's
/// dominant root β.
pub const V_SYSTEM_EXPANSION_PREFIX: &str = "3131202300020211200210312213101221120211";

/// The 4-boundary set of the Fibonacci word at `n = 17`, read off the
/// rotation picture.
pub const FIBONACCI_FOUR_BOUNDARY_AT_17: &str = "{(0010,0101),(0010,1001),(0100,1001),(0100,1010),(0101,1010),\
(0101,0010),(1001,0010),(1001,0100),(1010,0100),(1010,0101)}";

/// Boundary morphisms of the slope `1 − 1/√3` for `ℓ = 2, 3, 4`.
pub const SQRT3_MORPHISMS: [&str; 3] = ["0->01234, 1->01", "0->01234, 1->56", "0->0123456, 1->01278"];

/// Boundary morphism of the slope `(π − 3)/2` for `ℓ = 2`.
pub const PI_MORPHISM: &str = "0->00000000001234, 1->0";

/// Kernel index maps of the Fibonacci system: `(suffix, first values)`.
pub const FIBONACCI_KERNEL_ROWS: [(&str, &[u64]); 6] = [
    ("", &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]),
    ("0", &[2, 3, 5, 7, 8, 10, 11, 13, 15]),
    ("1", &[1, 4, 6, 9, 12, 14, 17, 19, 22, 25]),
    ("01", &[4, 6, 9, 12, 14, 17, 19, 22, 25]),
    ("00", &[3, 5, 8, 11, 13, 16, 18, 21, 24]),
    ("10", &[2, 7, 10, 15, 20, 23, 28, 31, 36, 41]),
];

/// Parses a list of set literals.
pub fn parse_sets(texts: &[&str]) -> Vec<BoundarySet> {
    texts.iter().map(|t| BoundarySet::parse(t).unwrap_or_else(|| BoundarySet::new(2, 2, Vec::new()))).collect()
}

/// The Thue–Morse 2-boundary sets as explicit pair sets.
pub fn thue_morse_two_boundary_sets() -> Vec<BoundarySet> {
    let all: Vec<(Vec<u8>, Vec<u8>)> =
        (0..16u8).map(|c| (vec![c >> 3 & 1, c >> 2 & 1], vec![c >> 1 & 1, c & 1])).collect();
    parse_sets(&THUE_MORSE_TWO_BOUNDARY_MISSING)
        .into_iter()
        .map(|missing| BoundarySet::new(2, 2, all.iter().filter(|(u, v)| !missing.contains(u, v)).cloned().collect()))
        .collect()
}

/// Transitions of the drawn `{1,2}*` adder, least significant digit first:
/// `(from, column, to)`, where a column `pqr` lists the letters of `x`,
/// `y`, `x+y`, and `i` stands for either digit (the same on both tracks).
const ONE_TWO_ADDER_TABLE: &[(u32, &str, u32)] = &[
    (0, "112", 0),
    (0, "#ii", 0),
    (0, "i#i", 0),
    (0, "121", 1),
    (0, "211", 1),
    (0, "222", 1),
    (1, "111", 1),
    (1, "212", 1),
    (1, "122", 1),
    (1, "#21", 1),
    (1, "2#1", 1),
    (1, "221", 2),
    (1, "##1", 0),
    (1, "1#2", 0),
    (1, "#12", 0),
    (2, "121", 2),
    (2, "211", 2),
    (2, "222", 2),
    (2, "i#i", 1),
    (2, "#ii", 1),
    (2, "112", 1),
    (2, "##2", 0),
];

/// The drawn adder of the `{1,2}*` system (lsd, initial and accepting
/// state 0, missing moves to a sink).
pub fn one_two_adder_figure() -> Result<AdditionAutomaton> {
    let ans = Ans::one_two_star();
    let alphabet = ans.track_alphabet(3);
    let letter = |c: char| -> Symbol {
        match c {
            '#' => 0,
            '1' => 1,
            _ => 2,
        }
    };
    let mut triples = Vec::new();
    for &(from, column, to) in ONE_TWO_ADDER_TABLE.iter() {
        let digits: &[char] = if column.contains('i') { &['1', '2'] } else { &['1'] };
        for &d in digits {
            let tracks: Vec<Symbol> = column.chars().map(|c| letter(if c == 'i' { d } else { c })).collect();
            let s = alphabet.encode(&tracks);
            if !triples.contains(&(from, s, to)) {
                triples.push((from, s, to));
            }
        }
    }
    let dfa = Dfa::from_partial(alphabet, Direction::Lsd, 3, 0, &[0], &triples)?;
    AdditionAutomaton::new(dfa, "ans:one-two-star")
}

/// The drawn Thue–Morse 2-boundary DFAO (msd, base 2): every state outputs
/// its own name.
pub fn thue_morse_boundary_figure() -> Result<Dfao> {
    Dfao::from_named_table(
        Alphabet::tuples(&["0", "1"], 1, Some(0)),
        Direction::Msd,
        &["#", "$", "a", "b", "c", "d", "e", "f", "g"],
        &[
            ("#", "0", "#"),
            ("#", "1", "$"),
            ("$", "0", "a"),
            ("$", "1", "b"),
            ("a", "0", "c"),
            ("a", "1", "d"),
            ("b", "1", "d"),
            ("b", "0", "e"),
            ("c", "1", "d"),
            ("c", "0", "f"),
            ("d", "1", "d"),
            ("d", "0", "g"),
            ("e", "1", "d"),
            ("e", "0", "g"),
            ("f", "0", "c"),
            ("f", "1", "d"),
            ("g", "1", "d"),
            ("g", "0", "g"),
        ],
        "_",
    )
}

/// The drawn Fibonacci 2-boundary DFAO (msd, Fibonacci system); moves
/// reading `11` are not drawn and go to a sink.
pub fn fibonacci_boundary_figure() -> Result<Dfao> {
    Dfao::from_named_table(
        Alphabet::tuples(&["0", "1"], 1, Some(0)),
        Direction::Msd,
        &["#", "$", "a", "b", "c", "d", "e", "f"],
        &[
            ("#", "0", "#"),
            ("#", "1", "$"),
            ("$", "0", "a"),
            ("a", "0", "b"),
            ("a", "1", "c"),
            ("b", "0", "d"),
            ("b", "1", "e"),
            ("e", "0", "d"),
            ("d", "0", "b"),
            ("d", "1", "c"),
            ("c", "0", "f"),
            ("f", "1", "c"),
            ("f", "0", "b"),
        ],
        "_",
    )
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::logic::{boundary_dfao, builtin_sequence, dfao_to_morphic, parse_named_morphism, renaming, Compiler};
    use crate::numeration::{adder_builtin, adder_explore, adder_validate, one_two_adder, DEFAULT_CARRY_BOUND};

    #[test]
    fn drawn_adder_equals_the_carry_construction() {
        let drawn = one_two_adder_figure().unwrap();
        let built = one_two_adder();
        assert_eq!(drawn.relation().canonicalize(), built.relation().canonicalize());
        let report = adder_validate(&drawn, &Ans::one_two_star(), 60).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    fn compiled(name: &str) -> (Compiler, Dfao) {
        let (ans, dfao) = builtin_sequence(name).unwrap();
        let adder = match name {
            "thue-morse" => adder_builtin("base:2").unwrap(),
            _ => adder_explore(ans.positional().unwrap(), DEFAULT_CARRY_BOUND, Direction::Msd).unwrap(),
        };
        let mut c = Compiler::new(Arc::new(ans)).with_adder(&adder).unwrap();
        c.add_sequence("X", &dfao).unwrap();
        let b = boundary_dfao(&c, "X", 2).unwrap();
        (c, b.dfao)
    }

    #[test]
    fn compiled_boundary_automata_equal_the_drawings() {
        for (name, figure, morphism) in [
            ("thue-morse", thue_morse_boundary_figure().unwrap(), THUE_MORSE_BOUNDARY_MORPHISM),
            ("fibonacci", fibonacci_boundary_figure().unwrap(), FIBONACCI_BOUNDARY_MORPHISM),
        ] {
            let (c, dfao) = compiled(name);
            let domain = c.ans().valid_track();
            assert_eq!(dfao.difference_on(&figure, &domain).unwrap(), None, "{name}");
            let pres = dfao_to_morphic(&dfao, c.ans()).unwrap();
            let (names, expected) = parse_named_morphism(morphism).unwrap();
            let map = renaming(&pres.morphism, pres.seed, &expected, 0).expect("isomorphic morphisms");
            for (ours, theirs) in map.iter().enumerate() {
                let theirs = theirs.expect("every letter is reachable");
                assert_eq!(pres.letter_names[ours], names[theirs as usize], "{name}");
            }
        }
    }
}
