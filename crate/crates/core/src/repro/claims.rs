//! The claim registry: one executable check list per acceptance criterion.

use std::sync::Arc;
use std::time::Duration;

use super::golden::*;
use super::{Checks, Claim, Evidence, ReproConfig};
use crate::automata::{Dfao, Direction, Symbol};
use crate::boundary::{
    alphabet_census, boundary_sets, boundary_word, BoundarySet, PrefixPolicy, DEFAULT_MAX_PREFIX, DEFAULT_MAX_SPARSE,
};
use crate::error::Result;
use crate::kernel::{dfao_from_kernel, index_map, kernel_enumerate};
use crate::logic::{boundary_dfao, builtin_sequence, dfao_to_morphic, parse_named_morphism, renaming, Compiler};
use crate::numeration::{
    adder_builtin, adder_explore, adder_validate, one_two_adder, AdditionAutomaton, Ans, PositionalSystem,
};
use crate::polygonal::{claim_check, PolygonalFamily};
use crate::sturmian::{
    block_code_table, first_letter_recurrence, morphism_h, ContinuedFraction, FactorPartition, QuadraticNumber, Slope,
};
use crate::words::{complexity_profile, max_power_in, InfiniteWord, Letter, SetGenerator};

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub(super) static REGISTRY: &[Claim] = &[
    Claim {
        id: "fib-1boundary-prefix",
        criterion: 1,
        title: "Fibonacci 1-boundary word for n = 1..29",
        budget: secs(1),
        evidence: Evidence::Decisive,
        run: fib_one_boundary,
    },
    Claim {
        id: "fib-2boundary-prefix",
        criterion: 2,
        title: "Fibonacci 2-boundary word and its six sets",
        budget: secs(1),
        evidence: Evidence::Decisive,
        run: fib_two_boundary,
    },
    Claim {
        id: "tm-2boundary-morphism",
        criterion: 3,
        title: "Thue–Morse 2-boundary: sets, index laws, DFAO and morphism",
        budget: secs(60),
        evidence: Evidence::Decisive,
        run: thue_morse_two_boundary,
    },
    Claim {
        id: "fib-2boundary-dfao",
        criterion: 4,
        title: "Fibonacci 2-boundary DFAO over the Fibonacci system and its morphism",
        budget: secs(120),
        evidence: Evidence::Decisive,
        run: fibonacci_two_boundary_dfao,
    },
    Claim {
        id: "fib-adder-17",
        criterion: 5,
        title: "Fibonacci adders: 17 states msd, 22 lsd, validated",
        budget: secs(30),
        evidence: Evidence::Decisive,
        run: fibonacci_adders,
    },
    Claim {
        id: "one-two-adder-figure",
        criterion: 6,
        title: "the drawn {1,2}* adder equals the carry construction",
        budget: secs(5),
        evidence: Evidence::Decisive,
        run: one_two_adder_claim,
    },
    Claim {
        id: "fib-kernel-table",
        criterion: 7,
        title: "Fibonacci kernel index maps",
        budget: secs(1),
        evidence: Evidence::Decisive,
        run: fibonacci_kernel_table,
    },
    Claim {
        id: "triangular-boundary",
        criterion: 8,
        title: "triangular word: constant 1-boundary, 2-boundary ab·∏cⁿde, valuations",
        budget: secs(10),
        evidence: Evidence::Decisive,
        run: triangular_boundary,
    },
    Claim {
        id: "squares-boundary",
        criterion: 9,
        title: "squares word: 1-boundary (babb)^ω",
        budget: secs(5),
        evidence: Evidence::Decisive,
        run: squares_boundary,
    },
    Claim {
        id: "mersenne-boundary",
        criterion: 10,
        title: "U = 2^{n+1} − 1: b positions and printed prefix",
        budget: secs(5),
        evidence: Evidence::Decisive,
        run: mersenne_boundary,
    },
    Claim {
        id: "v-system-boundary",
        criterion: 11,
        title: "V-system: gap-three representations and printed prefix",
        budget: secs(5),
        evidence: Evidence::Decisive,
        run: v_system_boundary,
    },
    Claim {
        id: "polygonal-claims",
        criterion: 12,
        title: "polygonal thresholds and aperiodicity evidence",
        budget: secs(30),
        evidence: Evidence::Finite,
        run: polygonal_claims,
    },
    Claim {
        id: "sturmian-route-agreement",
        criterion: 13,
        title: "oracle = rotation = block code; constellation figures",
        budget: secs(60),
        evidence: Evidence::Decisive,
        run: sturmian_routes,
    },
    Claim {
        id: "sturmian-morphism-h",
        criterion: 14,
        title: "boundary morphisms of the quadratic and π examples",
        budget: secs(60),
        evidence: Evidence::Decisive,
        run: sturmian_morphisms,
    },
    Claim {
        id: "sturmian-complexity-laws",
        criterion: 15,
        title: "complexity n + 2ℓ, the 1-boundary split, first-letter recurrence",
        budget: secs(30),
        evidence: Evidence::Decisive,
        run: sturmian_complexity,
    },
    Claim {
        id: "tribonacci-seven-sets",
        criterion: 16,
        title: "Tribonacci: seven 1-boundary sets, the first two once",
        budget: secs(30),
        evidence: Evidence::Finite,
        run: tribonacci_census,
    },
    Claim {
        id: "property-sweeps",
        criterion: 17,
        title: "rank/unrank, projection, eventual periodicity, kernel round trips",
        budget: secs(60),
        evidence: Evidence::Decisive,
        run: property_sweeps,
    },
];

/// The full 1-boundary set over `{0,1}`.
fn full_binary_set() -> BoundarySet {
    parse_sets(&BINARY_ONE_BOUNDARY_SETS)[1].clone()
}

/// The 1-boundary set without `(1,1)`.
fn sparse_binary_set() -> BoundarySet {
    parse_sets(&BINARY_ONE_BOUNDARY_SETS)[0].clone()
}

/// Oracle policy for the sparse characteristic words.
fn sparse_policy(max_n: usize) -> PrefixPolicy {
    PrefixPolicy::Doubling { start: (8 * (max_n + 8)).max(1 << 12), max: DEFAULT_MAX_SPARSE as usize }
}

/// Indices (from `start`) where `sets` is the full binary set.
fn full_positions(start: usize, sets: &[BoundarySet]) -> Vec<usize> {
    let full = full_binary_set();
    sets.iter().enumerate().filter(|(_, s)| **s == full).map(|(i, _)| start + i).collect()
}

/// Records that every set is either `a` or `b` of the binary 1-boundary.
fn check_binary_sets(c: &mut Checks, sets: &[BoundarySet]) {
    let (a, b) = (sparse_binary_set(), full_binary_set());
    let others = sets.iter().filter(|s| **s != a && **s != b).count();
    c.check("only the sets a and b", others == 0, format!("{others} other sets"));
}

fn fib_one_boundary(_: &ReproConfig, c: &mut Checks) -> Result<()> {
    let n = FIBONACCI_ONE_BOUNDARY.len();
    let word = boundary_word(&InfiniteWord::fibonacci(), 1, 1..=n, PrefixPolicy::doubling_for(n, DEFAULT_MAX_PREFIX))?;
    c.equal("word n=1..29", &FIBONACCI_ONE_BOUNDARY.to_string(), &word.render());
    c.equal("sets a, b", &parse_sets(&BINARY_ONE_BOUNDARY_SETS), &word.alphabet.sets().to_vec());
    Ok(())
}

fn fib_two_boundary(_: &ReproConfig, c: &mut Checks) -> Result<()> {
    let n = FIBONACCI_TWO_BOUNDARY.len() + 1;
    let word = boundary_word(&InfiniteWord::fibonacci(), 2, 2..=n, PrefixPolicy::doubling_for(n, DEFAULT_MAX_PREFIX))?;
    c.equal("word n=2..26", &FIBONACCI_TWO_BOUNDARY.to_string(), &word.render());
    c.equal("sets a–f", &parse_sets(&FIBONACCI_TWO_BOUNDARY_SETS), &word.alphabet.sets().to_vec());
    Ok(())
}

/// Compiles the 2-boundary DFAO of a built-in sequence and compares it
/// with a drawn automaton and a drawn morphism (up to renaming).
fn compiled_matches_drawing(
    c: &mut Checks,
    config: &ReproConfig,
    sequence: &str,
    adder: &AdditionAutomaton,
    figure: &Dfao,
    morphism: &str,
) -> Result<()> {
    let (ans, dfao) = builtin_sequence(sequence)?;
    let mut compiler = Compiler::new(Arc::new(ans)).with_adder(adder)?.with_budget(config.state_budget);
    compiler.add_sequence("X", &dfao)?;
    let compiled = boundary_dfao(&compiler, "X", 2)?;
    let domain = compiler.ans().valid_track();
    let difference = compiled.dfao.difference_on(figure, &domain)?;
    c.check(
        "DFAO equals the drawing",
        difference.is_none(),
        match &difference {
            None => format!("{} states", compiled.dfao.num_states()),
            Some(w) => format!("outputs differ on {}", domain.alphabet().render_word(w)),
        },
    );
    let presentation = dfao_to_morphic(&compiled.dfao, compiler.ans())?;
    let (names, expected) = parse_named_morphism(morphism)?;
    let map = renaming(&presentation.morphism, presentation.seed, &expected, 0);
    let ok = map.as_ref().is_some_and(|map| {
        map.iter()
            .enumerate()
            .all(|(ours, theirs)| theirs.is_some_and(|t| presentation.letter_names[ours] == names[t as usize]))
    });
    c.check(
        "morphism up to renaming",
        ok,
        format!("computed {}", presentation.morphism.render(&presentation.letter_names, &presentation.letter_names)),
    );
    Ok(())
}

fn thue_morse_two_boundary(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let max_n = config.thue_morse_max_n.max(THUE_MORSE_TWO_BOUNDARY.len() + 1);
    let word = boundary_word(
        &InfiniteWord::thue_morse(),
        2,
        2..=max_n,
        PrefixPolicy::doubling_for(max_n, DEFAULT_MAX_PREFIX),
    )?;
    let rendered = word.render();
    c.equal(
        "word n=2..35",
        &THUE_MORSE_TWO_BOUNDARY.to_string(),
        &rendered[..THUE_MORSE_TWO_BOUNDARY.len()].to_string(),
    );
    c.equal("sets a–g", &thue_morse_two_boundary_sets(), &word.alphabet.sets().to_vec());
    let letter = |n: usize| word.letters[n - 2];
    let power_of_four = |n: usize| n >= 4 && n.is_power_of_two() && n.trailing_zeros().is_multiple_of(2);
    let twice_power_of_four = |n: usize| n >= 8 && n.is_power_of_two() && n.trailing_zeros() % 2 == 1;
    type Law<'a> = (&'a str, u32, &'a dyn Fn(usize) -> bool);
    let laws: [Law; 3] = [
        ("c iff n = 4^k", 2, &power_of_four),
        ("f iff n = 2·4^k", 5, &twice_power_of_four),
        ("d iff n odd ≥ 5", 3, &|n: usize| n % 2 == 1 && n >= 5),
    ];
    for (name, l, law) in laws {
        let bad = (2..=max_n).find(|&n| (letter(n) == l) != law(n));
        c.check(
            name,
            bad.is_none(),
            match bad {
                None => format!("n ≤ {max_n}"),
                Some(n) => format!("fails at n = {n}"),
            },
        );
    }
    for l in [0u32, 1, 4] {
        let count = word.letters.iter().filter(|&&x| x == l).count();
        c.check(
            &format!("{} occurs once", crate::boundary::letter_name(l as usize)),
            count == 1,
            format!("{count} occurrences"),
        );
    }
    let adder = adder_builtin("base:2")?;
    compiled_matches_drawing(
        c,
        config,
        "thue-morse",
        &adder,
        &thue_morse_boundary_figure()?,
        THUE_MORSE_BOUNDARY_MORPHISM,
    )
}

fn fibonacci_two_boundary_dfao(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let adder = adder_explore(&PositionalSystem::fibonacci(), config.carry_bound, Direction::Msd)?;
    c.check("explored adder", true, format!("{} states", adder.num_states()));
    compiled_matches_drawing(c, config, "fibonacci", &adder, &fibonacci_boundary_figure()?, FIBONACCI_BOUNDARY_MORPHISM)
}

fn fibonacci_adders(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let sys = PositionalSystem::fibonacci();
    let msd = adder_explore(&sys, config.carry_bound, Direction::Msd)?;
    let lsd = adder_explore(&sys, config.carry_bound, Direction::Lsd)?;
    c.equal("msd states", &17, &msd.num_states());
    c.equal("lsd states", &22, &lsd.num_states());
    let ans = Ans::from_positional(sys);
    for (name, adder) in [("msd validation", &msd), ("lsd validation", &lsd)] {
        let report = adder_validate(adder, &ans, config.adder_bound)?;
        c.check(
            name,
            report.passed(),
            report
                .counterexample
                .unwrap_or_else(|| format!("{} pairs, x, y ≤ {}", report.pairs_checked, config.adder_bound)),
        );
    }
    Ok(())
}

fn one_two_adder_claim(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let drawn = one_two_adder_figure()?;
    let built = one_two_adder();
    let same = drawn.relation().canonicalize() == built.relation().canonicalize();
    c.check("drawing equals the construction", same, format!("{} / {} states", drawn.num_states(), built.num_states()));
    let report = adder_validate(&drawn, &Ans::one_two_star(), config.figure_adder_bound)?;
    c.check(
        "validation",
        report.passed(),
        report
            .counterexample
            .unwrap_or_else(|| format!("{} pairs, x, y ≤ {}", report.pairs_checked, config.figure_adder_bound)),
    );
    Ok(())
}

fn fibonacci_kernel_table(_: &ReproConfig, c: &mut Checks) -> Result<()> {
    let ans = Ans::builtin("fibonacci")?;
    for (suffix, expected) in FIBONACCI_KERNEL_ROWS {
        let word = ans.language().alphabet().parse_word(suffix)?;
        let (map, _) = index_map(&ans, &word, expected.len())?;
        c.equal(&format!("μ for suffix {suffix:?}"), &expected.to_vec(), &map);
    }
    Ok(())
}

fn triangular_boundary(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let max_n = config.constant_max_n;
    let sets = PolygonalFamily::new(1)?.boundary_sets(1..=max_n)?;
    let full = full_binary_set();
    let bad = sets.iter().position(|s| *s != full).map(|i| i + 1);
    c.check(
        "1-boundary is b^ω",
        bad.is_none(),
        match bad {
            None => format!("n = 1..{max_n}"),
            Some(n) => format!("differs at n = {n}"),
        },
    );

    let top = config.triangular_max_n;
    let mut expected = TRIANGULAR_TWO_BOUNDARY_HEAD.to_string();
    let mut block = 1;
    while expected.len() < top - 1 {
        expected.push_str(&"c".repeat(block));
        expected.push_str(TRIANGULAR_TWO_BOUNDARY_TAIL);
        block += 1;
    }
    expected.truncate(top - 1);
    let triangular = InfiniteWord::characteristic("triangular", SetGenerator::Triangular);
    let word = boundary_word(&triangular, 2, 2..=top, sparse_policy(top))?;
    c.equal(&format!("2-boundary n=2..{top}"), &expected, &word.render());
    c.equal("sets a–e", &parse_sets(&TRIANGULAR_TWO_BOUNDARY_SETS), &word.alphabet.sets().to_vec());

    let ans = Ans::astar_bstar();
    let limit = config.valuation_max;
    let mut bad = None;
    'outer: for i in 0..=limit {
        for j in 0..=limit - i {
            let mut w: Vec<Symbol> = vec![0; i];
            w.extend(std::iter::repeat_n(1, j));
            let m = (i + j) as u64;
            if ans.val(&w)? != m * (m + 1) / 2 + j as u64 {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    c.check(
        "val(αⁱβʲ) = T_{i+j} + j",
        bad.is_none(),
        match bad {
            None => format!("i + j ≤ {limit}"),
            Some((i, j)) => format!("fails at i = {i}, j = {j}"),
        },
    );
    Ok(())
}

fn squares_boundary(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let max_n = config.constant_max_n;
    let sets = PolygonalFamily::new(2)?.boundary_sets(1..=max_n)?;
    check_binary_sets(c, &sets);
    let full = full_binary_set();
    let rendered: String = sets.iter().map(|s| if *s == full { 'b' } else { 'a' }).collect();
    let expected: String = SQUARES_ONE_BOUNDARY_PERIOD.chars().cycle().take(max_n).collect();
    let bad = rendered.chars().zip(expected.chars()).position(|(x, y)| x != y).map(|i| i + 1);
    c.check(
        "1-boundary is (babb)^ω",
        bad.is_none(),
        match bad {
            None => format!("n = 1..{max_n}"),
            Some(n) => format!("differs at n = {n}"),
        },
    );
    Ok(())
}

/// Compares the start of a binary 1-boundary word with a printed prefix.
fn check_printed_prefix(c: &mut Checks, name: &str, printed: &str, sets: &[BoundarySet]) {
    let full = full_binary_set();
    let rendered: String = sets.iter().take(printed.len()).map(|s| if *s == full { 'b' } else { 'a' }).collect();
    c.equal(name, &printed.to_string(), &rendered);
}

fn mersenne_boundary(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let max_k = config.mersenne_max_k.max(MERSENNE_ONE_BOUNDARY.len());
    let word = InfiniteWord::characteristic("mersenne", SetGenerator::PowersMersenne);
    let sets = boundary_sets(&word, 1, 1..=max_k, sparse_policy(max_k))?.sets;
    check_binary_sets(c, &sets);
    let found = full_positions(1, &sets);
    let mut expected = Vec::new();
    for m in 1..64u32 {
        for n in 0..m {
            let k = (1u128 << (m + 1)) - (1u128 << (n + 1));
            if k <= max_k as u128 {
                expected.push(k as usize);
            }
        }
    }
    expected.sort_unstable();
    expected.dedup();
    c.equal("b positions = {2^{m+1} − 2^{n+1}}", &expected, &found);
    let ones_then_zeros = |k: usize| {
        let bits = format!("{k:b}");
        let ones = bits.trim_end_matches('0');
        ones.len() < bits.len() && ones.chars().all(|d| d == '1')
    };
    let bad = (1..=max_k).find(|&k| ones_then_zeros(k) != found.binary_search(&k).is_ok());
    c.check(
        "b iff binary expansion in 1⁺0⁺",
        bad.is_none(),
        match bad {
            None => format!("k ≤ {max_k}"),
            Some(k) => format!("fails at k = {k}"),
        },
    );
    check_printed_prefix(c, "printed prefix", MERSENNE_ONE_BOUNDARY, &sets);
    Ok(())
}

fn v_system_boundary(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let sys = PositionalSystem::v_quaternary();
    let terms = sys.terms();
    let digits = |n: u64| -> String { sys.greedy_rep(n).iter().map(|d| d.to_string()).collect() };
    let rows: Vec<String> = (0..V_SYSTEM_GAP_THREE_ROWS.len()).map(|m| digits(terms[m + 3] - terms[m])).collect();
    let printed: Vec<String> = V_SYSTEM_GAP_THREE_ROWS.iter().map(|s| s.to_string()).collect();
    let mismatched: Vec<usize> = (0..rows.len()).filter(|&m| rows[m] != printed[m]).collect();
    c.check(
        "rep_V(V_{m+3} − V_m), m = 0..14",
        mismatched.is_empty(),
        if mismatched.is_empty() {
            "all rows match".to_string()
        } else {
            format!(
                "rows {mismatched:?} differ; e.g. m = 0 computes {} but {} is printed",
                rows[mismatched[0]], printed[mismatched[0]]
            )
        },
    );
    let shifted: Vec<String> = (0..rows.len()).map(|m| digits(terms[m + 3] - terms[m] + 1)).collect();
    if shifted == printed {
        c.check(
            "printed rows read as rep_V(V_{m+3} − V_m + 1)",
            true,
            "every printed row equals the representation of the next integer",
        );
    }
    let agreement: Vec<usize> = rows
        .iter()
        .map(|r| r.chars().zip(V_SYSTEM_EXPANSION_PREFIX.chars()).take_while(|(x, y)| x == y).count())
        .collect();
    let growing = agreement.windows(2).skip(2).all(|w| w[0] <= w[1]) && agreement.last().copied().unwrap_or(0) >= 10;
    c.check("rows follow the expansion of 1 − 1/β³", growing, format!("common prefix lengths {agreement:?}"));

    let max_k = config.v_system_max_k.max(V_SYSTEM_ONE_BOUNDARY.len());
    let word = InfiniteWord::characteristic("v-system", SetGenerator::VSystem);
    let sets = boundary_sets(&word, 1, 1..=max_k, sparse_policy(max_k))?.sets;
    check_binary_sets(c, &sets);
    let mut expected: Vec<usize> = Vec::new();
    for (i, &hi) in terms.iter().enumerate() {
        for &lo in &terms[..i] {
            if hi - lo <= max_k as u64 {
                expected.push((hi - lo) as usize);
            }
        }
    }
    expected.sort_unstable();
    expected.dedup();
    c.equal("b positions = {V_{m+r} − V_m}", &expected, &full_positions(1, &sets));
    check_printed_prefix(c, "printed prefix", V_SYSTEM_ONE_BOUNDARY, &sets);
    Ok(())
}

fn polygonal_claims(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    for (s, p, i_max, j_max) in [(3, 7, 4, 3), (4, 5, 3, 2)] {
        let report = claim_check(s, p, i_max, j_max)?;
        let failures: Vec<String> = report
            .failures()
            .iter()
            .map(|f| {
                format!(
                    "i={} j={} value={} predicted={} representable={}",
                    f.i, f.j, f.value, f.predicted, f.representable
                )
            })
            .collect();
        c.check(
            &format!("thresholds s={s}, p={p}"),
            report.passed(),
            if failures.is_empty() { format!("{} cases agree", report.cases.len()) } else { failures.join("; ") },
        );
    }
    for s in 3..=5 {
        let period = PolygonalFamily::new(s)?.boundary_period(config.polygonal_scan, config.polygonal_max_period);
        c.check(
            &format!("no period for s={s}"),
            period.is_none(),
            match period {
                None => format!("none ≤ {} in {} letters", config.polygonal_max_period, config.polygonal_scan),
                Some((pre, per)) => format!("period {per} after {pre}"),
            },
        );
    }
    Ok(())
}

/// Prefix length for oracle runs on Sturmian words up to index `max_n`.
fn sturmian_prefix(max_n: usize) -> usize {
    (16 * (max_n + 16)).next_power_of_two()
}

fn sturmian_routes(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let max_n = config.sturmian_max_n;
    for slope in [Slope::golden(), Slope::one_minus_inverse_sqrt3()] {
        let word = slope.characteristic_word();
        let prefix = slope.characteristic_prefix(max_n + 16)?;
        for ell in 1..=4 {
            let partition = FactorPartition::new(&slope, ell)?;
            let code = block_code_table(&slope, ell, 1 << 13)?;
            let oracle = boundary_sets(&word, ell, ell..=max_n, PrefixPolicy::Fixed(sturmian_prefix(max_n)))?;
            let mut bad = None;
            for (i, expected) in oracle.sets.iter().enumerate() {
                let n = ell + i;
                let rotated = partition.boundary_set(n)?;
                let coded = if n > ell { Some(code.boundary_set(&prefix, n)?) } else { None };
                if &rotated != expected || coded.is_some_and(|s| s != expected) {
                    bad = Some(n);
                    break;
                }
            }
            c.check(
                &format!("{slope}, ℓ={ell}"),
                bad.is_none(),
                match bad {
                    None => format!("n = {ell}..{max_n}"),
                    Some(n) => format!("routes disagree at n = {n}"),
                },
            );
        }
    }
    let golden = FactorPartition::new(&Slope::golden(), 4)?;
    c.equal("σ at ℓ=4, n=17", &vec![2, 0, 3, 1, 4], &golden.constellation(17)?.sigma);
    let expected =
        BoundarySet::parse(FIBONACCI_FOUR_BOUNDARY_AT_17).unwrap_or_else(|| BoundarySet::new(4, 4, Vec::new()));
    c.equal("pairs at ℓ=4, n=17", &expected, &golden.boundary_set(17)?);
    let pi = FactorPartition::new(&Slope::half_pi_fraction(), 5)?;
    let sets = [pi.boundary_set(5)?, pi.boundary_set(21)?, pi.boundary_set(10)?];
    c.equal(
        "(π−3)/2, ℓ=5: |∂[5]|, |∂[21]|, |∂[10]|",
        &vec![11, 11, 12],
        &sets.iter().map(BoundarySet::len).collect::<Vec<_>>(),
    );
    c.check("(π−3)/2, ℓ=5: ∂[5] = ∂[21]", sets[0] == sets[1], "");
    Ok(())
}

fn sturmian_morphisms(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let sqrt3 = Slope::one_minus_inverse_sqrt3();
    let two_minus_sqrt3 = ContinuedFraction::of_quadratic(&QuadraticNumber::new(2, -1, 1, 3)?)?;
    let cases = [
        (sqrt3.clone(), 2, SQRT3_MORPHISMS[0], sqrt3.expansion().clone()),
        (sqrt3.clone(), 3, SQRT3_MORPHISMS[1], sqrt3.expansion().clone()),
        (sqrt3.clone(), 4, SQRT3_MORPHISMS[2], two_minus_sqrt3),
    ];
    for (slope, ell, expected, beta) in cases {
        let code = block_code_table(&slope, ell, 1 << 13)?;
        let h = morphism_h(&slope, &code)?;
        c.equal(&format!("{slope}, ℓ={ell}: h"), &expected.to_string(), &h.render());
        c.equal(&format!("{slope}, ℓ={ell}: β"), &beta, &h.beta);
        let valid = h.validate(&slope, &code, config.morphism_check_len);
        c.check(
            &format!("{slope}, ℓ={ell}: h(s_β) = T∂"),
            valid.is_ok(),
            valid.err().map_or_else(|| format!("{} letters", config.morphism_check_len), |e| e.to_string()),
        );
    }
    let pi = Slope::half_pi_fraction();
    let code = block_code_table(&pi, 2, 1 << 14)?;
    let h = morphism_h(&pi, &code)?;
    c.equal("(π−3)/2, ℓ=2: h", &PI_MORPHISM.to_string(), &h.render());
    let valid = h.validate(&pi, &code, config.morphism_check_len);
    c.check(
        "(π−3)/2, ℓ=2: h(s_β) = T∂",
        valid.is_ok(),
        valid.err().map_or_else(|| format!("β = {}", h.beta), |e| e.to_string()),
    );
    Ok(())
}

fn sturmian_complexity(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let max_n = config.complexity_max_n;
    let long = (64 * (max_n + 16)).next_power_of_two();
    for slope in [Slope::golden(), Slope::one_minus_inverse_sqrt3()] {
        let prefix = slope.characteristic_prefix(long)?;
        for ell in 2..=4 {
            let code = block_code_table(&slope, ell, 1 << 13)?;
            let shifted: Vec<Letter> = code.apply(&prefix)?.into_iter().map(|l| l as Letter).collect();
            let profile = complexity_profile(&shifted, max_n);
            let bad = (1..=max_n).find(|&n| profile[n - 1] != n + 2 * ell);
            c.check(
                &format!("{slope}, ℓ={ell}: p(n) = n + 2ℓ"),
                bad.is_none(),
                match bad {
                    None => format!("n ≤ {max_n}"),
                    Some(n) => format!("p({n}) = {}", profile[n - 1]),
                },
            );
        }
    }

    let fibonacci = Slope::golden().characteristic_word();
    let r = max_power_in(&fibonacci.prefix(long)?, &[0, 1]).exponent();
    c.equal("Fibonacci: largest power of 01", &2, &r);
    let span = 40 * max_n;
    let one = boundary_word(&fibonacci, 1, 1..=span, PrefixPolicy::Fixed(sturmian_prefix(span)))?;
    let profile = complexity_profile(&one.as_word(), max_n);
    let bad = (1..=max_n).find(|&n| profile[n - 1] != if n < 2 * r { n + 1 } else { n + 2 });
    c.check(
        "Fibonacci 1-boundary: n + 1 below 2r, n + 2 from 2r",
        bad.is_none(),
        match bad {
            None => format!("n ≤ {max_n}, starts {:?}", &profile[..5.min(max_n)]),
            Some(n) => format!("p({n}) = {}", profile[n - 1]),
        },
    );

    let scan = config.first_letter_scan;
    for slope in [Slope::golden(), Slope::one_minus_inverse_sqrt3()] {
        for ell in 1..=6 {
            let report = first_letter_recurrence(&slope, ell, scan)?;
            c.check(
                &format!("{slope}, ℓ={ell}: first letter"),
                report.consistent(),
                format!(
                    "{} (runs {}, norm {}, {} occurrences in {scan})",
                    if report.recurrent() { "recurrent" } else { "once" },
                    report.by_runs,
                    report.by_norm,
                    report.occurrences
                ),
            );
            if ell >= 2 {
                let word = slope.characteristic_word();
                let sets =
                    boundary_word(&word, ell, ell..=ell + scan, PrefixPolicy::Fixed(sturmian_prefix(ell + scan)))?;
                let expected = 2 * ell + 1 + usize::from(!report.recurrent());
                c.equal(&format!("{slope}, ℓ={ell}: letters"), &expected, &sets.alphabet.len());
            }
        }
    }
    Ok(())
}

fn tribonacci_census(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    let max_n = config.tribonacci_max_n;
    let (census, _) = alphabet_census(
        &InfiniteWord::tribonacci(),
        1,
        1..=max_n,
        PrefixPolicy::doubling_for(max_n, DEFAULT_MAX_PREFIX),
    )?;
    c.equal("distinct sets", &7, &census.len());
    let counts: Vec<usize> = census.iter().map(|e| e.count).collect();
    c.check(
        "first two occur once",
        counts.len() >= 2 && counts[0] == 1 && counts[1] == 1,
        format!("counts {counts:?}"),
    );
    c.check("the others recur", counts.iter().skip(2).all(|&n| n >= 2), format!("n ≤ {max_n}"));
    Ok(())
}

fn property_sweeps(config: &ReproConfig, c: &mut Checks) -> Result<()> {
    for name in [
        "base:2",
        "base:3",
        "fibonacci",
        "tribonacci",
        "ans:astar-bstar",
        "ans:one-two-star",
        "ans:astar-bstar-or-bstar-cstar",
    ] {
        let ans = Ans::builtin(name)?;
        let e = ans.enumerator();
        let mut bad = None;
        let mut previous: Option<Vec<Symbol>> = None;
        for i in 0..config.rank_sweep {
            let w = e.unrank(i as u128)?;
            let ordered = previous.as_ref().is_none_or(|p| e.genealogical_cmp(p, &w).is_lt());
            if e.rank(&w)? != i as u128 || !ordered {
                bad = Some(i);
                break;
            }
            previous = Some(w);
        }
        c.check(
            &format!("rank/unrank on {name}"),
            bad.is_none(),
            match bad {
                None => format!("first {} words", config.rank_sweep),
                Some(i) => format!("fails at index {i}"),
            },
        );
    }

    for (name, adder) in [
        ("base:2", adder_builtin("base:2")?),
        ("fibonacci", adder_explore(&PositionalSystem::fibonacci(), config.carry_bound, Direction::Msd)?),
    ] {
        let compiler =
            Compiler::new(Arc::new(Ans::builtin(name)?)).with_adder(&adder)?.with_budget(config.state_budget);
        let sum = compiler.compile_text("x + y = z")?;
        let projected = compiler.compile_text("E y x + y = z")?;
        let mut bad = None;
        'outer: for x in 0..40u64 {
            for z in 0..40u64 {
                let witnessed = z >= x && sum.accepts(&[x, z - x, z])?;
                if projected.accepts(&[x, z])? != (z >= x) || witnessed != (z >= x) {
                    bad = Some((x, z));
                    break 'outer;
                }
            }
        }
        c.check(
            &format!("projection on {name}"),
            bad.is_none(),
            match bad {
                None => "∃y x + y = z accepts exactly x ≤ z < 40".to_string(),
                Some((x, z)) => format!("fails at x = {x}, z = {z}"),
            },
        );
    }

    let mut bad = None;
    'words: for len_u in 0..=3usize {
        for len_v in 1..=3usize {
            for bits_u in 0..1u32 << len_u {
                for bits_v in 0..1u32 << len_v {
                    let u: Vec<Letter> = (0..len_u).map(|i| (bits_u >> i & 1) as Letter).collect();
                    let v: Vec<Letter> = (0..len_v).map(|i| (bits_v >> i & 1) as Letter).collect();
                    let word = InfiniteWord::periodic("uv", u.clone(), v.clone())?;
                    for ell in 1..=2 {
                        let from = ell.max(len_u);
                        let sets =
                            boundary_sets(&word, ell, from..=from + 4 * len_v + 8, PrefixPolicy::Fixed(256))?.sets;
                        if (0..sets.len() - len_v).any(|i| sets[i] != sets[i + len_v]) {
                            bad = Some(format!("u = {u:?}, v = {v:?}, ℓ = {ell}"));
                            break 'words;
                        }
                    }
                }
            }
        }
    }
    c.check("∂[n + |v|] = ∂[n] on u v^ω", bad.is_none(), bad.unwrap_or_else(|| "|u| ≤ 3, |v| ≤ 3, ℓ ≤ 2".into()));

    let fibonacci_numbers =
        InfiniteWord::characteristic("fibonacci-numbers", SetGenerator::Basis(Arc::new(PositionalSystem::fibonacci())));
    for (name, word, system) in [
        ("Thue–Morse", InfiniteWord::thue_morse(), "base:2"),
        ("Fibonacci numbers", fibonacci_numbers, "fibonacci"),
        ("Fibonacci word", InfiniteWord::fibonacci(), "fibonacci"),
    ] {
        let ans = Ans::builtin(system)?;
        let report = kernel_enumerate(&word, &ans, 6, 512)?;
        let dfao = dfao_from_kernel(&report, &word, &ans, 4096)?;
        let regenerated = InfiniteWord::automatic("resynthesized", Arc::new(ans), Arc::new(dfao.clone()))?;
        let same = regenerated.prefix(4096)? == word.prefix(4096)?;
        c.check(
            &format!("kernel round trip: {name}"),
            same,
            format!("{} classes, {} states", report.classes.len(), dfao.num_states()),
        );
    }
    Ok(())
}
