//! Subcommand implementations.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use boundary_core::automata::{to_dot, AutomatonJson, Direction};
use boundary_core::boundary::{boundary_sets, BoundaryWord, PrefixPolicy, DEFAULT_MAX_PREFIX};
use boundary_core::kernel::{dfao_from_kernel, kernel_enumerate};
use boundary_core::logic::{boundary_dfao, builtin_sequence, dfao_to_morphic, CompiledBoundary, Compiler};
use boundary_core::numeration::{
    adder_builtin, adder_explore, adder_validate, one_two_adder, AdditionAutomaton, Ans, PositionalSystem,
};
use boundary_core::polygonal::{claim_check, PolygonalFamily};
use boundary_core::repro::{claims, find_claim, repro_suite, ReproConfig};
use boundary_core::sturmian::{block_code_table, constellation, morphism_h, Slope};
use boundary_core::words::{InfiniteWord, WordSpec};

use super::{
    AdderArgs, BoundaryArgs, Cli, Command, CompileArgs, ExportCommand, KernelArgs, Limits, PolygonalArgs, ReproArgs,
    SturmianCommand, WordArgs, WordSource,
};

/// Writes to stdout; a closed pipe (`boundary … | head`) ends the process
/// quietly instead of panicking.
fn emit(text: std::fmt::Arguments<'_>, newline: bool) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let written = stdout.write_fmt(text).and_then(|()| if newline { stdout.write_all(b"\n") } else { Ok(()) });
    if let Err(e) = written {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*), false) };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!($($arg)*), true) };
}

/// Whether every check of a command passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// All checks passed.
    Pass,
    /// Some check failed.
    Fail,
}

impl Outcome {
    fn from_passed(passed: bool) -> Outcome {
        if passed {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Marks an error as a usage error (exit status 2).
#[derive(Debug)]
struct Usage;

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("usage error")
    }
}

impl std::error::Error for Usage {}

/// Exit status of an error: 2 for usage errors (unknown names, malformed
/// input, unreadable files), 1 for failed computations and validations.
pub fn exit_code_of(error: &anyhow::Error) -> u8 {
    use boundary_core::Error as E;
    for cause in error.chain() {
        if cause.is::<Usage>() || cause.is::<std::io::Error>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Unknown { .. } | E::Invalid(_) | E::Parse { .. } | E::Unbound { .. } | E::Subtraction(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<Outcome> {
    let json = cli.json;
    match cli.command {
        Command::Word(args) => word(&args, json),
        Command::Boundary(args) => boundary(&args, json),
        Command::Compile(args) => compile(&args, json),
        Command::Adder(args) => adder(&args, json),
        Command::Kernel(args) => kernel(&args, json),
        Command::Sturmian(command) => sturmian(&command, json),
        Command::Polygonal(args) => polygonal(&args, json),
        Command::Repro(args) => repro(&args, json),
        Command::Export(command) => export(&command),
    }
}

fn print_json(value: &Value) {
    outln!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn load_word(source: &WordSource) -> Result<InfiniteWord> {
    match (&source.word, &source.spec) {
        (Some(name), _) => Ok(InfiniteWord::builtin(name)?),
        (None, Some(path)) => {
            let spec = WordSpec::load(path)?;
            let base = path.parent().unwrap_or(Path::new("."));
            Ok(spec.build(base)?)
        }
        (None, None) => Err(anyhow::Error::new(Usage).context("give --word or --spec")),
    }
}

fn word(args: &WordArgs, json: bool) -> Result<Outcome> {
    let w = load_word(&args.source)?;
    let prefix = w.render_prefix(args.upto)?;
    if json {
        print_json(&json!({ "name": w.name(), "kind": w.kind(), "letters": w.letters(), "prefix": prefix }));
    } else {
        outln!("{prefix}");
    }
    Ok(Outcome::Pass)
}

fn oracle_word(args: &BoundaryArgs) -> Result<(InfiniteWord, BoundaryWord)> {
    let w = load_word(&args.source)?;
    let from = args.from.unwrap_or(args.ell);
    if from > args.upto {
        return Err(anyhow::Error::new(Usage).context(format!("empty range {from}..={}", args.upto)));
    }
    let policy = match args.prefix_len {
        Some(len) => PrefixPolicy::Fixed(len),
        None => PrefixPolicy::doubling_for(args.upto, DEFAULT_MAX_PREFIX),
    };
    let sets = boundary_sets(&w, args.ell, from..=args.upto, policy)?;
    Ok((w, BoundaryWord::from_sets(&sets)))
}

fn boundary(args: &BoundaryArgs, json: bool) -> Result<Outcome> {
    let (w, bw) = oracle_word(args)?;
    if json {
        print_json(&json!({
            "word": w.name(),
            "ell": args.ell,
            "start": bw.start,
            "boundary": bw.render(),
            "alphabet": bw.alphabet.to_json(w.letters()),
            "prefix_len": bw.prefix_len,
            "stabilized": bw.stabilized,
        }));
    } else {
        outln!("{}", bw.render());
        for line in bw.alphabet.legend(w.letters()) {
            outln!("{line}");
        }
    }
    // a fixed prefix is the caller's choice; a doubling scan that never
    // stabilized is an untrusted answer
    if args.prefix_len.is_none() && !bw.stabilized {
        eprintln!("warning: answer did not stabilize up to prefix length {}", bw.prefix_len);
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}

/// The adder a compiler over `ans_name` uses, if the system has one.
fn system_adder(name: &str, carry_bound: i64, direction: Direction) -> Result<Option<AdditionAutomaton>> {
    if name.starts_with("base:") {
        let adder = adder_builtin(name)?;
        return Ok(Some(match direction {
            Direction::Msd => adder.to_msd(),
            Direction::Lsd => adder.to_lsd(),
        }));
    }
    if name == "ans:one-two-star" {
        let adder = one_two_adder();
        return Ok(Some(match direction {
            Direction::Msd => adder.to_msd(),
            Direction::Lsd => adder.to_lsd(),
        }));
    }
    match PositionalSystem::builtin(name) {
        Ok(system) => Ok(Some(adder_explore(&system, carry_bound, direction)?)),
        Err(_) => Ok(None),
    }
}

fn compiler_for(ans: Ans, limits: &Limits) -> Result<Compiler> {
    let name = ans.name().to_string();
    let compiler = Compiler::new(Arc::new(ans)).with_budget(limits.state_budget);
    Ok(match system_adder(&name, limits.carry_bound, Direction::Msd)? {
        Some(adder) => compiler.with_adder(&adder)?,
        None => compiler,
    })
}

fn compile_boundary(sequence: &str, ell: usize, limits: &Limits) -> Result<(Compiler, CompiledBoundary)> {
    let (ans, dfao) = builtin_sequence(sequence)?;
    let mut compiler = compiler_for(ans, limits)?;
    compiler.add_sequence("X", &dfao)?;
    let compiled = boundary_dfao(&compiler, "X", ell)?;
    Ok((compiler, compiled))
}

fn compile(args: &CompileArgs, json: bool) -> Result<Outcome> {
    if args.boundary {
        let sequence = args.sequence.as_deref().expect("clap requires --sequence with --boundary");
        let (compiler, compiled) = compile_boundary(sequence, args.ell, &args.limits)?;
        let presentation = dfao_to_morphic(&compiled.dfao, compiler.ans())?;
        if args.dot {
            out!("{}", to_dot(compiled.dfao.base(), Some(&compiled.dfao), false));
        } else if json {
            print_json(&json!({
                "sequence": sequence,
                "ell": args.ell,
                "states": compiled.dfao.num_states(),
                "automaton": AutomatonJson::from_dfao(&compiled.dfao),
                "alphabet": compiled.alphabet.to_json(&compiled.word_letters),
                "morphism": presentation.render_morphism(),
                "coding": presentation.render_coding(),
            }));
        } else {
            outln!("states: {}", compiled.dfao.num_states());
            outln!("word: {}", compiled.word(compiler.ans(), 40)?.concat());
            for line in compiled.legend() {
                outln!("{line}");
            }
            outln!("morphism: {}", presentation.render_morphism());
            outln!("coding: {}", presentation.render_coding());
        }
        return Ok(Outcome::Pass);
    }
    let Some(text) = &args.formula else {
        return Err(anyhow::Error::new(Usage).context("give --formula, or --sequence with --boundary"));
    };
    let mut compiler = match (&args.sequence, &args.ans) {
        (Some(sequence), ans) => {
            let (own, dfao) = builtin_sequence(sequence)?;
            let ans = match ans {
                Some(name) => Ans::builtin(name)?,
                None => own,
            };
            let mut compiler = compiler_for(ans, &args.limits)?;
            compiler.add_sequence("X", &dfao)?;
            compiler
        }
        (None, ans) => compiler_for(Ans::builtin(ans.as_deref().unwrap_or("base:2"))?, &args.limits)?,
    };
    compiler = compiler.with_budget(args.limits.state_budget);
    let predicate = compiler.compile_text(text)?;
    if args.dot {
        out!("{}", to_dot(predicate.dfa(), None, true));
        return Ok(Outcome::Pass);
    }
    let members = match args.list {
        Some(limit) if predicate.arity() == 1 => Some(predicate.members_below(limit)?),
        Some(_) => return Err(anyhow::Error::new(Usage).context("--list needs exactly one free variable")),
        None => None,
    };
    let truth = if predicate.arity() == 0 { Some(predicate.truth()?) } else { None };
    if json {
        print_json(&json!({
            "predicate": predicate.to_json(),
            "truth": truth,
            "members": members,
        }));
    } else {
        outln!("free variables: {}", predicate.vars().join(", "));
        outln!("states: {}", predicate.dfa().num_states());
        if let Some(truth) = truth {
            outln!("truth: {truth}");
        }
        if let Some(members) = members {
            let rendered: Vec<String> = members.iter().map(u64::to_string).collect();
            outln!("members: {}", rendered.join(" "));
        }
    }
    Ok(Outcome::Pass)
}

fn adder(args: &AdderArgs, json: bool) -> Result<Outcome> {
    let direction = if args.lsd { Direction::Lsd } else { Direction::Msd };
    let Some(adder) = system_adder(&args.system, args.carry_bound, direction)? else {
        return Err(anyhow::Error::new(Usage).context(format!("no adder for system `{}`", args.system)));
    };
    let ans = Ans::builtin(&args.system)?;
    let report = adder_validate(&adder, &ans, args.validate)?;
    if args.dot {
        out!("{}", to_dot(adder.relation(), None, true));
    } else if json {
        print_json(&json!({
            "system": args.system,
            "direction": adder.direction(),
            "states": adder.num_states(),
            "pairs_checked": report.pairs_checked,
            "counterexample": report.counterexample,
            "automaton": AutomatonJson::from_dfa(adder.relation()),
        }));
    } else {
        outln!("system: {}", args.system);
        outln!("direction: {}", if args.lsd { "lsd" } else { "msd" });
        outln!("states: {}", adder.num_states());
        match &report.counterexample {
            None => outln!("validation: pass ({} pairs, x, y ≤ {})", report.pairs_checked, args.validate),
            Some(c) => outln!("validation: FAIL ({c})"),
        }
    }
    Ok(Outcome::from_passed(report.passed()))
}

fn kernel(args: &KernelArgs, json: bool) -> Result<Outcome> {
    let w = load_word(&args.source)?;
    let ans = Ans::builtin(&args.ans)?;
    let report = kernel_enumerate(&w, &ans, args.depth, args.compare)?;
    let alphabet = ans.language().alphabet();
    let suffix = |s: &[u32]| if s.is_empty() { "ε".to_string() } else { alphabet.render_word(s) };
    let representatives: Vec<String> = report.classes.iter().map(|c| suffix(&c.suffix)).collect();
    let dfao = if report.stabilized { Some(dfao_from_kernel(&report, &w, &ans, args.validate)?) } else { None };
    if args.dot {
        let Some(dfao) = &dfao else { bail!("kernel enumeration has not stabilized; raise --depth") };
        out!("{}", to_dot(dfao.base(), Some(dfao), false));
    } else if json {
        print_json(&json!({
            "word": w.name(),
            "numeration": ans.name(),
            "classes": representatives,
            "classes_by_length": report.classes_by_length,
            "stabilized": report.stabilized,
            "states": dfao.as_ref().map(|d| d.num_states()),
            "automaton": dfao.as_ref().map(AutomatonJson::from_dfao),
        }));
    } else {
        outln!("classes: {}", report.classes.len());
        outln!("representatives: {}", representatives.join(" "));
        let counts: Vec<String> = report.classes_by_length.iter().map(usize::to_string).collect();
        outln!("classes by suffix length: {}", counts.join(" "));
        match &dfao {
            Some(d) => {
                outln!("resynthesized automaton: {} states, validated on {} letters", d.num_states(), args.validate)
            }
            None => outln!("not stabilized at depth {}", args.depth),
        }
    }
    Ok(Outcome::from_passed(report.stabilized))
}

fn digits(word: &[u8]) -> String {
    word.iter().map(|d| d.to_string()).collect()
}

fn sturmian(command: &SturmianCommand, json: bool) -> Result<Outcome> {
    match command {
        SturmianCommand::Blockcode(args) => {
            let slope = Slope::parse(&args.slope)?;
            let code = block_code_table(&slope, args.ell, args.scan)?;
            let names = ["0".to_string(), "1".to_string()];
            if json {
                let entries: Vec<Value> =
                    code.entries().map(|(block, letter)| json!({ "block": digits(block), "letter": letter })).collect();
                print_json(&json!({
                    "slope": slope.to_string(),
                    "ell": args.ell,
                    "entries": entries,
                    "alphabet": code.alphabet().to_json(&names),
                }));
            } else {
                let letters = code.alphabet().names();
                for (block, letter) in code.entries() {
                    outln!("{} -> {}", digits(block), letters[letter as usize]);
                }
                for line in code.alphabet().legend(&names) {
                    outln!("{line}");
                }
            }
            Ok(Outcome::Pass)
        }
        SturmianCommand::Morphism(args) => {
            let slope = Slope::parse(&args.slope.slope)?;
            let code = block_code_table(&slope, args.slope.ell, args.slope.scan)?;
            let h = morphism_h(&slope, &code)?;
            let validation = h.validate(&slope, &code, args.validate);
            if json {
                print_json(&json!({
                    "slope": slope.to_string(),
                    "ell": args.slope.ell,
                    "k": h.k,
                    "beta": h.beta.to_string(),
                    "morphism": h.render(),
                    "validated_letters": args.validate,
                    "validation": validation.as_ref().err().map(ToString::to_string),
                }));
            } else {
                outln!("k: {}", h.k);
                outln!("beta: {}", h.beta);
                outln!("h: {}", h.render());
                match &validation {
                    Ok(()) => outln!("validation: pass ({} letters)", args.validate),
                    Err(e) => outln!("validation: FAIL ({e})"),
                }
            }
            Ok(Outcome::from_passed(validation.is_ok()))
        }
        SturmianCommand::Constellation(args) => {
            let slope = Slope::parse(&args.slope)?;
            let (stars, set) = constellation(&slope, args.ell, args.n)?;
            let names = ["0".to_string(), "1".to_string()];
            if json {
                print_json(&json!({
                    "slope": slope.to_string(),
                    "ell": args.ell,
                    "n": stars.n,
                    "sigma": stars.sigma,
                    "boundary_set": set.render(&names),
                }));
            } else {
                let sigma: Vec<String> = stars.sigma.iter().map(usize::to_string).collect();
                outln!("sigma: [{}]", sigma.join(", "));
                outln!("boundary set: {}", set.render(&names));
            }
            Ok(Outcome::Pass)
        }
    }
}

fn polygonal(args: &PolygonalArgs, json: bool) -> Result<Outcome> {
    let family = PolygonalFamily::new(args.s)?;
    let word: String = family.boundary_letters(1..=args.upto).into_iter().map(|b| if b { 'b' } else { 'a' }).collect();
    let period = family.boundary_period(args.scan, args.max_period);
    let claims = match (args.check_claims, args.p) {
        (true, Some(p)) => Some(claim_check(args.s, p, args.i_max, args.j_max)?),
        _ => None,
    };
    let passed = claims.as_ref().is_none_or(|c| c.passed());
    if json {
        print_json(&json!({
            "s": args.s,
            "boundary": word,
            "period": period.map(|(preperiod, period)| json!({ "preperiod": preperiod, "period": period })),
            "scan": args.scan,
            "claims": claims,
        }));
    } else {
        outln!("boundary k=1..{}: {word}", args.upto);
        match period {
            Some((preperiod, period)) => outln!("eventual period {period} after {preperiod} letters"),
            None => outln!(
                "no eventual period ≤ {} within {} letters (consistent with aperiodicity)",
                args.max_period,
                args.scan
            ),
        }
        if let Some(report) = &claims {
            outln!("threshold claims, s = {}, p = {}:", report.s, report.p);
            for case in &report.cases {
                outln!(
                    "  i={} j={} value={} predicted={} representable={} {}",
                    case.i,
                    case.j,
                    case.value,
                    case.predicted,
                    case.representable,
                    if case.predicted == case.representable { "ok" } else { "MISMATCH" }
                );
            }
            outln!("claims: {}", if report.passed() { "pass" } else { "FAIL" });
        }
    }
    Ok(Outcome::from_passed(passed))
}

fn repro_config(args: &ReproArgs) -> Result<ReproConfig> {
    let mut config = ReproConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        config.apply_text(&text)?;
    }
    for entry in &args.overrides {
        let Some((key, value)) = entry.split_once('=') else {
            return Err(anyhow::Error::new(Usage).context(format!("--set expects key=value, found `{entry}`")));
        };
        config.set(key.trim(), value.trim())?;
    }
    Ok(config)
}

fn repro(args: &ReproArgs, json: bool) -> Result<Outcome> {
    if args.list {
        for claim in claims() {
            outln!("{:>2} {:<28} {}", claim.criterion, claim.id, claim.title);
        }
        return Ok(Outcome::Pass);
    }
    let config = repro_config(args)?;
    for id in &args.claims {
        find_claim(id)?;
    }
    let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let selection: Vec<&str> = args.claims.iter().map(String::as_str).collect();
    let report = repro_suite(&selection, &config, jobs)?;
    if json {
        let mut value = serde_json::to_value(&report)?;
        if !args.timings {
            for result in value["results"].as_array_mut().into_iter().flatten() {
                if let Some(fields) = result.as_object_mut() {
                    fields.remove("runtime_secs");
                }
            }
        }
        print_json(&value);
    } else {
        for result in &report.results {
            let timing = if args.timings {
                format!("  {:.2}s / {:.0}s", result.runtime_secs, result.budget_secs)
            } else {
                String::new()
            };
            outln!("{:>2} {:<28} {}{timing}", result.criterion, result.id, result.status);
            for check in &result.checks {
                outln!("     [{}] {}: {}", if check.ok { "ok" } else { "FAILED" }, check.name, check.detail);
            }
        }
        let failed = report.results.iter().filter(|r| !r.status.holds()).count();
        outln!("{} claims, {} failed", report.results.len(), failed);
    }
    Ok(Outcome::from_passed(report.passed()))
}

fn export(command: &ExportCommand) -> Result<Outcome> {
    match command {
        ExportCommand::Numeration { ans, dot } => {
            let ans = Ans::builtin(ans)?;
            if *dot {
                out!("{}", to_dot(ans.language(), None, true));
            } else {
                outln!("{}", AutomatonJson::from_dfa(ans.language()).to_string_pretty());
            }
            Ok(Outcome::Pass)
        }
        ExportCommand::BoundaryAlphabet(args) => {
            let (w, bw) = oracle_word(args)?;
            print_json(&bw.alphabet.to_json(w.letters()));
            Ok(Outcome::from_passed(args.prefix_len.is_some() || bw.stabilized))
        }
        ExportCommand::BoundaryDfao { sequence, ell, dot, limits } => {
            let (_, compiled) = compile_boundary(sequence, *ell, limits)?;
            if *dot {
                out!("{}", to_dot(compiled.dfao.base(), Some(&compiled.dfao), false));
            } else {
                outln!("{}", AutomatonJson::from_dfao(&compiled.dfao).to_string_pretty());
            }
            Ok(Outcome::Pass)
        }
    }
}
