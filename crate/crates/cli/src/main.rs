//! `boundary`: command-line front end for boundary-sequence computations
//! and the claim suite.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! usage errors (bad flags, unknown names, unreadable or malformed input).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Boundary sequences of infinite words.
#[derive(Debug, Parser)]
#[command(name = "boundary", version, about)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of a word.
    Word(WordArgs),
    /// Print an ℓ-boundary word computed from word prefixes, with a legend.
    Boundary(BoundaryArgs),
    /// Compile a first-order formula or the boundary automaton of a sequence.
    Compile(CompileArgs),
    /// Build and validate an addition automaton.
    Adder(AdderArgs),
    /// Enumerate the kernel of a word and resynthesize its automaton.
    Kernel(KernelArgs),
    /// Sturmian constructions.
    #[command(subcommand)]
    Sturmian(SturmianCommand),
    /// Words of polygonal numbers and their threshold claims.
    Polygonal(PolygonalArgs),
    /// Run the claim suite (all claims, or the named ones).
    Repro(ReproArgs),
    /// Export automata and boundary alphabets.
    #[command(subcommand)]
    Export(ExportCommand),
}

/// Selects a word by built-in name or spec file.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct WordSource {
    /// Built-in word (`fibonacci`, `thue-morse`, `tribonacci`, `triangular`,
    /// `squares`, `polygonal:s`, `powers-mersenne`, `v-system`).
    #[arg(long)]
    word: Option<String>,
    /// Word spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WordArgs {
    #[command(flatten)]
    source: WordSource,
    /// Number of letters to print.
    #[arg(long, default_value_t = 50)]
    upto: usize,
}

#[derive(Debug, Args)]
struct BoundaryArgs {
    #[command(flatten)]
    source: WordSource,
    /// Boundary length ℓ.
    #[arg(long, default_value_t = 1)]
    ell: usize,
    /// Last index.
    #[arg(long, default_value_t = 30)]
    upto: usize,
    /// First index (defaults to ℓ).
    #[arg(long)]
    from: Option<usize>,
    /// Scan exactly this prefix length instead of doubling until stable.
    #[arg(long)]
    prefix_len: Option<usize>,
}

#[derive(Debug, Args)]
struct CompileArgs {
    /// Built-in automatic sequence, bound as `X` in formulas.
    #[arg(long)]
    sequence: Option<String>,
    /// Numeration system (defaults to the sequence's system, else `base:2`).
    #[arg(long)]
    ans: Option<String>,
    /// Formula to compile.
    #[arg(long, conflicts_with = "boundary")]
    formula: Option<String>,
    /// Compile the ℓ-boundary automaton of `--sequence`.
    #[arg(long, requires = "sequence")]
    boundary: bool,
    /// Boundary length ℓ.
    #[arg(long, default_value_t = 2)]
    ell: usize,
    /// List the members below this bound (one free variable only).
    #[arg(long)]
    list: Option<u64>,
    /// Print Graphviz DOT.
    #[arg(long)]
    dot: bool,
    #[command(flatten)]
    limits: Limits,
}

/// Resource limits of the formula compiler.
#[derive(Debug, Args)]
struct Limits {
    /// Carry bound for adder exploration.
    #[arg(long, default_value_t = boundary_core::numeration::DEFAULT_CARRY_BOUND)]
    carry_bound: i64,
    /// Largest automaton the compiler may build.
    #[arg(long, default_value_t = boundary_core::logic::DEFAULT_STATE_BUDGET)]
    state_budget: usize,
}

#[derive(Debug, Args)]
struct AdderArgs {
    /// Numeration system (`base:k`, `fibonacci`, `tribonacci`, `mersenne`, `ans:one-two-star`).
    #[arg(long)]
    system: String,
    /// Read least significant digit first.
    #[arg(long)]
    lsd: bool,
    /// Carry bound for exploration.
    #[arg(long, default_value_t = boundary_core::numeration::DEFAULT_CARRY_BOUND)]
    carry_bound: i64,
    /// Validate on all pairs `x, y ≤` this bound.
    #[arg(long, default_value_t = 100)]
    validate: u64,
    /// Print Graphviz DOT.
    #[arg(long)]
    dot: bool,
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[command(flatten)]
    source: WordSource,
    /// Numeration system.
    #[arg(long)]
    ans: String,
    /// Longest suffix examined.
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// Terms compared per kernel element.
    #[arg(long, default_value_t = 512)]
    compare: usize,
    /// Letters on which the resynthesized automaton is validated.
    #[arg(long, default_value_t = 4096)]
    validate: usize,
    /// Print the resynthesized automaton as Graphviz DOT.
    #[arg(long)]
    dot: bool,
}

#[derive(Debug, Subcommand)]
enum SturmianCommand {
    /// The block code reading boundary letters off windows of length 2ℓ.
    Blockcode(SlopeArgs),
    /// The morphism presenting the shifted boundary word.
    Morphism(MorphismArgs),
    /// Where the rotated factor-interval endpoints fall at index n.
    Constellation(ConstellationArgs),
}

#[derive(Debug, Args)]
struct SlopeArgs {
    /// Slope: `golden`, `sqrt3`, `pi`, `quad:(a,b,c,d)` or `cf:[…] period:[…]`.
    #[arg(long)]
    slope: String,
    /// Boundary length ℓ.
    #[arg(long, default_value_t = 2)]
    ell: usize,
    /// Prefix length scanned for blocks.
    #[arg(long, default_value_t = 4096)]
    scan: usize,
}

#[derive(Debug, Args)]
struct MorphismArgs {
    #[command(flatten)]
    slope: SlopeArgs,
    /// Letters on which the morphic image is compared with the block code.
    #[arg(long, default_value_t = 2000)]
    validate: usize,
}

#[derive(Debug, Args)]
struct ConstellationArgs {
    /// Slope, as for `blockcode`.
    #[arg(long)]
    slope: String,
    /// Factor length ℓ.
    #[arg(long, default_value_t = 2)]
    ell: usize,
    /// The index n.
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct PolygonalArgs {
    /// Family parameter (1 triangular, 2 squares, 3 pentagonal, …).
    #[arg(long)]
    s: u64,
    /// Print the 1-boundary word for k = 1..=upto.
    #[arg(long, default_value_t = 60)]
    upto: u64,
    /// Scan length for eventual-period detection.
    #[arg(long, default_value_t = 10_000)]
    scan: u64,
    /// Largest period looked for.
    #[arg(long, default_value_t = 500)]
    max_period: usize,
    /// Check the representability thresholds.
    #[arg(long, requires = "p")]
    check_claims: bool,
    /// Prime congruent to 1 modulo s.
    #[arg(long)]
    p: Option<u64>,
    /// Largest exponent of s (or s/2).
    #[arg(long, default_value_t = 4)]
    i_max: u32,
    /// Largest exponent of p.
    #[arg(long, default_value_t = 3)]
    j_max: u32,
}

#[derive(Debug, Args)]
struct ReproArgs {
    /// Claim id to run (repeatable; all claims when absent).
    #[arg(long = "claim")]
    claims: Vec<String>,
    /// Claims run concurrently.
    #[arg(long)]
    jobs: Option<usize>,
    /// Configuration file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Configuration override `key=value` (repeatable; applied after `--config`).
    #[arg(long = "set")]
    overrides: Vec<String>,
    /// List the claims and exit.
    #[arg(long)]
    list: bool,
    /// Include runtimes (makes the output time-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum ExportCommand {
    /// The representation language of a numeration system.
    Numeration {
        /// System name.
        #[arg(long)]
        ans: String,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// The boundary alphabet found by the window oracle.
    BoundaryAlphabet(BoundaryArgs),
    /// The compiled boundary automaton of a built-in sequence.
    BoundaryDfao {
        /// Built-in automatic sequence.
        #[arg(long)]
        sequence: String,
        /// Boundary length ℓ.
        #[arg(long, default_value_t = 2)]
        ell: usize,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        limits: Limits,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(commands::exit_code_of(&error))
        }
    }
}
