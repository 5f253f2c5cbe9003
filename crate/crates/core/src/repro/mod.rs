//! Executable reproduction claims and the reference data they compare to.
//!
//! Every acceptance criterion is bound to one claim with a stable id.  A
//! claim runs a list of named checks under a [`ReproConfig`] and reports
//! `pass`, `fail`, or `consistent-with` (all checks hold, but the statement
//! concerns an infinite object and only finite evidence was examined).

mod claims;
pub mod golden;

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::DEFAULT_STATE_BUDGET;
use crate::numeration::DEFAULT_CARRY_BOUND;

/// Outcome of a claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    /// Every check holds and the checks decide the statement.
    Pass,
    /// Some check failed (or the claim could not be evaluated).
    Fail,
    /// Every check holds on the examined finite evidence.
    ConsistentWith,
}

impl ClaimStatus {
    /// Whether the claim holds (`pass` or `consistent-with`).
    pub fn holds(self) -> bool {
        self != ClaimStatus::Fail
    }
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::ConsistentWith => "consistent-with",
        })
    }
}

/// One named check inside a claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Short name.
    pub name: String,
    /// Whether it held.
    pub ok: bool,
    /// What was compared.
    pub detail: String,
}

/// Characters of a matched value shown in a passing check's detail.
const MATCHED_DETAIL_CHARS: usize = 96;

/// Accumulates the checks of one claim.
#[derive(Clone, Debug, Default)]
pub struct Checks {
    items: Vec<Check>,
}

impl Checks {
    /// Records a check.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> bool {
        self.items.push(Check { name: name.to_string(), ok, detail: detail.into() });
        ok
    }

    /// Records `expected == actual`, rendering both in full on mismatch and
    /// an abbreviated value on success.
    pub fn equal<T: PartialEq + fmt::Debug>(&mut self, name: &str, expected: &T, actual: &T) -> bool {
        let ok = expected == actual;
        let detail = if ok {
            let full = format!("{actual:?}");
            match full.char_indices().nth(MATCHED_DETAIL_CHARS) {
                Some((cut, _)) => format!("{}…", &full[..cut]),
                None => full,
            }
        } else {
            format!("expected {expected:?}, got {actual:?}")
        };
        self.check(name, ok, detail)
    }

    /// Whether every recorded check held.
    pub fn all_ok(&self) -> bool {
        self.items.iter().all(|c| c.ok)
    }

    /// The recorded checks.
    pub fn into_items(self) -> Vec<Check> {
        self.items
    }
}

/// How a claim's checks turn into a status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// The checks decide the statement.
    Decisive,
    /// The checks are finite evidence for a statement about infinite words.
    Finite,
}

/// Bounds used by the claims; every field can be set from a `key=value`
/// configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproConfig {
    /// Carry bound of adder exploration.
    pub carry_bound: i64,
    /// State budget of the formula compiler.
    pub state_budget: usize,
    /// `x, y ≤ adder_bound` in Fibonacci adder validation.
    pub adder_bound: u64,
    /// `x, y ≤ figure_adder_bound` in the drawn adder's validation.
    pub figure_adder_bound: u64,
    /// Largest `n` of the Thue–Morse index characterizations.
    pub thue_morse_max_n: usize,
    /// Largest `n` of the constant/periodic 1-boundary checks.
    pub constant_max_n: usize,
    /// Largest `n` of the triangular 2-boundary structure check.
    pub triangular_max_n: usize,
    /// Largest `i + j` of the `α*β*` valuation identity.
    pub valuation_max: usize,
    /// Largest `k` of the `2^{n+1} − 1` characterization.
    pub mersenne_max_k: usize,
    /// Largest `k` of the V-system characterization.
    pub v_system_max_k: usize,
    /// Scanned length of the polygonal aperiodicity checks.
    pub polygonal_scan: u64,
    /// Largest period searched in the polygonal aperiodicity checks.
    pub polygonal_max_period: usize,
    /// Largest `n` of the Sturmian route agreement.
    pub sturmian_max_n: usize,
    /// Letters compared when validating a boundary morphism.
    pub morphism_check_len: usize,
    /// Largest factor length of the complexity laws.
    pub complexity_max_n: usize,
    /// Scanned length of the first-letter recurrence checks.
    pub first_letter_scan: usize,
    /// Largest `n` of the Tribonacci census.
    pub tribonacci_max_n: usize,
    /// Number of words per language in the rank/unrank sweep.
    pub rank_sweep: u64,
}

impl Default for ReproConfig {
    fn default() -> ReproConfig {
        ReproConfig {
            carry_bound: DEFAULT_CARRY_BOUND,
            state_budget: DEFAULT_STATE_BUDGET,
            adder_bound: 500,
            figure_adder_bound: 200,
            thue_morse_max_n: 1 << 12,
            constant_max_n: 5000,
            triangular_max_n: 40,
            valuation_max: 60,
            mersenne_max_k: 1 << 14,
            v_system_max_k: 1 << 14,
            polygonal_scan: 10_000,
            polygonal_max_period: 500,
            sturmian_max_n: 1000,
            morphism_check_len: 2000,
            complexity_max_n: 100,
            first_letter_scan: 3000,
            tribonacci_max_n: 5000,
            rank_sweep: 2000,
        }
    }
}

impl ReproConfig {
    /// The configuration keys, in declaration order.
    pub const KEYS: [&'static str; 18] = [
        "carry_bound",
        "state_budget",
        "adder_bound",
        "figure_adder_bound",
        "thue_morse_max_n",
        "constant_max_n",
        "triangular_max_n",
        "valuation_max",
        "mersenne_max_k",
        "v_system_max_k",
        "polygonal_scan",
        "polygonal_max_period",
        "sturmian_max_n",
        "morphism_check_len",
        "complexity_max_n",
        "first_letter_scan",
        "tribonacci_max_n",
        "rank_sweep",
    ];

    /// Sets one field from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value.trim().parse().map_err(|_| Error::Invalid(format!("bad value `{value}` for `{key}`")))
        }
        match key.trim() {
            "carry_bound" => self.carry_bound = parse(key, value)?,
            "state_budget" => self.state_budget = parse(key, value)?,
            "adder_bound" => self.adder_bound = parse(key, value)?,
            "figure_adder_bound" => self.figure_adder_bound = parse(key, value)?,
            "thue_morse_max_n" => self.thue_morse_max_n = parse(key, value)?,
            "constant_max_n" => self.constant_max_n = parse(key, value)?,
            "triangular_max_n" => self.triangular_max_n = parse(key, value)?,
            "valuation_max" => self.valuation_max = parse(key, value)?,
            "mersenne_max_k" => self.mersenne_max_k = parse(key, value)?,
            "v_system_max_k" => self.v_system_max_k = parse(key, value)?,
            "polygonal_scan" => self.polygonal_scan = parse(key, value)?,
            "polygonal_max_period" => self.polygonal_max_period = parse(key, value)?,
            "sturmian_max_n" => self.sturmian_max_n = parse(key, value)?,
            "morphism_check_len" => self.morphism_check_len = parse(key, value)?,
            "complexity_max_n" => self.complexity_max_n = parse(key, value)?,
            "first_letter_scan" => self.first_letter_scan = parse(key, value)?,
            "tribonacci_max_n" => self.tribonacci_max_n = parse(key, value)?,
            "rank_sweep" => self.rank_sweep = parse(key, value)?,
            other => return Err(Error::Unknown { kind: "configuration key", name: other.to_string() }),
        }
        Ok(())
    }

    /// Applies a `key = value` text (blank lines and `#` comments ignored).
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("line {}: expected `key = value`", i + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }
}

/// A registered claim.
#[derive(Clone, Copy)]
pub struct Claim {
    /// Stable id (`fib-adder-17`, …).
    pub id: &'static str,
    /// Acceptance criterion number.
    pub criterion: u32,
    /// One-line description.
    pub title: &'static str,
    /// Runtime budget on one desktop core.
    pub budget: Duration,
    /// Decisive or finite evidence.
    pub evidence: Evidence,
    run: fn(&ReproConfig, &mut Checks) -> Result<()>,
}

impl fmt::Debug for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).field("criterion", &self.criterion).finish()
    }
}

impl Claim {
    /// Runs the claim and times it; an error becomes a failed check.
    pub fn run(&self, config: &ReproConfig) -> ClaimResult {
        let start = Instant::now();
        let mut checks = Checks::default();
        if let Err(e) = (self.run)(config, &mut checks) {
            checks.check("evaluation", false, e.to_string());
        }
        let runtime = start.elapsed();
        let status = match (checks.all_ok(), self.evidence) {
            (false, _) => ClaimStatus::Fail,
            (true, Evidence::Decisive) => ClaimStatus::Pass,
            (true, Evidence::Finite) => ClaimStatus::ConsistentWith,
        };
        ClaimResult {
            id: self.id.to_string(),
            criterion: self.criterion,
            title: self.title.to_string(),
            status,
            checks: checks.into_items(),
            runtime_secs: runtime.as_secs_f64(),
            budget_secs: self.budget.as_secs_f64(),
        }
    }
}

/// The result of one claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimResult {
    /// Claim id.
    pub id: String,
    /// Acceptance criterion number.
    pub criterion: u32,
    /// Description.
    pub title: String,
    /// Outcome.
    pub status: ClaimStatus,
    /// The individual checks.
    pub checks: Vec<Check>,
    /// Wall-clock runtime.
    pub runtime_secs: f64,
    /// Runtime budget.
    pub budget_secs: f64,
}

impl ClaimResult {
    /// Whether the claim held within its runtime budget.
    pub fn within_budget(&self) -> bool {
        self.runtime_secs <= self.budget_secs
    }

    /// The failed checks.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    /// A one-line summary: `[criterion] id status (runtime / budget)`.
    pub fn summary(&self) -> String {
        format!(
            "{:>2} {:<28} {:<15} {:>8.2}s / {:>3.0}s  {}",
            self.criterion, self.id, self.status, self.runtime_secs, self.budget_secs, self.title
        )
    }
}

/// Results of a claim selection, in registry order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproReport {
    /// One entry per claim.
    pub results: Vec<ClaimResult>,
}

impl ReproReport {
    /// Whether every claim held.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status.holds())
    }
}

/// All claims, by criterion.
pub fn claims() -> &'static [Claim] {
    claims::REGISTRY
}

/// The claim with id `id`.
pub fn find_claim(id: &str) -> Result<&'static Claim> {
    claims().iter().find(|c| c.id == id).ok_or_else(|| Error::Unknown { kind: "claim", name: id.to_string() })
}

/// Runs the selected claims (all when `selection` is empty), at most
/// `jobs` at a time.
pub fn repro_suite(selection: &[&str], config: &ReproConfig, jobs: usize) -> Result<ReproReport> {
    let chosen: Vec<&Claim> = if selection.is_empty() {
        claims().iter().collect()
    } else {
        selection.iter().map(|id| find_claim(id)).collect::<Result<_>>()?
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let results = pool.install(|| chosen.par_iter().map(|c| c.run(config)).collect());
    Ok(ReproReport { results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_criterion_has_one_claim() {
        let numbers: Vec<u32> = claims().iter().map(|c| c.criterion).collect();
        assert_eq!(numbers, (1..=17).collect::<Vec<_>>());
        let mut ids: Vec<&str> = claims().iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 17);
    }

    #[test]
    fn unknown_claims_are_rejected() {
        assert!(matches!(find_claim("no-such-claim"), Err(Error::Unknown { .. })));
        assert!(repro_suite(&["no-such-claim"], &ReproConfig::default(), 1).is_err());
    }

    #[test]
    fn configuration_text() {
        let mut c = ReproConfig::default();
        c.apply_text("# bounds\nadder_bound = 50\n\nsturmian_max_n=200 # smaller\n").unwrap();
        assert_eq!(c.adder_bound, 50);
        assert_eq!(c.sturmian_max_n, 200);
        assert!(c.apply_text("nonsense = 1").is_err());
        assert!(c.apply_text("adder_bound").is_err());
        assert!(c.set("adder_bound", "-1").is_err());
        for key in ReproConfig::KEYS {
            let mut d = ReproConfig::default();
            d.set(key, "7").unwrap();
            assert_ne!(d, ReproConfig::default(), "{key}");
        }
    }

    #[test]
    fn a_fast_claim_passes() {
        let report = repro_suite(&["fib-1boundary-prefix", "fib-kernel-table"], &ReproConfig::default(), 2).unwrap();
        assert!(report.passed(), "{report:#?}");
        assert_eq!(report.results[0].criterion, 1);
    }
}
