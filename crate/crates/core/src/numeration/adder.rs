//! Addition relations `{(x, y, z) : x + y = z}` over padded representations:
//! built-in carry automata, bounded carry exploration for linear
//! recurrences, and exhaustive validation.

use super::ans::Ans;
use super::positional::PositionalSystem;
use crate::automata::{Dfa, Direction, Symbol};
use crate::error::{Error, Result};

/// Default bound on carry coefficients during exploration.
pub const DEFAULT_CARRY_BOUND: i64 = 64;

/// An automaton over three tracks `(x, y, z)` recognizing `x + y = z` on
/// padded representations of a numeration system.
#[derive(Clone, Debug)]
pub struct AdditionAutomaton {
    relation: Dfa,
    system: String,
}

impl AdditionAutomaton {
    /// Wraps a relation automaton (direction tag taken from the automaton).
    pub fn new(relation: Dfa, system: &str) -> Result<AdditionAutomaton> {
        if relation.alphabet().arity() != 3 {
            return Err(Error::Invalid("an addition relation has three tracks".into()));
        }
        Ok(AdditionAutomaton { relation, system: system.to_string() })
    }

    /// The relation automaton.
    pub fn relation(&self) -> &Dfa {
        &self.relation
    }

    /// Reading direction.
    pub fn direction(&self) -> Direction {
        self.relation.direction()
    }

    /// Name of the numeration system served.
    pub fn system(&self) -> &str {
        &self.system
    }

    /// Number of states of the relation automaton.
    pub fn num_states(&self) -> usize {
        self.relation.num_states()
    }

    /// The relation read most significant digit first.
    pub fn to_msd(&self) -> AdditionAutomaton {
        match self.direction() {
            Direction::Msd => self.clone(),
            Direction::Lsd => AdditionAutomaton { relation: self.relation.reverse(), system: self.system.clone() },
        }
    }

    /// The relation read least significant digit first.
    pub fn to_lsd(&self) -> AdditionAutomaton {
        match self.direction() {
            Direction::Lsd => self.clone(),
            Direction::Msd => AdditionAutomaton { relation: self.relation.reverse(), system: self.system.clone() },
        }
    }

    /// Membership of the triple `(x, y, z)` given as track words of equal
    /// length written most significant letter first.
    pub fn accepts_tracks(&self, x: &[Symbol], y: &[Symbol], z: &[Symbol]) -> bool {
        let a = self.relation.alphabet();
        let mut word: Vec<Symbol> = (0..x.len()).map(|i| a.encode(&[x[i], y[i], z[i]])).collect();
        if self.direction() == Direction::Lsd {
            word.reverse();
        }
        self.relation.accepts(&word)
    }
}

/// Built-in adders: `base:k` (lsd carries {0,1}) and `fig2` (the lsd adder
/// of the `{1,2}*` system with states {0,1,2}).
pub fn adder_builtin(name: &str) -> Result<AdditionAutomaton> {
    if name == "fig2" {
        return Ok(one_two_adder());
    }
    match name.strip_prefix("base:").map(str::parse::<u32>) {
        Some(Ok(k)) if k >= 2 => Ok(base_adder(k)),
        _ => Err(Error::Unknown { kind: "adder", name: name.to_string() }),
    }
}

/// Carry automaton for base `k`, least significant digit first: from carry
/// `c`, column `(p, q, r)` leads to `c'` when `c + p + q = r + k·c'`.
pub fn base_adder(k: u32) -> AdditionAutomaton {
    let ans = Ans::from_positional(PositionalSystem::base(k).expect("k ≥ 2"));
    let alphabet = ans.track_alphabet(3);
    let tracks = alphabet.clone();
    let (dfa, _) = Dfa::explore(
        alphabet,
        Direction::Lsd,
        Some(0u32),
        usize::MAX,
        |c, s| {
            let c = (*c)?;
            let t = tracks.decode(s);
            let total = c + t[0] + t[1];
            (total >= t[2] && (total - t[2]).is_multiple_of(k) && (total - t[2]) / k <= 1).then(|| (total - t[2]) / k)
        },
        |c| *c == Some(0),
    )
    .expect("unbounded budget");
    AdditionAutomaton::new(dfa.canonicalize(), &format!("base:{k}")).expect("three tracks")
}

/// The adder of the `{1,2}*` system (`val = Σ d_i 2^i`), least significant
/// digit first, states = carries {0,1,2}: `m → n` on `(p, q, r)` iff
/// `m + p + q = r + 2n` with `#` read as 0.  A `#` on the result track only
/// occurs in the all-`#` column, which is excluded (no valid triple ends
/// with it when read lsd first).
pub fn one_two_adder() -> AdditionAutomaton {
    let ans = Ans::one_two_star();
    let alphabet = ans.track_alphabet(3);
    let mut transitions = Vec::new();
    for m in 0..3u32 {
        for s in 0..alphabet.size() as Symbol {
            let t = alphabet.decode(s);
            // track letter 0 is '#', letters 1 and 2 are the digits 1 and 2
            if t[2] == 0 {
                continue;
            }
            let total = m + t[0] + t[1];
            if total >= t[2] && (total - t[2]).is_multiple_of(2) && (total - t[2]) / 2 <= 2 {
                transitions.push((m, s, (total - t[2]) / 2));
            }
        }
    }
    let dfa = Dfa::from_partial(alphabet, Direction::Lsd, 3, 0, &[0], &transitions).expect("well-formed table");
    AdditionAutomaton::new(dfa, "ans:one-two-star").expect("three tracks")
}

/// Dominant root of `x^d − Σ_t coefficients[t] x^{d−1−t}` (bisection).
fn dominant_root(coefficients: &[i64]) -> f64 {
    let d = coefficients.len();
    let poly = |x: f64| {
        let mut v = x.powi(d as i32);
        for (t, &c) in coefficients.iter().enumerate() {
            v -= c as f64 * x.powi((d - 1 - t) as i32);
        }
        v
    };
    let mut hi = 1.0 + coefficients.iter().map(|c| c.unsigned_abs() as f64).sum::<f64>();
    let mut lo = 1.0;
    // The dominant root is the largest real root; scan down from the Cauchy bound.
    let steps = 4096;
    let width = (hi - lo) / steps as f64;
    for i in (0..steps).rev() {
        let a = lo + width * i as f64;
        if poly(a) <= 0.0 {
            lo = a;
            hi = a + width;
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if poly(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Explores the addition relation of a positional system by carry vectors.
///
/// Reading columns most significant first, the state records the pending
/// difference `Δ = Σ_i c_i U_{j+i}` between `x + y` and `z` over the next
/// `d` basis terms (`d` = recurrence order, `j` = number of columns still to
/// be read).  A column `(p, q, r)` adds `p + q − r` at weight `U_{j−1}`; the
/// top coefficient is rewritten through the recurrence.  A state accepts when
/// `Σ c_i U_i = 0` and every track is a valid padded representation.  States
/// whose dominant-root estimate `|Σ c_i θ^i|` exceeds the reachable range are
/// discarded as dead (a heuristic made safe by [`adder_validate`]); any
/// surviving coefficient beyond `carry_bound` aborts the exploration.
///
/// The msd relation is explored and canonicalized; the lsd relation is its
/// reversal.  Leading all-zero columns are accepted (padding-saturated).
pub fn adder_explore(sys: &PositionalSystem, carry_bound: i64, direction: Direction) -> Result<AdditionAutomaton> {
    let ans = Ans::from_positional(sys.clone());
    let coefficients = sys.coefficients().to_vec();
    let d = sys.initial_terms().len();
    let mut coef = vec![0i64; d];
    coef[..coefficients.len()].copy_from_slice(&coefficients);
    let theta = dominant_root(&coefficients);
    let max_digit = sys.max_digit() as f64;
    let reach = 2.0 * max_digit * theta / (theta - 1.0) + 2.0;
    let terms: Vec<i64> = sys.terms()[..d].iter().map(|&u| u as i64).collect();
    let valid = ans.valid_track();
    let alphabet = ans.track_alphabet(3);
    let tracks = alphabet.clone();

    type Key = Option<(Vec<i64>, [u32; 3])>;
    let start: Key = Some((vec![0; d], [valid.initial(); 3]));
    let mut exceeded = false;
    let (dfa, keys) = Dfa::explore(
        alphabet,
        Direction::Msd,
        start,
        1 << 22,
        |key: &Key, s| {
            let (c, qs) = key.as_ref()?;
            let col = tracks.decode(s);
            let mut next_qs = [0u32; 3];
            for t in 0..3 {
                next_qs[t] = valid.next(qs[t], col[t]);
            }
            let top = c[d - 1];
            let mut next = vec![0i64; d];
            next[0] = col[0] as i64 + col[1] as i64 - col[2] as i64;
            for i in 0..d - 1 {
                next[i + 1] += c[i];
            }
            for t in 0..d {
                next[d - 1 - t] += top * coef[t];
            }
            let estimate: f64 = next.iter().enumerate().map(|(i, &ci)| ci as f64 * theta.powi(i as i32)).sum();
            if estimate.abs() > reach {
                return None;
            }
            if next.iter().any(|c| c.abs() > carry_bound) {
                exceeded = true;
                return None;
            }
            Some((next, next_qs))
        },
        |key| match key {
            Some((c, qs)) => {
                c.iter().zip(&terms).map(|(a, b)| a * b).sum::<i64>() == 0 && qs.iter().all(|&q| valid.is_accepting(q))
            }
            None => false,
        },
    )?;
    drop(keys);
    if exceeded {
        return Err(Error::CarryBoundExceeded { bound: carry_bound });
    }
    let msd = AdditionAutomaton::new(dfa.canonicalize(), sys.name())?;
    Ok(match direction {
        Direction::Msd => msd,
        Direction::Lsd => msd.to_lsd(),
    })
}

/// Outcome of [`adder_validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdderReport {
    /// Number of `(x, y)` pairs checked.
    pub pairs_checked: u64,
    /// First failure, if any.
    pub counterexample: Option<String>,
}

impl AdderReport {
    /// Whether validation passed.
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively validates an adder for `0 ≤ x, y ≤ bound`:
///
/// * completeness — the padded triple `(rep x, rep y, rep(x+y))` (no leading
///   all-padding column) is accepted;
/// * functionality — enumerating every valid padded `z` track the automaton
///   accepts next to `(rep x, rep y)` (up to the length of `rep(2·bound)`)
///   yields exactly `x + y`.
pub fn adder_validate(add: &AdditionAutomaton, ans: &Ans, bound: u64) -> Result<AdderReport> {
    let msd = add.to_msd();
    let rel = msd.relation();
    ans.track_alphabet(3).ensure_same(rel.alphabet())?;
    let live = rel.coaccessible();
    let valid = ans.valid_track();
    let valid_live = valid.coaccessible();
    let pad = ans.pad_letter();
    let max_len = ans.rep(2 * bound)?.len() + 1;
    let track_letters = rel.alphabet().track_size() as Symbol;
    let mut pairs = 0u64;
    for x in 0..=bound {
        for y in 0..=bound {
            pairs += 1;
            let z = x + y;
            let len = [ans.rep(x)?.len(), ans.rep(y)?.len(), ans.rep(z)?.len()].into_iter().max().unwrap();
            let (px, py, pz) = (ans.padded_rep(x, len)?, ans.padded_rep(y, len)?, ans.padded_rep(z, len)?);
            if !msd.accepts_tracks(&px, &py, &pz) {
                return Ok(AdderReport {
                    pairs_checked: pairs,
                    counterexample: Some(format!("{x} + {y} = {z} rejected")),
                });
            }
            // Functionality: search all accepted z tracks.
            let min_len = ans.rep(x)?.len().max(ans.rep(y)?.len());
            for l in min_len.max(1)..=max_len {
                let px = ans.padded_rep(x, l)?;
                let py = ans.padded_rep(y, l)?;
                let mut stack: Vec<(usize, u32, u32, Vec<Symbol>)> =
                    vec![(0, rel.initial(), valid.initial(), Vec::new())];
                while let Some((i, q, v, zs)) = stack.pop() {
                    if i == l {
                        if !rel.is_accepting(q) || !valid.is_accepting(v) {
                            continue;
                        }
                        // a leading all-padding column belongs to a shorter length
                        if l > 1 && px[0] == pad && py[0] == pad && zs[0] == pad {
                            continue;
                        }
                        let got = ans.track_value(&zs)?;
                        if got != z {
                            return Ok(AdderReport {
                                pairs_checked: pairs,
                                counterexample: Some(format!(
                                    "accepted {x} + {y} = {got} (z track {})",
                                    rel.alphabet().with_arity(1).render_word(&zs)
                                )),
                            });
                        }
                        continue;
                    }
                    for c in 0..track_letters {
                        let nq = rel.next(q, rel.alphabet().encode(&[px[i], py[i], c]));
                        let nv = valid.next(v, c);
                        if live[nq as usize] && valid_live[nv as usize] {
                            let mut nz = zs.clone();
                            nz.push(c);
                            stack.push((i + 1, nq, nv, nz));
                        }
                    }
                }
            }
        }
    }
    Ok(AdderReport { pairs_checked: pairs, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_roots() {
        assert!((dominant_root(&[1, 1]) - 1.618_033_988_75).abs() < 1e-9);
        assert!((dominant_root(&[2]) - 2.0).abs() < 1e-9);
        assert!((dominant_root(&[3, -2]) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fibonacci_adder_sizes() {
        let f = PositionalSystem::fibonacci();
        let msd = adder_explore(&f, DEFAULT_CARRY_BOUND, Direction::Msd).unwrap();
        let lsd = adder_explore(&f, DEFAULT_CARRY_BOUND, Direction::Lsd).unwrap();
        assert_eq!(msd.num_states(), 17);
        assert_eq!(lsd.num_states(), 22);
    }

    #[test]
    fn fibonacci_adder_validates() {
        let f = PositionalSystem::fibonacci();
        let ans = Ans::from_positional(f.clone());
        let add = adder_explore(&f, DEFAULT_CARRY_BOUND, Direction::Msd).unwrap();
        let report = adder_validate(&add, &ans, 60).unwrap();
        assert!(report.passed(), "{report:?}");
        let lsd = adder_explore(&f, DEFAULT_CARRY_BOUND, Direction::Lsd).unwrap();
        assert!(adder_validate(&lsd, &ans, 30).unwrap().passed());
    }

    #[test]
    fn base_two_explored_matches_builtin() {
        let two = PositionalSystem::base(2).unwrap();
        let explored = adder_explore(&two, DEFAULT_CARRY_BOUND, Direction::Msd).unwrap();
        let builtin = base_adder(2).to_msd();
        assert!(explored.relation().equivalent(builtin.relation()).unwrap());
        assert!(builtin.accepts_tracks(&[0, 1], &[0, 1], &[1, 0]));
        let ans = Ans::from_positional(two);
        assert!(adder_validate(&base_adder(2), &ans, 40).unwrap().passed());
    }

    #[test]
    fn one_two_adder_examples() {
        let add = one_two_adder();
        // (#1, #2, 11): 1 + 2 = 3
        assert!(add.accepts_tracks(&[0, 1], &[0, 2], &[1, 1]));
        assert!(!add.accepts_tracks(&[0, 1], &[0, 2], &[1, 2]));
        assert_eq!(add.relation().canonicalize().num_states(), 4);
        assert!(adder_validate(&add, &Ans::one_two_star(), 40).unwrap().passed());
    }

    #[test]
    fn corrupted_adder_fails_validation() {
        let add = one_two_adder();
        let rel = add.relation();
        let a = rel.alphabet();
        // Redirect 0 --(1,1,2)--> 0 into the sink.
        let s = a.encode(&[1, 1, 2]);
        let mut delta = rel.delta().to_vec();
        delta[s as usize] = 3;
        let broken = Dfa::new(a.clone(), Direction::Lsd, 0, rel.accepting().to_vec(), delta).unwrap();
        let report =
            adder_validate(&AdditionAutomaton::new(broken, "broken").unwrap(), &Ans::one_two_star(), 10).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn carry_bound_is_enforced() {
        let f = PositionalSystem::fibonacci();
        assert!(matches!(adder_explore(&f, 1, Direction::Msd), Err(Error::CarryBoundExceeded { bound: 1 })));
    }
}
