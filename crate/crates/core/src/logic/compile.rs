//! Compilation of formulas to automata over padded representation tuples.
//!
//! Every intermediate automaton reads most significant letter first over
//! the track alphabet of the numeration system, has one track per free
//! variable in lexicographic variable order, and is intersected with the
//! automaton of valid padded tuples, so that structural equality of
//! canonical automata is equality of the defined relations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::ast::{Cmp, Formula, Linear, Term};
use super::parser::parse_formula;
use crate::automata::{Alphabet, AutomatonJson, BoolOp, Dfa, Dfao, Direction, Symbol};
use crate::error::{Error, Result};
use crate::kernel::{lsd_to_msd, saturate_leading_padding};
use crate::numeration::{AdditionAutomaton, Ans};

/// Default limit on the number of states of any intermediate automaton.
pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

/// A compiled formula: an automaton with one track per free variable.
#[derive(Clone, Debug)]
pub struct CompiledPredicate {
    vars: Vec<String>,
    dfa: Dfa,
    ans: Arc<Ans>,
}

impl CompiledPredicate {
    /// Free variables in track order (sorted by name).
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// The recognizing automaton (msd, canonical).
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// The numeration system the tracks are written in.
    pub fn ans(&self) -> &Ans {
        &self.ans
    }

    /// Number of tracks.
    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Truth value of a sentence (no free variables): acceptance of the
    /// empty tuple word.
    pub fn truth(&self) -> Result<bool> {
        if !self.vars.is_empty() {
            return Err(Error::Invalid(format!("formula has free variables {}", self.vars.join(", "))));
        }
        Ok(self.dfa.is_accepting(self.dfa.initial()))
    }

    /// Whether the tuple of values (in [`vars`](Self::vars) order) satisfies
    /// the formula.
    pub fn accepts(&self, values: &[u64]) -> Result<bool> {
        if values.len() != self.vars.len() {
            return Err(Error::Invalid(format!("{} values for {} variables", values.len(), self.vars.len())));
        }
        let reps = values.iter().map(|&v| self.ans.padded_rep(v, 0)).collect::<Result<Vec<_>>>()?;
        let len = reps.iter().map(Vec::len).max().unwrap_or(0);
        let tracks = values.iter().map(|&v| self.ans.padded_rep(v, len)).collect::<Result<Vec<_>>>()?;
        let alphabet = self.dfa.alphabet();
        let word: Vec<Symbol> =
            (0..len).map(|i| alphabet.encode(&tracks.iter().map(|t| t[i]).collect::<Vec<_>>())).collect();
        Ok(self.dfa.accepts(&word))
    }

    /// For one free variable: the accepted values below `limit`.
    pub fn members_below(&self, limit: u64) -> Result<Vec<u64>> {
        if self.vars.len() != 1 {
            return Err(Error::Invalid("membership listing needs exactly one free variable".into()));
        }
        let mut out = Vec::new();
        for n in 0..limit {
            if self.accepts(&[n])? {
                out.push(n);
            }
        }
        Ok(out)
    }

    /// Serializable summary with the automaton.
    pub fn to_json(&self) -> PredicateJson {
        PredicateJson {
            vars: self.vars.clone(),
            numeration: self.ans.name().to_string(),
            states: self.dfa.num_states(),
            automaton: AutomatonJson::from_dfa(&self.dfa),
        }
    }
}

/// JSON form of a compiled predicate.
#[derive(Clone, Debug, Serialize)]
pub struct PredicateJson {
    /// Track variables.
    pub vars: Vec<String>,
    /// Numeration system name.
    pub numeration: String,
    /// Number of states.
    pub states: usize,
    /// The automaton.
    pub automaton: AutomatonJson,
}

/// An automatic sequence bound to a name: one accepting automaton per
/// output letter.
#[derive(Clone, Debug)]
struct Sequence {
    letters: Vec<String>,
    preimages: Vec<Dfa>,
}

#[derive(Clone, Debug)]
struct Definition {
    params: Vec<String>,
    predicate: CompiledPredicate,
}

/// Compiles formulas over one numeration system with its addition relation
/// and a set of named automatic sequences.
#[derive(Clone, Debug)]
pub struct Compiler {
    ans: Arc<Ans>,
    addition: Option<Dfa>,
    sequences: BTreeMap<String, Sequence>,
    definitions: BTreeMap<String, Definition>,
    budget: usize,
}

impl Compiler {
    /// A compiler without addition: only formulas whose terms are single
    /// variables or constants compile.
    pub fn new(ans: Arc<Ans>) -> Compiler {
        Compiler {
            ans,
            addition: None,
            sequences: BTreeMap::new(),
            definitions: BTreeMap::new(),
            budget: DEFAULT_STATE_BUDGET,
        }
    }

    /// Installs the addition relation (either reading direction).  The
    /// relation should have passed [`adder_validate`](crate::numeration::adder_validate).
    pub fn with_adder(mut self, add: &AdditionAutomaton) -> Result<Compiler> {
        let msd = add.to_msd();
        let relation = msd.relation();
        relation.alphabet().ensure_same(&self.ans.track_alphabet(3))?;
        let saturated = relation.to_nfa().close_padding().determinize();
        self.addition = Some(saturated.intersect(&self.ans.valid_tuples(3))?);
        Ok(self)
    }

    /// Sets the state budget.
    pub fn with_budget(mut self, budget: usize) -> Compiler {
        self.budget = budget;
        self
    }

    /// The numeration system.
    pub fn ans(&self) -> &Arc<Ans> {
        &self.ans
    }

    /// State budget for intermediate automata.
    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Whether an addition relation is installed.
    pub fn has_adder(&self) -> bool {
        self.addition.is_some()
    }

    /// Output letters of a bound sequence.
    pub fn sequence_letters(&self, name: &str) -> Result<&[String]> {
        self.sequence(name).map(|s| s.letters.as_slice())
    }

    fn sequence(&self, name: &str) -> Result<&Sequence> {
        self.sequences.get(name).ok_or_else(|| Error::Unbound { kind: "sequence", name: name.to_string() })
    }

    /// Binds a DFAO generating `x[n]` from `rep(n)` under `name`.
    ///
    /// The DFAO may read the language letters or the track letters, in
    /// either direction; leading padding is made transparent.
    pub fn add_sequence(&mut self, name: &str, dfao: &Dfao) -> Result<()> {
        let on_tracks = track_dfao(&self.ans, dfao).map_err(|e| match e {
            Error::AlphabetMismatch(msg) => Error::AlphabetMismatch(format!("sequence `{name}`: {msg}")),
            other => other,
        })?;
        let valid = self.ans.valid_track();
        let preimages = (0..on_tracks.output_names().len() as u32)
            .map(|o| on_tracks.preimage(o).intersect(&valid))
            .collect::<Result<Vec<_>>>()?;
        self.sequences.insert(name.to_string(), Sequence { letters: on_tracks.output_names().to_vec(), preimages });
        Ok(())
    }

    /// Compiles `body` and binds it as the predicate `$name(params…)`.
    pub fn define(&mut self, name: &str, params: &[&str], body: &Formula) -> Result<CompiledPredicate> {
        let predicate = self.compile(body)?;
        if let Some(v) = predicate.vars.iter().find(|v| !params.contains(&v.as_str())) {
            return Err(Error::Unbound { kind: "variable", name: v.clone() });
        }
        self.definitions.insert(
            name.to_string(),
            Definition { params: params.iter().map(|p| p.to_string()).collect(), predicate: predicate.clone() },
        );
        Ok(predicate)
    }

    /// Compiles a formula.
    pub fn compile(&self, formula: &Formula) -> Result<CompiledPredicate> {
        let mut session = Session { c: self, fresh: 0, valid: HashMap::new() };
        let dfa = session.formula(formula)?;
        Ok(CompiledPredicate { vars: formula.free_vars().into_iter().collect(), dfa, ans: self.ans.clone() })
    }

    /// Parses and compiles formula text.
    pub fn compile_text(&self, text: &str) -> Result<CompiledPredicate> {
        self.compile(&parse_formula(text)?)
    }

    /// Truth value of a sentence.
    pub fn decide(&self, formula: &Formula) -> Result<bool> {
        self.compile(formula)?.truth()
    }

    /// Parses and decides a sentence.
    pub fn decide_text(&self, text: &str) -> Result<bool> {
        self.decide(&parse_formula(text)?)
    }

    /// Single-track automaton accepting exactly the padded representations
    /// of `c`.
    pub fn constant(&self, c: u64) -> Result<Dfa> {
        let target: Vec<Symbol> = self.ans.rep(c)?.into_iter().map(|l| self.ans.to_track(l)).collect();
        let pad = self.ans.pad_letter();
        let len = target.len();
        // key: None = leading padding; Some(i) = i letters matched; Some(MAX) = dead
        let (dfa, _) = Dfa::explore(
            self.ans.track_alphabet(1),
            Direction::Msd,
            None,
            usize::MAX,
            |key: &Option<usize>, s| match *key {
                None if s == pad => None,
                None if len > 0 && s == target[0] => Some(1),
                Some(i) if i < len && s == target[i] => Some(i + 1),
                _ => Some(usize::MAX),
            },
            |key| match *key {
                None => len == 0,
                Some(i) => i == len,
            },
        )?;
        Ok(dfa.canonicalize())
    }

    /// Two-track automaton of `x op y` on valid padded tracks: genealogical
    /// order of representations is lexicographic order of equal-length
    /// padded tracks because the padding letter is the smallest.
    pub fn comparison(&self, op: Cmp) -> Result<Dfa> {
        let alphabet = self.ans.track_alphabet(2);
        let tracks = alphabet.clone();
        let (dfa, _) = Dfa::explore(
            alphabet,
            Direction::Msd,
            std::cmp::Ordering::Equal,
            usize::MAX,
            |&ord, s| match ord {
                std::cmp::Ordering::Equal => tracks.track_letter(s, 0).cmp(&tracks.track_letter(s, 1)),
                other => other,
            },
            |&ord| op.holds(ord),
        )?;
        dfa.intersect(&self.ans.valid_tuples(2))
    }
}

/// An equivalent msd DFAO over the single-track alphabet of `ans` whose
/// output ignores leading padding.
///
/// The input may read the language letters or the track letters, in either
/// direction.  When it reads `#`-padded language letters, `#` is added as
/// a loop on every state; only leading padding survives the intersection
/// with valid tracks, so the loop never matters elsewhere.
pub fn track_dfao(ans: &Ans, dfao: &Dfao) -> Result<Dfao> {
    let dfao = match dfao.base().direction() {
        Direction::Msd => dfao.clone(),
        Direction::Lsd => lsd_to_msd(dfao)?,
    };
    let track = ans.track_alphabet(1);
    if dfao.alphabet().letters() == track.letters() {
        saturate_leading_padding(&dfao.with_alphabet(track)?, ans.pad_letter())
    } else if dfao.alphabet().letters() == ans.letters() {
        let base = dfao.base();
        let k = base.alphabet().size();
        let mut delta = Vec::with_capacity(base.num_states() * (k + 1));
        for q in 0..base.num_states() as u32 {
            delta.push(q);
            delta.extend_from_slice(&base.delta()[q as usize * k..(q as usize + 1) * k]);
        }
        let dfa = Dfa::new(track, Direction::Msd, base.initial(), vec![false; base.num_states()], delta)?;
        Ok(Dfao::new(dfa, dfao.outputs().to_vec(), dfao.output_names().to_vec())?.canonicalize())
    } else {
        Err(Error::AlphabetMismatch(format!(
            "DFAO reads {:?}, numeration {} uses {:?}",
            dfao.alphabet().letters(),
            ans.name(),
            ans.letters()
        )))
    }
}

impl Dfao {
    /// The same machine read over another alphabet with identical size.
    fn with_alphabet(&self, alphabet: Alphabet) -> Result<Dfao> {
        let base = self.base();
        let dfa =
            Dfa::new(alphabet, base.direction(), base.initial(), base.accepting().to_vec(), base.delta().to_vec())?;
        Dfao::new(dfa, self.outputs().to_vec(), self.output_names().to_vec())
    }
}

/// Per-compilation state: fresh-name counter and cached automata.
struct Session<'c> {
    c: &'c Compiler,
    fresh: usize,
    valid: HashMap<usize, Dfa>,
}

/// Auxiliary constraints collected while turning terms into variables.
#[derive(Default)]
struct Scratch {
    constraints: Vec<(Vec<String>, Dfa)>,
    temps: Vec<String>,
}

impl Session<'_> {
    fn valid(&mut self, arity: usize) -> Dfa {
        let ans = &self.c.ans;
        self.valid.entry(arity).or_insert_with(|| ans.valid_tuples(arity)).clone()
    }

    fn checked(&self, dfa: Dfa) -> Result<Dfa> {
        if dfa.num_states() > self.c.budget {
            Err(Error::StateBudget(self.c.budget))
        } else {
            Ok(dfa)
        }
    }

    fn fresh(&mut self) -> String {
        self.fresh += 1;
        format!("_t{}", self.fresh - 1)
    }

    /// Reinterprets `relation` (tracks = `args`, names may repeat) over the
    /// sorted variable list `vars ⊇ args`.
    fn restrict(&mut self, relation: &Dfa, args: &[String], vars: &[String]) -> Result<Dfa> {
        if args == vars {
            return Ok(relation.clone());
        }
        let positions: Vec<usize> =
            args.iter().map(|a| vars.iter().position(|v| v == a).expect("argument among the variables")).collect();
        let new_alphabet = self.c.ans.track_alphabet(vars.len());
        let old_alphabet = relation.alphabet().clone();
        let tracks = new_alphabet.clone();
        let mapped = relation.map_symbols(new_alphabet, |s| {
            old_alphabet.encode(&positions.iter().map(|&p| tracks.track_letter(s, p)).collect::<Vec<_>>())
        });
        let valid = self.valid(vars.len());
        self.checked(mapped.intersect(&valid)?)
    }

    /// Conjunction of constraints, then existential projection of `hidden`,
    /// giving an automaton over `vars` (sorted).
    fn conjoin(&mut self, constraints: &[(Vec<String>, Dfa)], hidden: &[String], vars: &[String]) -> Result<Dfa> {
        let mut all: BTreeSet<String> = vars.iter().cloned().collect();
        for (args, _) in constraints {
            all.extend(args.iter().cloned());
        }
        let mut names: Vec<String> = all.into_iter().collect();
        let mut acc = self.valid(names.len());
        for (args, rel) in constraints {
            let lifted = self.restrict(rel, args, &names)?;
            acc = self.checked(acc.intersect(&lifted)?)?;
        }
        for h in hidden {
            if let Some(i) = names.iter().position(|v| v == h) {
                acc = self.checked(acc.project(i)?)?;
                names.remove(i);
            }
        }
        debug_assert_eq!(names, vars);
        Ok(acc)
    }

    fn add(&mut self, x: &str, y: &str, scratch: &mut Scratch) -> Result<String> {
        let relation = self.c.addition.clone().ok_or_else(|| {
            Error::Invalid(format!("numeration system {} has no addition relation installed", self.c.ans.name()))
        })?;
        let t = self.fresh();
        scratch.constraints.push((vec![x.to_string(), y.to_string(), t.clone()], relation));
        scratch.temps.push(t.clone());
        Ok(t)
    }

    /// A variable equal to the value of a form with nonnegative coefficients.
    fn materialize(&mut self, form: &Linear, scratch: &mut Scratch) -> Result<String> {
        if let Some(v) = form.as_variable() {
            return Ok(v.to_string());
        }
        let mut summands = Vec::new();
        for (v, &c) in &form.coefficients {
            debug_assert!(c > 0);
            // binary multiplication by repeated doubling
            let mut acc: Option<String> = None;
            let mut power = v.clone();
            let mut rest = c;
            loop {
                if rest & 1 == 1 {
                    acc = Some(match acc {
                        None => power.clone(),
                        Some(a) => self.add(&a, &power, scratch)?,
                    });
                }
                rest >>= 1;
                if rest == 0 {
                    break;
                }
                power = self.add(&power, &power, scratch)?;
            }
            summands.push(acc.expect("positive coefficient"));
        }
        if form.constant > 0 || summands.is_empty() {
            let value = u64::try_from(form.constant).map_err(|_| Error::Overflow("constant term".into()))?;
            let t = self.fresh();
            scratch.constraints.push((vec![t.clone()], self.c.constant(value)?));
            scratch.temps.push(t.clone());
            summands.push(t);
        }
        let mut acc = summands[0].clone();
        for s in &summands[1..] {
            acc = self.add(&acc, s, scratch)?;
        }
        Ok(acc)
    }

    /// A variable equal to the value of `form`, which must be a natural
    /// number; where it would be negative no value exists (`v + N = P`).
    fn materialize_natural(&mut self, form: &Linear, scratch: &mut Scratch) -> Result<String> {
        let (pos, neg) = form.split();
        if neg == Linear::default() {
            return self.materialize(&pos, scratch);
        }
        let v = self.fresh();
        scratch.temps.push(v.clone());
        let left = self.materialize(&Linear::var(&v).add(&neg, 1), scratch)?;
        let right = self.materialize(&pos, scratch)?;
        let eq = self.c.comparison(Cmp::Eq)?;
        scratch.constraints.push((vec![left, right], eq));
        Ok(v)
    }

    fn linear(&self, t: &Term) -> Result<Linear> {
        let form = t.linear()?;
        if form.provably_negative() {
            return Err(Error::Subtraction(format!("`{t}` is negative for every assignment")));
        }
        Ok(form)
    }

    fn formula(&mut self, f: &Formula) -> Result<Dfa> {
        let vars: Vec<String> = f.free_vars().into_iter().collect();
        match f {
            Formula::Bool(b) => {
                let alphabet = self.c.ans.track_alphabet(vars.len());
                Ok(if *b { self.valid(vars.len()) } else { Dfa::empty(alphabet, Direction::Msd) })
            }
            Formula::Compare(op, a, b) => {
                let diff = self.linear(a)?.add(&self.linear(b)?, -1);
                let (pos, neg) = diff.split();
                let mut scratch = Scratch::default();
                let x = self.materialize(&pos, &mut scratch)?;
                let y = self.materialize(&neg, &mut scratch)?;
                if x == y {
                    return self.formula_over(&Formula::Bool(op.holds(std::cmp::Ordering::Equal)), &vars);
                }
                scratch.constraints.push((vec![x, y], self.c.comparison(*op)?));
                self.conjoin(&scratch.constraints, &scratch.temps, &vars)
            }
            Formula::SeqIs { seq, index, letter } => {
                let sequence = self.c.sequence(seq)?;
                let Some(i) = sequence.letters.iter().position(|l| l == letter) else {
                    // a letter the sequence never outputs
                    return self.formula_over(&Formula::Bool(false), &vars);
                };
                let preimage = sequence.preimages[i].clone();
                let form = self.linear(index)?;
                let mut scratch = Scratch::default();
                let x = self.materialize_natural(&form, &mut scratch)?;
                scratch.constraints.push((vec![x], preimage));
                self.conjoin(&scratch.constraints, &scratch.temps, &vars)
            }
            Formula::SeqSame { left, right } => {
                let l = self.c.sequence(&left.0)?;
                let r = self.c.sequence(&right.0)?;
                let common: Vec<String> = l.letters.iter().filter(|a| r.letters.contains(a)).cloned().collect();
                let expanded = Formula::any(
                    common
                        .iter()
                        .map(|a| {
                            Formula::seq_is(&left.0, left.1.clone(), a).and(Formula::seq_is(
                                &right.0,
                                right.1.clone(),
                                a,
                            ))
                        })
                        .collect(),
                );
                self.formula_over(&expanded, &vars)
            }
            Formula::Call(name, args) => {
                let def = self
                    .c
                    .definitions
                    .get(name)
                    .ok_or_else(|| Error::Unbound { kind: "predicate", name: name.clone() })?;
                if def.params.len() != args.len() {
                    return Err(Error::Invalid(format!(
                        "${name} takes {} arguments, {} given",
                        def.params.len(),
                        args.len()
                    )));
                }
                let mut scratch = Scratch::default();
                let mut bound = Vec::new();
                for a in args {
                    let form = self.linear(a)?;
                    bound.push(self.materialize_natural(&form, &mut scratch)?);
                }
                let track_args: Vec<String> = def
                    .predicate
                    .vars
                    .iter()
                    .map(|v| bound[def.params.iter().position(|p| p == v).expect("parameters cover variables")].clone())
                    .collect();
                scratch.constraints.push((track_args, def.predicate.dfa.clone()));
                self.conjoin(&scratch.constraints, &scratch.temps, &vars)
            }
            Formula::Not(a) => {
                let inner = self.formula(a)?;
                let valid = self.valid(vars.len());
                self.checked(inner.complement().intersect(&valid)?)
            }
            Formula::And(a, b) => self.binary(a, b, BoolOp::And, &vars),
            Formula::Or(a, b) => self.binary(a, b, BoolOp::Or, &vars),
            Formula::Implies(a, b) => self.binary(a, b, BoolOp::Implies, &vars),
            Formula::Iff(a, b) => self.binary(a, b, BoolOp::Iff, &vars),
            Formula::Exists(bound, body) => {
                let inner_vars: Vec<String> = body.free_vars().into_iter().collect();
                let mut names = inner_vars;
                let mut acc = self.formula(body)?;
                for v in bound {
                    if let Some(i) = names.iter().position(|n| n == v) {
                        acc = self.checked(acc.project(i)?)?;
                        names.remove(i);
                    }
                }
                Ok(acc)
            }
            Formula::Forall(bound, body) => {
                let rewritten = Formula::Exists(bound.clone(), Box::new(body.as_ref().clone().negate())).negate();
                self.formula(&rewritten)
            }
        }
    }

    /// Compiles `f` and lifts it to the (larger) sorted variable list.
    fn formula_over(&mut self, f: &Formula, vars: &[String]) -> Result<Dfa> {
        let own: Vec<String> = f.free_vars().into_iter().collect();
        let dfa = self.formula(f)?;
        self.restrict(&dfa, &own, vars)
    }

    fn binary(&mut self, a: &Formula, b: &Formula, op: BoolOp, vars: &[String]) -> Result<Dfa> {
        let left = self.formula_over(a, vars)?;
        let right = self.formula_over(b, vars)?;
        let combined = left.combine(&right, op)?;
        let result = match op {
            BoolOp::And | BoolOp::Or => combined,
            _ => {
                let valid = self.valid(vars.len());
                combined.intersect(&valid)?
            }
        };
        self.checked(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::sequences::builtin_sequence;
    use crate::numeration::adder_builtin;

    fn base2() -> Compiler {
        let ans = Arc::new(Ans::builtin("base:2").unwrap());
        let mut c = Compiler::new(ans).with_adder(&adder_builtin("base:2").unwrap()).unwrap();
        let (_, tm) = builtin_sequence("thue-morse").unwrap();
        c.add_sequence("T", &tm).unwrap();
        c
    }

    #[test]
    fn trivial_sentences() {
        let c = base2();
        assert!(c.decide_text("An n+0=n").unwrap());
        assert!(!c.decide_text("En T[n]=@0 & T[n]=@1").unwrap());
        assert!(c.decide_text("Ei T[i]=@0 & T[i+1]=@0").unwrap());
        assert!(!c.decide_text("Ei T[i]=@0 & T[i+1]=@0 & T[i+2]=@0").unwrap());
        assert!(c.decide_text("A x,y x+y=y+x").unwrap());
        assert!(c.decide_text("A x E y y=2x+1 & y>x").unwrap());
    }

    #[test]
    fn self_equality_is_universal_on_one_track() {
        let c = base2();
        let p = c.compile_text("x = x").unwrap();
        assert_eq!(p.vars(), ["x"]);
        assert_eq!(p.dfa(), &c.ans().valid_tuples(1).canonicalize());
    }

    #[test]
    fn arithmetic_agrees_with_evaluation() {
        let c = base2();
        let p = c.compile_text("3x + 2 = y - z").unwrap();
        assert_eq!(p.vars(), ["x", "y", "z"]);
        for x in 0..6u64 {
            for y in 0..24u64 {
                for z in 0..6u64 {
                    let truth = 3 * x as i64 + 2 == y as i64 - z as i64;
                    assert_eq!(p.accepts(&[x, y, z]).unwrap(), truth, "{x} {y} {z}");
                }
            }
        }
        let lt = c.compile_text("x < y & y <= 2*x").unwrap();
        for x in 0..20u64 {
            for y in 0..40u64 {
                assert_eq!(lt.accepts(&[x, y]).unwrap(), x < y && y <= 2 * x);
            }
        }
    }

    #[test]
    fn negative_indices_are_false_and_negative_terms_rejected() {
        let c = base2();
        let p = c.compile_text("T[n-1]=@1").unwrap();
        // t = 0110100110010110…; T[n-1]=1 at n = 2, 3, 5, 8, …
        assert_eq!(p.members_below(9).unwrap(), vec![2, 3, 5, 8]);
        assert!(matches!(c.compile_text("x = 0 - 1"), Err(Error::Subtraction(_))));
        assert!(matches!(c.compile_text("S[x]=@0"), Err(Error::Unbound { .. })));
        assert!(matches!(c.compile_text("x*y = 1"), Err(Error::Invalid(_))));
    }

    #[test]
    fn definitions_are_substituted() {
        let mut c = base2();
        c.define("sq", &["i", "n"], &parse_formula("T[i]=T[i+n]").unwrap()).unwrap();
        let p = c.compile_text("A i $sq(i, n)").unwrap();
        // n is a period of t only for n = 0
        assert_eq!(p.members_below(64).unwrap(), vec![0]);
        let q = c.compile_text("$sq(3, n+1)").unwrap();
        for n in 0..30u64 {
            let t = |k: u64| k.count_ones() % 2;
            assert_eq!(q.accepts(&[n]).unwrap(), t(3) == t(4 + n));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c = base2().with_budget(2);
        assert!(matches!(c.compile_text("Ei T[i]=@0 & T[i+1]=@0"), Err(Error::StateBudget(2))));
    }

    #[test]
    fn hash_padded_system_with_the_figure_adder() {
        let ans = Arc::new(Ans::one_two_star());
        let c = Compiler::new(ans).with_adder(&adder_builtin("fig2").unwrap()).unwrap();
        let p = c.compile_text("x + y = z").unwrap();
        for x in 0..12u64 {
            for y in 0..12u64 {
                for z in 0..26u64 {
                    assert_eq!(p.accepts(&[x, y, z]).unwrap(), x + y == z, "{x}+{y}={z}");
                }
            }
        }
        assert!(c.decide_text("A x E y y = x + x + 1").unwrap());
    }
}
