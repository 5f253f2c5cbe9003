//! Abstract syntax of first-order formulas over natural-number variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A natural-number term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// A variable.
    Var(String),
    /// A constant.
    Const(u64),
    /// Sum of two terms.
    Add(Box<Term>, Box<Term>),
    /// Difference of two terms (integer-valued; see [`Linear`]).
    Sub(Box<Term>, Box<Term>),
    /// Product of two terms, at least one of which must be constant.
    Mul(Box<Term>, Box<Term>),
}

/// Comparison operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cmp {
    /// `=`
    Eq,
    /// `!=`
    Ne,
    /// `<`
    Lt,
    /// `<=`
    Le,
    /// `>`
    Gt,
    /// `>=`
    Ge,
}

impl Cmp {
    /// The operator with its arguments swapped (`a op b` ⇔ `b op' a`).
    pub fn swapped(self) -> Cmp {
        match self {
            Cmp::Eq => Cmp::Eq,
            Cmp::Ne => Cmp::Ne,
            Cmp::Lt => Cmp::Gt,
            Cmp::Le => Cmp::Ge,
            Cmp::Gt => Cmp::Lt,
            Cmp::Ge => Cmp::Le,
        }
    }

    /// Truth value on an ordering of the left operand against the right.
    pub fn holds(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            Cmp::Eq => ord == Equal,
            Cmp::Ne => ord != Equal,
            Cmp::Lt => ord == Less,
            Cmp::Le => ord != Greater,
            Cmp::Gt => ord == Greater,
            Cmp::Ge => ord != Less,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "=",
            Cmp::Ne => "!=",
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }
}

/// A first-order formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Constant truth value.
    Bool(bool),
    /// `t1 op t2`.
    Compare(Cmp, Term, Term),
    /// `S[t] = @letter`.
    SeqIs {
        /// Sequence name.
        seq: String,
        /// Index term.
        index: Term,
        /// Output letter name.
        letter: String,
    },
    /// `S1[t1] = S2[t2]`.
    SeqSame {
        /// First sequence and index.
        left: (String, Term),
        /// Second sequence and index.
        right: (String, Term),
    },
    /// `$name(t1, …)`: a previously defined predicate.
    Call(String, Vec<Term>),
    /// `~φ`
    Not(Box<Formula>),
    /// `φ & ψ`
    And(Box<Formula>, Box<Formula>),
    /// `φ | ψ`
    Or(Box<Formula>, Box<Formula>),
    /// `φ => ψ`
    Implies(Box<Formula>, Box<Formula>),
    /// `φ <=> ψ`
    Iff(Box<Formula>, Box<Formula>),
    /// `E x, y φ`
    Exists(Vec<String>, Box<Formula>),
    /// `A x, y φ`
    Forall(Vec<String>, Box<Formula>),
}

impl Term {
    /// Variable term.
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// `self + other`.
    pub fn plus(self, other: Term) -> Term {
        Term::Add(Box::new(self), Box::new(other))
    }

    /// `self + c`, or `self` when `c = 0`.
    pub fn offset(self, c: u64) -> Term {
        if c == 0 {
            self
        } else {
            self.plus(Term::Const(c))
        }
    }

    /// Variables occurring in the term.
    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    /// Value under an assignment (integer arithmetic).
    pub fn eval(&self, env: &BTreeMap<String, u64>) -> Result<i128> {
        Ok(match self {
            Term::Var(v) => *env.get(v).ok_or_else(|| Error::Unbound { kind: "variable", name: v.clone() })? as i128,
            Term::Const(c) => *c as i128,
            Term::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Term::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Term::Mul(a, b) => a.eval(env)? * b.eval(env)?,
        })
    }

    /// Linear normal form.
    pub fn linear(&self) -> Result<Linear> {
        match self {
            Term::Var(v) => Ok(Linear::var(v)),
            Term::Const(c) => Ok(Linear::constant(*c as i128)),
            Term::Add(a, b) => Ok(a.linear()?.add(&b.linear()?, 1)),
            Term::Sub(a, b) => Ok(a.linear()?.add(&b.linear()?, -1)),
            Term::Mul(a, b) => {
                let (a, b) = (a.linear()?, b.linear()?);
                match (a.as_constant(), b.as_constant()) {
                    (Some(c), _) => Ok(b.scale(c)),
                    (_, Some(c)) => Ok(a.scale(c)),
                    _ => Err(Error::Invalid(format!("nonlinear product `{self}`"))),
                }
            }
        }
    }
}

/// A linear form `Σ c_v·v + c` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Linear {
    /// Nonzero coefficients by variable.
    pub coefficients: BTreeMap<String, i128>,
    /// Constant part.
    pub constant: i128,
}

impl Linear {
    /// The form `v`.
    pub fn var(v: &str) -> Linear {
        Linear { coefficients: BTreeMap::from([(v.to_string(), 1)]), constant: 0 }
    }

    /// The form `c`.
    pub fn constant(c: i128) -> Linear {
        Linear { coefficients: BTreeMap::new(), constant: c }
    }

    /// The constant value, if no variable has a nonzero coefficient.
    pub fn as_constant(&self) -> Option<i128> {
        self.coefficients.is_empty().then_some(self.constant)
    }

    /// `self + sign·other`.
    pub fn add(&self, other: &Linear, sign: i128) -> Linear {
        let mut out = self.clone();
        for (v, c) in &other.coefficients {
            *out.coefficients.entry(v.clone()).or_insert(0) += sign * c;
        }
        out.coefficients.retain(|_, c| *c != 0);
        out.constant += sign * other.constant;
        out
    }

    /// `k·self`.
    pub fn scale(&self, k: i128) -> Linear {
        let mut out = Linear::constant(self.constant * k);
        if k != 0 {
            out.coefficients = self.coefficients.iter().map(|(v, c)| (v.clone(), c * k)).collect();
        }
        out
    }

    /// Splits into `(positive part, negated negative part)`, both with
    /// nonnegative coefficients, so that `self = pos − neg`.
    pub fn split(&self) -> (Linear, Linear) {
        let mut pos = Linear::constant(self.constant.max(0));
        let mut neg = Linear::constant((-self.constant).max(0));
        for (v, &c) in &self.coefficients {
            if c > 0 {
                pos.coefficients.insert(v.clone(), c);
            } else {
                neg.coefficients.insert(v.clone(), -c);
            }
        }
        (pos, neg)
    }

    /// Whether the form is negative for every assignment of naturals.
    pub fn provably_negative(&self) -> bool {
        self.constant < 0 && self.coefficients.values().all(|&c| c <= 0)
    }

    /// Whether the form is a single variable with coefficient 1.
    pub fn as_variable(&self) -> Option<&str> {
        match (self.constant, self.coefficients.len()) {
            (0, 1) => {
                let (v, &c) = self.coefficients.iter().next().expect("one entry");
                (c == 1).then_some(v.as_str())
            }
            _ => None,
        }
    }
}

impl Formula {
    /// `φ & ψ`.
    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    /// `φ | ψ`.
    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    /// `~φ`.
    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    /// Conjunction of a list (`true` when empty).
    pub fn all(items: Vec<Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Bool(true))
    }

    /// Disjunction of a list (`false` when empty).
    pub fn any(items: Vec<Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bool(false))
    }

    /// `S[t] = @letter`.
    pub fn seq_is(seq: &str, index: Term, letter: &str) -> Formula {
        Formula::SeqIs { seq: seq.to_string(), index, letter: letter.to_string() }
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bool(_) => {}
            Formula::Compare(_, a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Formula::SeqIs { index, .. } => index.vars(out),
            Formula::SeqSame { left, right } => {
                left.1.vars(out);
                right.1.vars(out);
            }
            Formula::Call(_, args) => args.iter().for_each(|t| t.vars(out)),
            Formula::Not(a) => a.collect_free(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                for v in vs {
                    inner.remove(v);
                }
                out.extend(inner);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Add(a, b) => match **b {
                Term::Add(..) | Term::Sub(..) => write!(f, "{a}+({b})"),
                _ => write!(f, "{a}+{b}"),
            },
            Term::Sub(a, b) => match **b {
                Term::Add(..) | Term::Sub(..) => write!(f, "{a}-({b})"),
                _ => write!(f, "{a}-{b}"),
            },
            Term::Mul(a, b) => {
                let wrap = |t: &Term| matches!(t, Term::Add(..) | Term::Sub(..));
                match (wrap(a), wrap(b)) {
                    (false, false) => write!(f, "{a}*{b}"),
                    (true, false) => write!(f, "({a})*{b}"),
                    (false, true) => write!(f, "{a}*({b})"),
                    (true, true) => write!(f, "({a})*({b})"),
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    /// Fully parenthesized text in the parser's syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bool(b) => write!(f, "{b}"),
            Formula::Compare(op, a, b) => write!(f, "{a}{}{b}", op.symbol()),
            Formula::SeqIs { seq, index, letter } => write!(f, "{seq}[{index}]=@{letter}"),
            Formula::SeqSame { left, right } => write!(f, "{}[{}]={}[{}]", left.0, left.1, right.0, right.1),
            Formula::Call(name, args) => {
                let args: Vec<String> = args.iter().map(Term::to_string).collect();
                write!(f, "${name}({})", args.join(","))
            }
            Formula::Not(a) => write!(f, "~({a})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} => {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <=> {b})"),
            Formula::Exists(vs, body) => write!(f, "(E {} {body})", vs.join(",")),
            Formula::Forall(vs, body) => write!(f, "(A {} {body})", vs.join(",")),
        }
    }
}
