//! Text syntax for formulas.
//!
//! ```text
//! formula := ('E' | 'A') var (',' var)* formula        quantifier, maximal scope
//!          | disj ('=>' formula | '<=>' formula)?
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '~' unary | '(' formula ')' | 'true' | 'false' | atom | quantified
//! atom    := S '[' term ']' ('=' | '!=') ('@' letter | S '[' term ']')
//!          | '$' name '(' term (',' term)* ')'
//!          | term ('=' | '!=' | '<' | '<=' | '>' | '>=') term
//! term    := product (('+' | '-') product)*
//! product := primary ('*' primary)*       (an integer directly before a
//!                                           variable multiplies it: 2i)
//! primary := integer | var | '(' term ')'
//! ```
//!
//! Quantifiers may be glued to their variable (`Ei`, `An`) as in the usual
//! listings; an identifier starting with `E` or `A` is read as a quantifier
//! when it is followed by something that can start a formula.

use super::ast::{Cmp, Formula, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(&'static str),
    End,
}

const SYMBOLS: [&str; 20] =
    ["<=>", "=>", "<=", ">=", "!=", "+", "-", "*", "=", "<", ">", "&", "|", "~", "(", ")", "[", "]", "@", ","];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n =
                text[start..i].parse::<u64>().map_err(|e| Error::Parse { pos: start, msg: format!("integer: {e}") })?;
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if c == b'$' {
            out.push((Tok::Sym("$"), i));
            i += 1;
        } else if let Some(sym) = SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            out.push((Tok::Sym(sym), i));
            i += sym.len();
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

/// Parses formula text.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.formula()?;
    match p.peek() {
        Tok::End => Ok(f),
        other => Err(p.error(format!("unexpected {other:?} after formula"))),
    }
}

/// Parses term text.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let t = p.term()?;
    match p.peek() {
        Tok::End => Ok(t),
        other => Err(p.error(format!("unexpected {other:?} after term"))),
    }
}

fn starts_formula(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::Int(_) | Tok::Sym("(") | Tok::Sym("~") | Tok::Sym("$"))
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.toks[self.pos].1, msg }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{sym}`, found {:?}", self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected a name, found {other:?}"))),
        }
    }

    /// Recognizes a quantifier at the cursor: returns (is_universal, first
    /// variable if glued) without consuming.
    fn quantifier(&self) -> Option<(bool, Option<String>)> {
        let Tok::Ident(name) = self.peek() else {
            return None;
        };
        let universal = match name.as_bytes()[0] {
            b'E' => false,
            b'A' => true,
            _ => return None,
        };
        if name.len() == 1 {
            matches!(self.peek_at(1), Tok::Ident(_)).then_some((universal, None))
        } else {
            let next = self.peek_at(1);
            (starts_formula(next) || *next == Tok::Sym(",")).then(|| (universal, Some(name[1..].to_string())))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if let Some((universal, glued)) = self.quantifier() {
            self.bump();
            let mut vars = vec![match glued {
                Some(v) => v,
                None => self.ident()?,
            }];
            while self.eat(",") {
                vars.push(self.ident()?);
            }
            let body = Box::new(self.formula()?);
            return Ok(if universal { Formula::Forall(vars, body) } else { Formula::Exists(vars, body) });
        }
        let left = self.disjunction()?;
        if self.eat("=>") {
            Ok(Formula::Implies(Box::new(left), Box::new(self.formula()?)))
        } else if self.eat("<=>") {
            Ok(Formula::Iff(Box::new(left), Box::new(self.formula()?)))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat("|") {
            f = f.or(self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat("&") {
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(self.unary()?.negate());
        }
        if self.quantifier().is_some() {
            return self.formula();
        }
        if matches!(self.peek(), Tok::Sym("(")) {
            let save = self.pos;
            self.bump();
            if let Ok(f) = self.formula() {
                if self.eat(")") {
                    return Ok(f);
                }
            }
            // Not a parenthesized formula: a term in parentheses.
            self.pos = save;
            return self.atom();
        }
        if let Tok::Ident(name) = self.peek() {
            if matches!(name.as_str(), "true" | "false") && !self.peek_at(1).is_comparison() {
                let b = name == "true";
                self.bump();
                return Ok(Formula::Bool(b));
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        if self.eat("$") {
            let name = self.ident()?;
            self.expect("(")?;
            let mut args = vec![self.term()?];
            while self.eat(",") {
                args.push(self.term()?);
            }
            self.expect(")")?;
            return Ok(Formula::Call(name, args));
        }
        if let (Tok::Ident(seq), Tok::Sym("[")) = (self.peek().clone(), self.peek_at(1)) {
            self.bump();
            self.bump();
            let index = self.term()?;
            self.expect("]")?;
            let negated = if self.eat("=") {
                false
            } else if self.eat("!=") {
                true
            } else {
                return Err(self.error("expected `=` or `!=` after an indexed sequence".into()));
            };
            let f = if self.eat("@") {
                let letter = match self.peek().clone() {
                    Tok::Int(n) => n.to_string(),
                    Tok::Ident(s) => s,
                    other => return Err(self.error(format!("expected a letter after `@`, found {other:?}"))),
                };
                self.bump();
                Formula::SeqIs { seq, index, letter }
            } else {
                let other = self.ident()?;
                self.expect("[")?;
                let other_index = self.term()?;
                self.expect("]")?;
                Formula::SeqSame { left: (seq, index), right: (other, other_index) }
            };
            return Ok(if negated { f.negate() } else { f });
        }
        let left = self.term()?;
        let op = match self.peek() {
            Tok::Sym("=") => Cmp::Eq,
            Tok::Sym("!=") => Cmp::Ne,
            Tok::Sym("<") => Cmp::Lt,
            Tok::Sym("<=") => Cmp::Le,
            Tok::Sym(">") => Cmp::Gt,
            Tok::Sym(">=") => Cmp::Ge,
            other => return Err(self.error(format!("expected a comparison, found {other:?}"))),
        };
        self.bump();
        let right = self.term()?;
        Ok(Formula::Compare(op, left, right))
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        loop {
            if self.eat("+") {
                t = Term::Add(Box::new(t), Box::new(self.product()?));
            } else if self.eat("-") {
                t = Term::Sub(Box::new(t), Box::new(self.product()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.primary()?;
        loop {
            if self.eat("*") {
                t = Term::Mul(Box::new(t), Box::new(self.primary()?));
            } else if matches!(t, Term::Const(_)) && matches!(self.peek(), Tok::Ident(_) | Tok::Sym("(")) {
                // implicit multiplication `2i`, `3(i+1)`
                t = Term::Mul(Box::new(t), Box::new(self.primary()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn primary(&mut self) -> Result<Term> {
        let tok = self.peek().clone();
        match tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Term::Const(n))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Sym("(") => {
                self.bump();
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            other => Err(self.error(format!("expected a term, found {other:?}"))),
        }
    }
}

impl Tok {
    fn is_comparison(&self) -> bool {
        matches!(self, Tok::Sym("=" | "!=" | "<" | "<=" | ">" | ">="))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glued_and_spaced_quantifiers() {
        let a = parse_formula("Ei T[i]=@0 & T[i+1]=@0").unwrap();
        let b = parse_formula("E i (T[i]=@0 & T[i+1]=@0)").unwrap();
        assert_eq!(a, b);
        assert!(a.free_vars().is_empty());
    }

    #[test]
    fn precedence_and_terms() {
        let f = parse_formula("An (n>1) => x = 2n+1 | ~y<=3").unwrap();
        let Formula::Forall(vs, body) = f else { panic!("quantifier expected") };
        assert_eq!(vs, vec!["n"]);
        assert!(matches!(*body, Formula::Implies(..)));
        assert_eq!(parse_term("2i+1").unwrap().linear().unwrap(), parse_term("i+i+1").unwrap().linear().unwrap());
    }

    #[test]
    fn parenthesized_terms_backtrack() {
        let f = parse_formula("(i+1)=j").unwrap();
        assert!(matches!(f, Formula::Compare(Cmp::Eq, Term::Add(..), Term::Var(_))));
    }

    #[test]
    fn variables_starting_with_quantifier_letters() {
        let f = parse_formula("Ex = 3").unwrap();
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["Ex"]);
    }

    #[test]
    fn display_round_trips() {
        for text in
            ["Ei T[i]=@0 & T[i+1]=@0", "A n (n>1) => $good(n, n-1)", "E i,j ~(i<j) <=> T[i]=F[j+2]", "T[3*i] != @1"]
        {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{text}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("E i T[i]=") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("x = y )").is_err());
    }
}
