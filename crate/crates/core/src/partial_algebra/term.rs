use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::structure::{BinaryOp, FiniteStructure, UnaryOp};
use crate::error::{Error, Result};

/// A term over the structure's signature: variables, the constants `bot`
/// and `top`, and applications `op(t)` / `op(t, t)` of table symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Bot,
    Top,
    Unary(UnaryOp, Box<Term>),
    Binary(BinaryOp, Box<Term>, Box<Term>),
}

impl Term {
    /// Checks that every symbol has a table in `s`.
    pub fn check_symbols(&self, s: &FiniteStructure) -> Result<()> {
        match self {
            Term::Var(_) | Term::Bot | Term::Top => Ok(()),
            Term::Unary(op, t) => {
                if !s.has_unary(*op) {
                    return Err(Error::UnknownSymbol(op.name().to_string()));
                }
                t.check_symbols(s)
            }
            Term::Binary(op, a, b) => {
                if !s.has_binary(*op) {
                    return Err(Error::UnknownSymbol(op.name().to_string()));
                }
                a.check_symbols(s)?;
                b.check_symbols(s)
            }
        }
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::Bot | Term::Top => {}
            Term::Unary(_, t) => t.collect_vars(out),
            Term::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn eval(&self, s: &FiniteStructure, env: &HashMap<String, usize>) -> Result<Option<usize>> {
        Ok(match self {
            Term::Var(v) => Some(
                *env.get(v)
                    .ok_or_else(|| Error::input(format!("variable `{v}` is not assigned")))?,
            ),
            Term::Bot => Some(s.bot()),
            Term::Top => Some(s.top()),
            Term::Unary(op, t) => s.un(*op, t.eval(s, env)?),
            Term::Binary(op, a, b) => {
                let x = a.eval(s, env)?;
                let y = b.eval(s, env)?;
                s.bin(*op, x, y)
            }
        })
    }
}

/// Strict evaluation: `Ok(None)` iff some subterm is undefined.
pub fn evaluate_term(
    s: &FiniteStructure,
    term: &Term,
    assignment: &HashMap<String, usize>,
) -> Result<Option<usize>> {
    term.check_symbols(s)?;
    term.eval(s, assignment)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Bot => f.write_str("bot"),
            Term::Top => f.write_str("top"),
            Term::Unary(op, t) => write!(f, "{op}({t})"),
            Term::Binary(op, a, b) => write!(f, "{op}({a}, {b})"),
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::input(format!("trailing input in term `{s}` at byte {}", p.pos)));
        }
        Ok(t)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::input(format!("expected `{c}` in term `{}` at byte {}", self.src, self.pos)))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(Error::input(format!("expected a name in term `{}` at byte {}", self.src, self.pos)));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?.to_string();
        if !self.eat('(') {
            return Ok(match name.as_str() {
                "bot" => Term::Bot,
                "top" => Term::Top,
                _ => Term::Var(name),
            });
        }
        let first = self.term()?;
        if self.eat(',') {
            let second = self.term()?;
            self.expect(')')?;
            let op: BinaryOp = name.parse()?;
            Ok(Term::Binary(op, Box::new(first), Box::new(second)))
        } else {
            self.expect(')')?;
            let op: UnaryOp = name.parse()?;
            Ok(Term::Unary(op, Box::new(first)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FiniteStructure {
        let carrier = ["0", "a", "b", "1"].map(String::from).to_vec();
        let s = FiniteStructure::new(carrier, &[(0, 1), (0, 2), (1, 3), (2, 3)], 0, 3).unwrap();
        let n = 4;
        let mut vee = vec![None; n * n];
        let mut wedge = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                vee[x * n + y] = s.order_join(x, y);
                wedge[x * n + y] = s.order_meet(x, y);
            }
        }
        // leave a ∨ b undefined
        vee[n + 2] = None;
        s.with_binary(BinaryOp::Vee, vee).unwrap().with_binary(BinaryOp::Wedge, wedge).unwrap()
    }

    fn env(pairs: &[(&str, usize)]) -> HashMap<String, usize> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn parse_and_print() {
        let t: Term = "wedge(vee(a, b), top)".parse().unwrap();
        assert_eq!(t.to_string(), "wedge(vee(a, b), top)");
        assert_eq!(t.variables(), vec!["a", "b"]);
        assert!("vee(a".parse::<Term>().is_err());
        assert!("vee(a, b) c".parse::<Term>().is_err());
        assert!(matches!("frob(a)".parse::<Term>(), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn strict_evaluation() {
        let s = diamond();
        let bot: Term = "bot".parse().unwrap();
        assert_eq!(evaluate_term(&s, &bot, &env(&[])).unwrap(), Some(0));
        let t: Term = "vee(a, b)".parse().unwrap();
        assert_eq!(evaluate_term(&s, &t, &env(&[("a", 1), ("b", 2)])).unwrap(), None);
        assert_eq!(evaluate_term(&s, &t, &env(&[("a", 2), ("b", 1)])).unwrap(), Some(3));
        let t: Term = "wedge(vee(a, b), top)".parse().unwrap();
        assert_eq!(evaluate_term(&s, &t, &env(&[("a", 1), ("b", 2)])).unwrap(), None);
        assert_eq!(evaluate_term(&s, &t, &env(&[("a", 0), ("b", 2)])).unwrap(), Some(2));
    }

    #[test]
    fn missing_tables_and_variables() {
        let s = diamond();
        let t: Term = "ls(a)".parse().unwrap();
        assert!(matches!(evaluate_term(&s, &t, &env(&[("a", 0)])), Err(Error::UnknownSymbol(_))));
        let t: Term = "vee(a, c)".parse().unwrap();
        assert!(evaluate_term(&s, &t, &env(&[("a", 0)])).is_err());
    }
}
