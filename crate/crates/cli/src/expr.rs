//! Rational-function expressions over three named variables.
//!
//! Accepts integers, the variable names, `+ - * /`, `^` with an integer
//! exponent, and parentheses. Every string produced by the text writers
//! parses back to the same value.

use std::fmt;

use ldt::algebra::{RatFunc, Var, Q};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub at: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} at byte {}: {}", self.input, self.at, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let err = |at: usize, m: &str| ParseError {
        input: s.to_string(),
        at,
        message: m.to_string(),
    };
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().map_err(|_| err(start, "bad integer"))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(i, "unexpected character"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: [&'a str; 3],
}

impl Parser<'_> {
    fn err(&self, m: &str) -> ParseError {
        let at = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.input.len());
        ParseError {
            input: self.input.to_string(),
            at,
            message: m.to_string(),
        }
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs).ok_or_else(|| self.err("division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        if e < 0 && base.is_zero() {
            return Err(self.err("zero to a negative power"));
        }
        Ok(base.pow(e))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let mut sign = 1;
        let mut paren = false;
        if self.peek_op() == Some('(') {
            paren = true;
            self.pos += 1;
        }
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            if c == '-' {
                sign = -sign;
            }
            self.pos += 1;
        }
        let n = match self.toks.get(self.pos) {
            Some((_, Tok::Int(n))) => i64::try_from(n).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected an integer exponent")),
        };
        self.pos += 1;
        if paren {
            self.expect(')')?;
        }
        Ok(sign * n)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c)))
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        let tok = self.toks.get(self.pos).cloned();
        match tok {
            Some((_, Tok::Int(n))) => {
                self.pos += 1;
                Ok(RatFunc::constant(Q::from_integer(n)))
            }
            Some((_, Tok::Ident(name))) => {
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| self.err(&format!("unknown variable {:?}", name)))?;
                self.pos += 1;
                Ok(RatFunc::var(Var::ALL[i]))
            }
            Some((_, Tok::Op('('))) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses `s` with `names` bound to the slots `s`, `t1`, `t2` in order.
pub fn parse_ratfunc_with(s: &str, names: [&str; 3]) -> Result<RatFunc, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        input: s,
        toks,
        pos: 0,
        names,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, ParseError> {
    parse_ratfunc_with(s, ldt::algebra::text::DEFAULT_NAMES)
}
