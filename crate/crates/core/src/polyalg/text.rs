//! Plain-text polynomial format: one polynomial per line, terms such as
//! `-3*x2^2*x3*x6 + 24*x2*x3^2`, integer or `p/q` coefficients. Blank lines
//! and lines starting with `#` are ignored.

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{variables, Monomial, MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::rational::Rational;

struct RawTerm {
    coeff: Rational,
    powers: Vec<(String, u32)>,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        Ok(text.parse().expect("digits parse"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            Ok(std::str::from_utf8(&self.s[start..self.pos])
                .expect("ascii")
                .to_string())
        } else {
            Err(self.err("expected a number or variable name"))
        }
    }

    fn factor(&mut self, term: &mut RawTerm) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let value = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                term.coeff *= value;
            }
            _ => {
                let name = self.ident()?;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.digits()?;
                    u32::try_from(e).map_err(|_| self.err("exponent too large"))?
                } else {
                    1
                };
                term.powers.push((name, exp));
            }
        }
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        let mut t = RawTerm {
            coeff: if negative { -Rational::one() } else { Rational::one() },
            powers: Vec::new(),
        };
        self.factor(&mut t)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut t)?;
        }
        Ok(t)
    }

    fn polynomial(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        terms.push(self.term(negative)?);
        loop {
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                Some(_) => return Err(self.err("expected '+', '-' or end of line")),
            }
        }
        Ok(terms)
    }
}

/// Orders names like `x2 < x10 < y` (alphabetic prefix, then numeric
/// suffix).
pub fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        (&s[..cut], s[cut..].parse().ok())
    }
    split(a).cmp(&split(b)).then_with(|| a.cmp(b))
}

/// Parses a polynomial file. With `vars == None` the variable list is every
/// name that occurs, in natural order.
pub fn parse_system(text: &str, vars: Option<&[String]>) -> Result<Vec<MultiPoly>> {
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut c = Cursor {
            s: line.as_bytes(),
            pos: 0,
            line: i + 1,
        };
        raw.push((i + 1, c.polynomial()?));
    }
    let names: Vars = match vars {
        Some(v) => variables(v),
        None => {
            let mut all: Vec<String> = raw
                .iter()
                .flat_map(|(_, ts)| ts.iter().flat_map(|t| t.powers.iter().map(|p| p.0.clone())))
                .collect();
            all.sort_by(|a, b| natural_cmp(a, b));
            all.dedup();
            variables(&all)
        }
    };
    raw.into_iter()
        .map(|(line, terms)| build(&names, line, terms))
        .collect()
}

/// Parses a single polynomial over the given variables.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly> {
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: 0,
        line: 1,
    };
    let terms = c.polynomial()?;
    build(vars, 1, terms)
}

fn build(vars: &Vars, line: usize, terms: Vec<RawTerm>) -> Result<MultiPoly> {
    let mut p = MultiPoly::zero(vars);
    for t in terms {
        let mut e = vec![0u32; vars.len()];
        for (name, exp) in t.powers {
            let idx = vars.iter().position(|v| *v == name).ok_or(Error::Parse {
                line,
                column: 1,
                message: format!("unknown variable {name}"),
            })?;
            e[idx] += exp;
        }
        p.add_term(Monomial::from_exponents(e), t.coeff);
    }
    Ok(p)
}
