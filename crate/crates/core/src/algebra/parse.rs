//! Parser for the ASCII polynomial grammar shared by every text interface.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := [coef ['*']] factor ('*' factor)*  |  coef
//! coef   := integer | integer '/' integer
//! factor := var ['^' exponent]
//! ```
//!
//! Whitespace is ignored. A bare `coef` term is accepted for constants, and the
//! zero polynomial is written `0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// One parsed term: a rational coefficient, exponents per variable and its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawTerm {
    pub num: BigInt,
    pub den: BigInt,
    pub exps: Vec<u32>,
    pub text: String,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("valid digits"))
    }

    fn exponent(&mut self) -> Result<u32, Error> {
        let start = self.pos;
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })
    }

    fn variable(&mut self, vars: &[&str]) -> Result<usize, Error> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        for (idx, name) in vars.iter().enumerate() {
            let nb = name.as_bytes();
            if rest.starts_with(nb) && rest.get(nb.len()).is_none_or(|c| !c.is_ascii_alphanumeric()) {
                self.pos += nb.len();
                return Ok(idx);
            }
        }
        Err(self.err(format!("expected one of the variables {}", vars.join(", "))))
    }
}

/// Parses `text` into terms over the given variable names. Like terms are not merged.
pub(crate) fn parse_terms(text: &str, vars: &[&str]) -> Result<Vec<RawTerm>, Error> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let start = {
            cur.skip_ws();
            cur.pos
        };
        let mut negative = false;
        if cur.eat(b'-') {
            negative = true;
        } else if cur.eat(b'+') {
        } else if !first {
            return Err(cur.err("expected '+' or '-'"));
        }
        first = false;

        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut exps = vec![0u32; vars.len()];
        let mut has_coef = false;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            num = cur.integer()?;
            has_coef = true;
            if cur.eat(b'/') {
                let pos = cur.pos;
                den = cur.integer()?;
                if den.is_zero() {
                    return Err(Error::Syntax { pos, msg: "zero denominator".into() });
                }
            }
        }
        let mut need_factor = !has_coef;
        if has_coef && cur.eat(b'*') {
            need_factor = true;
        }
        if need_factor || cur.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            loop {
                let v = cur.variable(vars)?;
                let e = if cur.eat(b'^') { cur.exponent()? } else { 1 };
                exps[v] += e;
                if !cur.eat(b'*') {
                    break;
                }
            }
        }
        if negative {
            num = -num;
        }
        let end = cur.pos;
        terms.push(RawTerm { num, den, exps, text: text[start..end].trim().to_string() });
        match cur.peek() {
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(_) => return Err(cur.err("unexpected character")),
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SVARS: [&str; 4] = ["s0", "s1", "t0", "t1"];

    #[test]
    fn parses_coefficients_and_powers() {
        let t = parse_terms("-s0^3*t0^2 - 2*s1^3*t0^2 + 3/4 s0*s0", &SVARS).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].num, BigInt::from(-1));
        assert_eq!(t[0].exps, vec![3, 0, 2, 0]);
        assert_eq!(t[1].num, BigInt::from(-2));
        assert_eq!(t[1].text, "- 2*s1^3*t0^2");
        assert_eq!(t[2].den, BigInt::from(4));
        assert_eq!(t[2].exps, vec![2, 0, 0, 0]);
    }

    #[test]
    fn reports_error_positions() {
        match parse_terms("s0*t0 + * t1", &SVARS) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_terms("s0 t0", &SVARS).is_err());
        assert!(parse_terms("s2", &SVARS).is_err());
        assert!(parse_terms("", &SVARS).is_err());
        assert!(parse_terms("1/0*s0", &SVARS).is_err());
    }

    #[test]
    fn constants_are_terms() {
        let t = parse_terms("0", &SVARS).unwrap();
        assert_eq!(t[0].num, BigInt::from(0));
        assert_eq!(t[0].exps, vec![0; 4]);
    }
}
