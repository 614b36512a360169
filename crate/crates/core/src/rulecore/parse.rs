//! Text front end for recurrence rules.
//!
//! ```text
//! rule  := term ('+' term)*
//! term  := [coeff '*'] 'u[n-' lag ']'
//! coeff := ['-'] digits ['/' digits]
//! ```
//!
//! Whitespace is allowed between tokens.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::RecurrenceRule;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, message: message.into() }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{lit}`")))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("validated digits"))
    }

    fn coeff(&mut self) -> Result<BigRational> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.digits()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::Syntax { pos: den_pos, message: "zero denominator".into() });
            }
            den
        } else {
            BigInt::from(1)
        };
        let q = BigRational::new(num, den);
        Ok(if negative { -q } else { q })
    }

    fn term(&mut self) -> Result<(usize, BigRational)> {
        let coeff = match self.peek() {
            Some(b'u') => BigRational::from_integer(1.into()),
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let q = self.coeff()?;
                self.expect("*")?;
                q
            }
            Some(_) => return Err(self.err("expected a coefficient or `u[n-`")),
            None => return Err(self.err("unexpected end of input")),
        };
        self.expect("u")?;
        self.expect("[")?;
        self.expect("n")?;
        self.expect("-")?;
        let lag_pos = self.pos;
        let lag = self.digits()?;
        self.expect("]")?;
        let lag: usize = lag
            .try_into()
            .map_err(|_| Error::Syntax { pos: lag_pos, message: "lag too large".into() })?;
        if lag < 1 {
            return Err(Error::InvalidLag { lag });
        }
        Ok((lag, coeff))
    }
}

/// Parses a rule such as `u[n-2]+u[n-3]` or `2*u[n-1]+1/2*u[n-4]`.
///
/// Lags come back sorted; repeated lags have their coefficients summed.
pub fn parse_rule(text: &str) -> Result<RecurrenceRule> {
    let mut cur = Cursor::new(text);
    let mut terms = vec![cur.term()?];
    while let Some(c) = cur.peek() {
        if c != b'+' {
            return Err(cur.err("expected `+` or end of input"));
        }
        cur.pos += 1;
        terms.push(cur.term()?);
    }
    RecurrenceRule::from_terms(terms)
}
