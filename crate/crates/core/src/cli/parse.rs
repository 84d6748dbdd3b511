//! Polynomial expressions:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nonneg-int)?
//! base   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant and there is no implicit multiplication.
//! Positions in errors are 0-based byte offsets.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polycore::guard::max_coeff_words;
use crate::polycore::Poly;

pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Canonical text that [`parse_poly`] reads back to the same polynomial.
pub fn render(p: &Poly) -> String {
    p.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            message: message.into(),
        }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            self.pos = at;
            return Err(self.error("exponent must be a non-negative integer"));
        }
        let e: u32 = digits.parse().map_err(|_| Error::Parse {
            pos: at,
            message: "exponent too large".into(),
        })?;
        let deg = base.degree().unwrap_or(0) as u64;
        if deg.saturating_mul(e as u64) > max_coeff_words() {
            return Err(Error::ResourceLimit {
                predicted: deg as u128 * e as u128,
                limit: max_coeff_words(),
            });
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(Poly::constant(d.parse::<BigInt>().expect("digits")))
            }
            Some(_) => Err(self.error("expected an integer, 'x' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
