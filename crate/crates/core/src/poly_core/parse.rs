//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' NONNEG_INT)?
//! base   := INT | 'x' | '(' expr ')'
//! ```
//!
//! ASCII whitespace is ignored between tokens. The optional leading sign
//! lets every canonical printed form (e.g. `-x^2+3`) parse back.

use num_bigint::BigInt;

use super::IntPoly;
use crate::error::{Error, Result};

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 4096;

pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected character '{}'", c as char)));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
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

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntPoly> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            self.pos = start;
            return Err(self.error("exponent must be a nonnegative integer literal"));
        }
        let e: u32 = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| Error::Parse {
                position: start,
                message: format!("exponent exceeds {MAX_EXPONENT}"),
            })?;
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<IntPoly> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(IntPoly::x())
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
                let digits = self.digits();
                let value: BigInt = digits.parse().expect("ascii digits");
                Ok(IntPoly::constant(value))
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coeffs(text: &str) -> Vec<i64> {
        parse_poly(text)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(coeffs("(x^2-1)^2"), vec![1, 0, -2, 0, 1]);
        assert_eq!(coeffs("x"), vec![0, 1]);
        assert_eq!(coeffs("2*x+1"), vec![1, 2]);
    }

    #[test]
    fn whitespace_and_signs() {
        assert_eq!(coeffs(" 4 * x ^ 2 + 4*x + 1 "), vec![1, 4, 4]);
        assert_eq!(coeffs("-x^2+3"), vec![3, 0, -1]);
        assert_eq!(coeffs("x*(x-5)+6"), vec![6, -5, 1]);
        assert_eq!(coeffs("(-x)^3"), vec![0, 0, 0, -1]);
        assert_eq!(coeffs("x^0"), vec![1]);
        assert!(parse_poly("x-x").unwrap().is_zero());
    }

    #[test]
    fn big_literals_do_not_overflow() {
        let p = parse_poly("123456789012345678901234567890*x").unwrap();
        assert_eq!(p.coeff(1).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn errors_carry_positions() {
        let err = |s: &str| match parse_poly(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(err("x^-1"), 2);
        assert_eq!(err("x^y"), 2);
        assert_eq!(err("2x"), 1);
        assert_eq!(err("(x+1"), 4);
        assert_eq!(err(""), 0);
        assert_eq!(err("x+"), 2);
        assert_eq!(err("y"), 0);
    }

    proptest! {
        #[test]
        fn print_parse_is_idempotent(c in prop::collection::vec(-1000i64..=1000, 0..7)) {
            let p = IntPoly::from_i64s(&c);
            let printed = p.to_string();
            let reparsed = parse_poly(&printed).unwrap();
            prop_assert_eq!(&reparsed, &p);
            prop_assert_eq!(reparsed.to_string(), printed);
        }
    }
}
