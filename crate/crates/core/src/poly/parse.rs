//! Text form of polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := (coef | factor) ('*' factor)*
//! factor := var ('^' nat)? | '(' expr ')' ('^' nat)?
//! var    := 'x' nat            (1-based, at most nvars)
//! coef   := integer ['/' integer]   (fractions only over QQ)
//! ```
//!
//! Whitespace is ignored and multiplication is always explicit. Parentheses
//! are accepted on input but never produced by the formatter.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

use super::multi::MultiPoly;

pub fn parse(text: &str, nvars: usize, field: FieldSpec) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        field,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    field: FieldSpec,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
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

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn nat(&mut self) -> Result<u32> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error("exponent out of range"))
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars, self.field);
        let mut negate = self.eat(b'-');
        if !negate {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => MultiPoly::constant(self.nvars, self.coef()?),
            _ => self.factor()?,
        };
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn coef(&mut self) -> Result<FieldElement> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.eat(b'/') {
            let at = self.pos;
            let den: BigInt = self.digits()?.parse().expect("digits");
            if !self.field.is_rationals() {
                return Err(Error::FieldLiteral(format!("{num}/{den} (byte {at})")));
            }
            if den == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            return Ok(FieldElement::from_rational(num_rational::BigRational::new(num, den)));
        }
        Ok(FieldElement::from_bigint(self.field, &num))
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let idx = self.nat()? as usize;
                if idx == 0 || idx > self.nvars {
                    return Err(Error::UnknownVariable {
                        index: idx,
                        nvars: self.nvars,
                    });
                }
                MultiPoly::var(self.nvars, self.field, idx - 1)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                inner
            }
            Some(_) => return Err(self.error("expected a variable or `(`")),
            None => return Err(self.error("unexpected end of input")),
        };
        if self.eat(b'^') {
            let e = self.nat()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }
}

/// Joins `(monomial text, coefficient)` pairs, already in display order, into
/// `a - b + c` form. An empty monomial text means the constant term.
pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a FieldElement)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let negative = c.is_negative_literal();
        let abs = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
