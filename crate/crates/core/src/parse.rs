//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := var | rational | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

pub fn parse_poly(text: &str, ctx: &VarContext, field: Field) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx, field };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty input"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Poly {
    pub fn parse(text: &str, ctx: &VarContext, field: Field) -> Result<Poly> {
        parse_poly(text, ctx, field)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a VarContext,
    field: Field,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.nat()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self.ctx.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                Ok(Poly::var(self.ctx, self.field, i))
            }
            Some(_) => Err(self.err("expected variable, number or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn rational(&mut self) -> Result<Poly> {
        let num = self.nat()?;
        let mut den = BigInt::from(1);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            den = self.nat()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
        }
        let q = BigRational::new(num, den);
        let c = self.field.from_rational(&q)?;
        Ok(Poly::constant(self.ctx, self.field, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let ctx = VarContext::plane();
        let f2 = Field::Prime(2);
        let p = parse_poly("Z^4+T+T^6", &ctx, f2).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "T^6 + Z^4 + T");
        let q = Field::Rationals;
        let p = parse_poly("-(Z - 1/2*T)^2", &ctx, q).unwrap();
        let s = p.to_string();
        assert_eq!(s, "-Z^2 + Z*T - 1/4*T^2");
        assert_eq!(parse_poly(&s, &ctx, q).unwrap(), p);
        assert!(parse_poly("0", &ctx, q).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let ctx = VarContext::plane();
        let q = Field::Rationals;
        match parse_poly("Z + * T", &ctx, q) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_poly("W", &ctx, q), Err(Error::UnknownVariable("W".into())));
        assert!(matches!(parse_poly("1/5*Z", &ctx, Field::Prime(5)), Err(Error::NotInvertible(_))));
    }
}
