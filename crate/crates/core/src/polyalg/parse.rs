//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' digits)?
//! primary := digits | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. There is no implicit
//! multiplication: `3x` is rejected at the `x`.

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;

use super::bi::BiPoly;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u64 = 1 << 20;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a FieldCtx,
}

pub fn parse_poly(text: &str, ctx: &FieldCtx) -> Result<BiPoly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let out = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.unexpected());
    }
    Ok(out)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> Error {
        match self.src.get(self.pos) {
            Some(&b) => Error::Syntax {
                offset: self.pos,
                msg: format!("unexpected `{}`", b as char),
            },
            None => Error::Syntax {
                offset: self.pos,
                msg: "unexpected end of input".into(),
            },
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'-') => Err(Error::NegativeExponent { offset: self.pos }),
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                let e = self.digits(|acc, d| acc.checked_mul(10).and_then(|v| v.checked_add(d)))?;
                match e {
                    Some(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                    _ => Err(Error::Syntax {
                        offset: start,
                        msg: "exponent too large".into(),
                    }),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    /// Folds a run of decimal digits; the caller has checked one is present.
    fn digits<F>(&mut self, mut step: F) -> Result<Option<u64>>
    where
        F: FnMut(u64, u64) -> Option<u64>,
    {
        let mut acc = Some(0u64);
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            acc = acc.and_then(|a| step(a, (b - b'0') as u64));
            self.pos += 1;
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x(self.ctx))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::y(self.ctx))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let p = self.ctx.p();
                // literals of any length are reduced digit by digit
                let v = self.digits(|acc, d| Some((acc * 10 + d) % p))?.unwrap_or(0);
                Ok(BiPoly::constant(self.ctx, v))
            }
            _ => Err(self.unexpected()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::new(7).unwrap()
    }

    #[test]
    fn examples() {
        let ctx = f7();
        let p = parse_poly("x - y + 1", &ctx).unwrap();
        assert_eq!(
            p,
            BiPoly::from_terms(&ctx, [(1, 0, 1), (0, 1, 6), (0, 0, 1)])
        );
        let q = parse_poly("x^2*y + 5", &ctx).unwrap();
        assert_eq!(q, BiPoly::from_terms(&ctx, [(2, 1, 1), (0, 0, 5)]));
        assert!(matches!(
            parse_poly("x +", &ctx),
            Err(Error::Syntax { offset: 3, .. })
        ));
    }

    #[test]
    fn errors() {
        let ctx = f7();
        assert!(matches!(
            parse_poly("3x", &ctx),
            Err(Error::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            parse_poly("x^-2", &ctx),
            Err(Error::NegativeExponent { offset: 2 })
        ));
        assert!(matches!(
            parse_poly("(x + 1", &ctx),
            Err(Error::Syntax { offset: 6, .. })
        ));
        assert!(matches!(parse_poly("", &ctx), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_poly("x^y", &ctx), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("z", &ctx), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn precedence_and_literals() {
        let ctx = FieldCtx::new(101).unwrap();
        let a = parse_poly("-x^2", &ctx).unwrap();
        assert_eq!(a, BiPoly::from_i64_terms(&ctx, &[(2, 0, -1)]));
        let b = parse_poly("2*(x + y)^2 - -3", &ctx).unwrap();
        assert_eq!(
            b,
            BiPoly::from_i64_terms(&ctx, &[(2, 0, 2), (1, 1, 4), (0, 2, 2), (0, 0, 3)])
        );
        let c = parse_poly("  123456789012345678901234567890 * x ", &ctx).unwrap();
        let big = "123456789012345678901234567890"
            .bytes()
            .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % 101);
        assert_eq!(c, BiPoly::monomial(&ctx, 1, 0, big));
    }
}
