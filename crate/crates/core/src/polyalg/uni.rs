use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;

/// Dense univariate polynomial over `F_p`, lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?} over {:?}", self.coeffs, self.ctx)
    }
}

impl UniPoly {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = ctx.reduce(*c);
        }
        let mut out = UniPoly {
            ctx: ctx.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    pub fn from_i64(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        UniPoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ctx: &FieldCtx, c: u64) -> Self {
        Self::new(ctx, vec![c])
    }

    /// The polynomial `X`.
    pub fn x(ctx: &FieldCtx) -> Self {
        Self::new(ctx, vec![0, 1])
    }

    /// `prod (X - r)` over the given roots.
    pub fn from_roots(ctx: &FieldCtx, roots: &[u64]) -> Self {
        let mut out = Self::constant(ctx, 1);
        for &r in roots {
            out = out.mul(&Self::new(ctx, vec![ctx.neg(ctx.reduce(r)), 1]));
        }
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let ctx = &self.ctx;
        let x = ctx.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ctx.add(self.coeff(i), other.coeff(i)))
            .collect();
        let mut out = UniPoly {
            ctx: self.ctx.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ctx.sub(self.coeff(i), other.coeff(i)))
            .collect();
        let mut out = UniPoly {
            ctx: self.ctx.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect(),
        }
    }

    pub fn scale(&self, s: u64) -> Self {
        let s = self.ctx.reduce(s);
        if s == 0 {
            return Self::zero(&self.ctx);
        }
        UniPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&c| self.ctx.mul(c, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let p = self.ctx.p() as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += (a * b) as u128;
            }
        }
        let coeffs = acc.into_iter().map(|v| (v % p) as u64).collect();
        let mut out = UniPoly {
            ctx: self.ctx.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut out = Self::constant(&self.ctx, 1);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Formal derivative with characteristic-p coefficients.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.ctx.mul(c, self.ctx.reduce(i as u64)))
            .collect();
        let mut out = UniPoly {
            ctx: self.ctx.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let ctx = &self.ctx;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(ctx), self.clone()));
        }
        let lead_inv = ctx.inv(divisor.leading());
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = ctx.mul(c, lead_inv);
            quot[i - dd] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = ctx.sub(rem[k], ctx.mul(f, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(ctx, quot), Self::new(ctx, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Divide exactly, failing if there is a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::BadShape("inexact division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.ctx.inv(self.leading()))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut out = Self::constant(&self.ctx, 1).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(out)
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for &c in self.coeffs.iter().rev() {
            out = out.mul(g).add(&Self::constant(&self.ctx, c));
        }
        out
    }
}
