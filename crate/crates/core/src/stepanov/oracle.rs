//! Truncated power series along a curve branch.
//!
//! At a smooth point `(x0, y0)` with `P_y(x0, y0) != 0` the curve is locally
//! `y = y(x0 + s)`. The `k`-th derivative of `Psi(x, y(x))` at `x0` is
//! `k!` times the coefficient of `s^k` in `Psi(x0 + s, y(x0 + s))`.

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::polyalg::BiPoly;

pub(crate) struct Series {
    ctx: FieldCtx,
    len: usize,
}

impl Series {
    pub fn new(ctx: &FieldCtx, len: usize) -> Self {
        Series {
            ctx: ctx.clone(),
            len: len.max(1),
        }
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.ctx.p() as u128;
        let mut out = vec![0u64; self.len];
        for (k, o) in out.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for i in 0..=k {
                if i < a.len() && k - i < b.len() {
                    acc += (a[i] * b[k - i]) as u128;
                }
            }
            *o = (acc % p) as u64;
        }
        out
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        let ctx = &self.ctx;
        let a0 = ctx.try_inv(a[0])?;
        let mut out = vec![0u64; self.len];
        out[0] = a0;
        for k in 1..self.len {
            let mut acc = 0u64;
            for i in 1..=k.min(a.len() - 1) {
                acc = ctx.add(acc, ctx.mul(a[i], out[k - i]));
            }
            out[k] = ctx.mul(ctx.neg(acc), a0);
        }
        Ok(out)
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        base.resize(self.len, 0);
        let mut acc = vec![0u64; self.len];
        acc[0] = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `(x0 + s)^e` via binomial coefficients; needs `x0 != 0`.
    pub fn shifted_power(&self, x0: u64, e: u64) -> Vec<u64> {
        let ctx = &self.ctx;
        let mut out = vec![0u64; self.len];
        let xinv = ctx.inv(x0);
        let mut cur = ctx.pow(x0, e);
        let em = ctx.reduce(e);
        for (j, o) in out.iter_mut().enumerate() {
            if (j as u64) > e {
                break;
            }
            *o = cur;
            // C(e, j+1) x0^{e-j-1} = C(e, j) x0^{e-j} (e - j) / ((j + 1) x0)
            let f = ctx.mul(ctx.sub(em, ctx.reduce(j as u64)), ctx.inv(ctx.reduce(j as u64 + 1)));
            cur = ctx.mul(ctx.mul(cur, f), xinv);
        }
        out
    }

    pub fn eval_bipoly(&self, p: &BiPoly, x: &[u64], y: &[u64]) -> Vec<u64> {
        let (dx, dy) = p.bidegree();
        let mut xp = vec![self.pow(x, 0)];
        for i in 1..=dx as usize {
            xp.push(self.mul(&xp[i - 1], x));
        }
        let mut yp = vec![self.pow(y, 0)];
        for j in 1..=dy as usize {
            yp.push(self.mul(&yp[j - 1], y));
        }
        let ctx = &self.ctx;
        let mut out = vec![0u64; self.len];
        for (&(i, j), &c) in p.terms() {
            let term = self.mul(&xp[i as usize], &yp[j as usize]);
            for (o, v) in out.iter_mut().zip(term) {
                *o = ctx.add(*o, ctx.mul(v, c));
            }
        }
        out
    }

    /// `y(x0 + s)` on `P = 0` through `(x0, y0)`, by Newton iteration.
    pub fn branch(&self, p: &BiPoly, x0: u64, y0: u64) -> Result<Vec<u64>> {
        let ctx = &self.ctx;
        let py = p.partial_y();
        if py.eval(x0, y0) == 0 {
            return Err(Error::SingularEvaluation(x0, y0));
        }
        let mut x = vec![0u64; self.len];
        x[0] = x0;
        if self.len > 1 {
            x[1] = 1;
        }
        let mut y = vec![0u64; self.len];
        y[0] = y0;
        let mut prec = 1;
        while prec < self.len {
            let f = self.eval_bipoly(p, &x, &y);
            let d = self.eval_bipoly(&py, &x, &y);
            let step = self.mul(&f, &self.inv(&d)?);
            for (yy, s) in y.iter_mut().zip(step) {
                *yy = ctx.sub(*yy, s);
            }
            prec *= 2;
        }
        debug_assert!(self.eval_bipoly(p, &x, &y).iter().all(|&v| v == 0));
        Ok(y)
    }
}
