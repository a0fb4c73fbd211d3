//! Operator factors with symbolic exponents.
//!
//! For the monomial `x^alpha y^beta` the factor `U_k` is a polynomial in
//! `(alpha, beta)` of total degree `k`: `U_k = sum alpha^i beta^j V_{k,i,j}`.
//! Building the `V` once lets every column of the linear system be filled by
//! evaluating at `(a + bt, ct)`.

use crate::error::Result;
use crate::ffield::FieldCtx;
use crate::polyalg::{powers, BiPoly};

use super::dense::Dense;
use super::derivs::Partials;

pub(crate) fn tri(i: usize, j: usize) -> usize {
    // pairs with i + j = s start at s(s+1)/2
    let s = i + j;
    s * (s + 1) / 2 + j
}

pub(crate) struct OperatorFamily {
    ctx: FieldCtx,
    /// `v[k][tri(i, j)]` for `i + j <= k`.
    v: Vec<Vec<Dense>>,
}

impl OperatorFamily {
    /// Components for `k = 0..=kmax`.
    pub fn new(p: &BiPoly, kmax: u32) -> Result<Self> {
        let ctx = p.ctx().clone();
        if kmax as u64 >= ctx.p() {
            return Err(crate::Error::OrderTooLarge {
                k: kmax as u64,
                p: ctx.p(),
            });
        }
        let pt = Partials::new(p);
        let x = Dense {
            nx: 2,
            ny: 1,
            c: vec![0, 1],
        };
        let y = Dense {
            nx: 1,
            ny: 2,
            c: vec![0, 1],
        };
        let xy = x.mul(&y, &ctx);
        let sa = y.mul(&pt.py, &ctx).mul(&pt.py, &ctx);
        let sb = x.mul(&pt.px, &ctx).mul(&pt.py, &ctx);
        let tt = xy.mul(&pt.jacobian(&pt.py), &ctx);
        let e = xy.mul(&pt.py, &ctx);
        let one = Dense {
            nx: 1,
            ny: 1,
            c: vec![1],
        };
        let mut v = vec![vec![one]];
        if kmax >= 1 {
            v.push(vec![
                Dense::zero(),
                y.mul(&pt.py, &ctx),
                x.mul(&pt.px, &ctx).scale(ctx.neg(1), &ctx),
            ]);
        }
        for k in 1..kmax as usize {
            let kk = ctx.reduce(k as u64);
            // E_k = -k S_a + k S_b - (2k - 1) T
            let ek = sb
                .sub(&sa, &ctx)
                .scale(kk, &ctx)
                .sub(&tt.scale(2 * k as u64 - 1, &ctx), &ctx);
            let prev = &v[k];
            let mut next = vec![Dense::zero(); tri(0, k + 1) + 1];
            for s in 0..=k + 1 {
                for j in 0..=s {
                    let i = s - j;
                    let mut acc = Dense::zero();
                    if s <= k {
                        let cur = &prev[tri(i, j)];
                        if !cur.is_zero() {
                            acc = e.mul(&pt.jacobian(cur), &ctx).add(&cur.mul(&ek, &ctx), &ctx);
                        }
                    }
                    if i >= 1 && s - 1 <= k {
                        let left = &prev[tri(i - 1, j)];
                        if !left.is_zero() {
                            acc = acc.add(&left.mul(&sa, &ctx), &ctx);
                        }
                    }
                    if j >= 1 && s - 1 <= k {
                        let down = &prev[tri(i, j - 1)];
                        if !down.is_zero() {
                            acc = acc.sub(&down.mul(&sb, &ctx), &ctx);
                        }
                    }
                    next[tri(i, j)] = acc;
                }
            }
            v.push(next);
        }
        Ok(OperatorFamily { ctx, v })
    }

    pub fn component(&self, k: usize, i: usize, j: usize) -> &Dense {
        &self.v[k][tri(i, j)]
    }

    /// `U_k` at numeric `(alpha, beta)`.
    pub fn at_exponents(&self, k: usize, alpha: u64, beta: u64) -> Dense {
        let ctx = &self.ctx;
        let ap = powers(ctx, alpha, k);
        let bp = powers(ctx, beta, k);
        let mut acc = Dense::zero();
        for s in 0..=k {
            for j in 0..=s {
                let i = s - j;
                acc = acc.add_scaled(self.component(k, i, j), ctx.mul(ap[i], bp[j]), ctx);
            }
        }
        acc
    }

    /// `V_{k,i,j}(x0, y0)` for every `k`, indexed like the components.
    pub fn values_at(&self, x0: u64, y0: u64) -> Vec<Vec<u64>> {
        let ctx = &self.ctx;
        let maxdeg = self
            .v
            .iter()
            .flatten()
            .map(|d| d.nx.max(d.ny))
            .max()
            .unwrap_or(1);
        let xp = powers(ctx, x0, maxdeg);
        let yp = powers(ctx, y0, maxdeg);
        self.v
            .iter()
            .map(|row| row.iter().map(|d| d.eval(&xp, &yp, ctx)).collect())
            .collect()
    }

    /// `U_k(x0, y0)` at `(alpha, beta)` from precomputed point values.
    #[cfg(test)]
    pub fn eval_values(ctx: &FieldCtx, vals: &[u64], k: usize, alpha: u64, beta: u64) -> u64 {
        let p = ctx.p() as u128;
        let ap = powers(ctx, alpha, k);
        let bp = powers(ctx, beta, k);
        let mut acc: u128 = 0;
        for s in 0..=k {
            for j in 0..=s {
                let i = s - j;
                let v = vals[tri(i, j)];
                if v != 0 {
                    acc += (ctx.mul(v, ap[i]) * bp[j]) as u128;
                }
            }
        }
        (acc % p) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;
    use crate::stepanov::derivs::operator_factors_numeric;

    #[test]
    fn matches_numeric_recursion() {
        let ctx = FieldCtx::new(10007).unwrap();
        let p = parse_poly("x^2*y^2 + 3*x*y - y + x + 5", &ctx).unwrap();
        let fam = OperatorFamily::new(&p, 6).unwrap();
        let pt = Partials::new(&p);
        for (alpha, beta) in [(0, 0), (1, 0), (17, 9000), (4321, 5)] {
            let u = operator_factors_numeric(&pt, alpha, beta, 6);
            for k in 0..=6 {
                assert_eq!(fam.at_exponents(k, alpha, beta), u[k], "k={k}");
                let vals = fam.values_at(3, 7);
                let direct = u[k].to_bipoly(&ctx).eval(3, 7);
                assert_eq!(OperatorFamily::eval_values(&ctx, &vals[k], k, alpha, beta), direct);
            }
        }
    }
}
