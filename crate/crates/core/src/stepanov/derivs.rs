//! Implicit derivatives on `P(x, y) = 0` and the operator factors `R_{k,a,b,c}`.

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::polyalg::BiPoly;

use super::dense::Dense;

/// `d^k y / dx^k = q / r` on the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivPair {
    pub k: u32,
    pub q: BiPoly,
    pub r: BiPoly,
}

/// Partial derivatives of `P` in dense form, shared by the recursions.
pub(crate) struct Partials {
    pub ctx: FieldCtx,
    pub px: Dense,
    pub py: Dense,
    pub pxy: Dense,
    pub pyy: Dense,
}

impl Partials {
    pub fn new(p: &BiPoly) -> Self {
        let ctx = p.ctx().clone();
        let d = Dense::from_bipoly(p);
        let px = d.partial_x(&ctx);
        let py = d.partial_y(&ctx);
        let pxy = py.partial_x(&ctx);
        let pyy = py.partial_y(&ctx);
        Partials {
            ctx,
            px,
            py,
            pxy,
            pyy,
        }
    }

    /// `F_x P_y - F_y P_x`, so that `dF/dx = J(F) / P_y` on the curve.
    pub fn jacobian(&self, f: &Dense) -> Dense {
        let ctx = &self.ctx;
        f.partial_x(ctx)
            .mul(&self.py, ctx)
            .sub(&f.partial_y(ctx).mul(&self.px, ctx), ctx)
    }
}

fn check_order(p: &BiPoly, k: u64) -> Result<()> {
    if k >= p.ctx().p() {
        return Err(Error::OrderTooLarge { k, p: p.ctx().p() });
    }
    if p.deg_y() == 0 {
        return Err(Error::BadShape("P must have positive y-degree".into()));
    }
    Ok(())
}

/// The pairs `(q_j, r_j)` for `j = 1..=k`.
pub fn derivative_pairs(p: &BiPoly, k: u32) -> Result<Vec<DerivPair>> {
    check_order(p, k as u64)?;
    let pt = Partials::new(p);
    let ctx = &pt.ctx;
    let py2 = pt.py.mul(&pt.py, ctx);
    let pxpy = pt.px.mul(&pt.py, ctx);
    // (2j - 1) q_j multiplies P_yy P_x - P_xy P_y
    let w = pt.pyy.mul(&pt.px, ctx).sub(&pt.pxy.mul(&pt.py, ctx), ctx);
    let mut out = Vec::with_capacity(k as usize);
    let mut q = pt.px.scale(ctx.neg(1), ctx);
    let mut r = pt.py.clone();
    for j in 1..=k {
        out.push(DerivPair {
            k: j,
            q: q.to_bipoly(ctx),
            r: r.to_bipoly(ctx),
        });
        if j == k {
            break;
        }
        let next = q
            .partial_x(ctx)
            .mul(&py2, ctx)
            .sub(&q.partial_y(ctx).mul(&pxpy, ctx), ctx)
            .add_scaled(&q.mul(&w, ctx), 2 * j as u64 - 1, ctx);
        q = next;
        r = r.mul(&py2, ctx);
    }
    Ok(out)
}

pub fn derivative_pair(p: &BiPoly, k: u32) -> Result<DerivPair> {
    if k == 0 {
        return Err(Error::BadShape("derivative order must be at least 1".into()));
    }
    Ok(derivative_pairs(p, k)?.pop().expect("k >= 1"))
}

/// Numeric-exponent operator factors `U_0 .. U_k` for the monomial
/// `x^alpha y^beta`, where `D_j(x^alpha y^beta) = U_j x^alpha y^beta`.
///
/// `U_0 = 1`, `U_1 = alpha y P_y - beta x P_x` and
/// `U_{j+1} = x y P_y J(U_j) + U_j ((alpha - j) y P_y^2 - (beta - j) x P_x P_y
/// - (2j - 1) x y (P_xy P_y - P_yy P_x))`.
pub(crate) fn operator_factors_numeric(pt: &Partials, alpha: u64, beta: u64, k: u32) -> Vec<Dense> {
    let ctx = &pt.ctx;
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
    let xy = x.mul(&y, ctx);
    let sa = y.mul(&pt.py, ctx).mul(&pt.py, ctx);
    let sb = x.mul(&pt.px, ctx).mul(&pt.py, ctx);
    let tt = xy.mul(&pt.jacobian(&pt.py), ctx);
    let e = xy.mul(&pt.py, ctx);
    let mut out = vec![Dense {
        nx: 1,
        ny: 1,
        c: vec![1],
    }];
    if k == 0 {
        return out;
    }
    let u1 = y
        .mul(&pt.py, ctx)
        .scale(alpha, ctx)
        .sub(&x.mul(&pt.px, ctx).scale(beta, ctx), ctx);
    out.push(u1);
    for j in 1..k {
        let jj = ctx.reduce(j as u64);
        let m = sa
            .scale(ctx.sub(ctx.reduce(alpha), jj), ctx)
            .sub(&sb.scale(ctx.sub(ctx.reduce(beta), jj), ctx), ctx)
            .sub(&tt.scale(2 * j as u64 - 1, ctx), ctx);
        let u = &out[j as usize];
        let next = e.mul(&pt.jacobian(u), ctx).add(&u.mul(&m, ctx), ctx);
        out.push(next);
    }
    out
}

/// `R_{k,a,b,c}` with `D_k(x^a x^{bt} y^{ct}) = R_{k,a,b,c} x^a x^{bt} y^{ct}`
/// on the curve, where `D_k = P_y^{2k-1} x^k y^k d^k/dx^k`.
pub fn operator_factor(p: &BiPoly, t: u64, k: u32, a: u64, b: u64, c: u64) -> Result<BiPoly> {
    let mut all = operator_factors(p, t, k, a, b, c)?;
    Ok(all.pop().expect("k + 1 factors"))
}

/// `R_{j,a,b,c}` for every `j = 0..=k`.
pub fn operator_factors(p: &BiPoly, t: u64, k: u32, a: u64, b: u64, c: u64) -> Result<Vec<BiPoly>> {
    check_order(p, k as u64)?;
    let ctx = p.ctx();
    let pv = ctx.p() as u128;
    let alpha = ((a as u128 + b as u128 * t as u128) % pv) as u64;
    let beta = ((c as u128 * t as u128) % pv) as u64;
    let pt = Partials::new(p);
    Ok(operator_factors_numeric(&pt, alpha, beta, k).iter().map(|u| u.to_bipoly(ctx)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn first_pair_and_graph_curve() {
        let ctx = FieldCtx::new(101).unwrap();
        let p = parse_poly("x^2*y^2 + 3*x*y + x + 5", &ctx).unwrap();
        let d1 = derivative_pair(&p, 1).unwrap();
        assert_eq!(d1.q, p.partial_x().neg());
        assert_eq!(d1.r, p.partial_y());
        let g = parse_poly("y - x^3", &ctx).unwrap();
        let d2 = derivative_pair(&g, 2).unwrap();
        assert_eq!(d2.q, parse_poly("6*x", &ctx).unwrap());
        assert_eq!(d2.r, BiPoly::constant(&ctx, 1));
        assert!(matches!(
            derivative_pair(&g, 101),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn first_operator_factor() {
        let ctx = FieldCtx::new(10007).unwrap();
        let p = parse_poly("x^2*y + 4*y^2 - x + 2", &ctx).unwrap();
        let (t, a, b, c) = (16u64, 3, 2, 5);
        assert_eq!(operator_factor(&p, t, 0, a, b, c).unwrap(), BiPoly::constant(&ctx, 1));
        let r1 = operator_factor(&p, t, 1, a, b, c).unwrap();
        let q1 = p.partial_x().neg();
        let expect = BiPoly::y(&ctx)
            .mul(&p.partial_y())
            .scale(a + b * t)
            .add(&BiPoly::x(&ctx).mul(&q1).scale(c * t));
        assert_eq!(r1, expect);
    }
}
