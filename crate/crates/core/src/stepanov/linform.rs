use std::collections::BTreeMap;

use crate::ffield::FieldCtx;
use crate::polyalg::BiPoly;

/// Sparse linear form `sum coef * lambda_var` over unknown indices.
pub type LinForm = BTreeMap<usize, u64>;

/// Bivariate polynomial whose coefficients are linear forms in the unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFormPoly {
    ctx: FieldCtx,
    terms: BTreeMap<(u32, u32), LinForm>,
}

fn axpy(ctx: &FieldCtx, dst: &mut LinForm, src: &LinForm, s: u64) {
    for (&var, &v) in src {
        let e = dst.entry(var).or_insert(0);
        *e = ctx.add(*e, ctx.mul(v, s));
        if *e == 0 {
            dst.remove(&var);
        }
    }
}

impl LinFormPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        LinFormPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `unknown * poly` for a single unknown.
    pub fn from_unknown(var: usize, poly: &BiPoly) -> Self {
        let terms = poly
            .terms()
            .iter()
            .map(|(&e, &v)| (e, LinForm::from([(var, v)])))
            .collect();
        LinFormPoly {
            ctx: poly.ctx().clone(),
            terms,
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), LinForm> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    fn add_scaled(&mut self, other: &LinFormPoly, s: u64) {
        for (&e, form) in &other.terms {
            let slot = self.terms.entry(e).or_default();
            axpy(&self.ctx, slot, form, s);
            if slot.is_empty() {
                self.terms.remove(&e);
            }
        }
    }

    pub fn add(&self, other: &LinFormPoly) -> LinFormPoly {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn sub(&self, other: &LinFormPoly) -> LinFormPoly {
        let mut out = self.clone();
        out.add_scaled(other, self.ctx.neg(1));
        out
    }

    pub fn mul_poly(&self, q: &BiPoly) -> LinFormPoly {
        let mut out = LinFormPoly::zero(&self.ctx);
        for (&(i, j), form) in &self.terms {
            for (&(i2, j2), &v) in q.terms() {
                let slot = out.terms.entry((i + i2, j + j2)).or_default();
                axpy(&self.ctx, slot, form, v);
                if slot.is_empty() {
                    out.terms.remove(&(i + i2, j + j2));
                }
            }
        }
        out
    }

    /// Replaces every unknown by its value.
    pub fn substitute(&self, lambda: &[u64]) -> BiPoly {
        let ctx = &self.ctx;
        let p = ctx.p() as u128;
        BiPoly::from_terms(
            ctx,
            self.terms.iter().map(|(&(i, j), form)| {
                let acc: u128 = form.iter().map(|(&k, &v)| (v * lambda[k]) as u128).sum();
                (i, j, (acc % p) as u64)
            }),
        )
    }

    /// Fixed-round pseudo-remainder by `p` in `y`, starting at y-degree `top`:
    /// each of the `top - n + 1` rounds multiplies by the leading coefficient
    /// of `p`, mirroring [`crate::polyalg::pseudo_rem_y`].
    pub fn pseudo_rem_y(&self, p: &BiPoly, top: u32) -> LinFormPoly {
        let n = p.deg_y();
        let lead = BiPoly::from_x_poly(&p.y_coeffs()[n as usize]);
        let tail = p.sub(&lead.mul_monomial(0, n, 1));
        let mut cur = self.clone();
        if top < n {
            return cur;
        }
        for d in (n..=top).rev() {
            let mut layer = LinFormPoly::zero(&self.ctx);
            let mut rest = LinFormPoly::zero(&self.ctx);
            for (&(i, j), form) in &cur.terms {
                if j == d {
                    layer.terms.insert((i, j - n), form.clone());
                } else {
                    rest.terms.insert((i, j), form.clone());
                }
            }
            // f_n * rest - c_d(x) y^{d-n} (P - f_n y^n)
            cur = rest.mul_poly(&lead).sub(&layer.mul_poly(&tail));
        }
        cur
    }
}
