use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;

use super::uni::UniPoly;

/// Sparse bivariate polynomial over `F_p`.
///
/// Terms map `(i, j)` to the nonzero coefficient of `x^i y^j`. The bidegree
/// `(max i, max j)` is cached.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    ctx: FieldCtx,
    terms: BTreeMap<(u32, u32), u64>,
    deg_x: u32,
    deg_y: u32,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({} over {:?})", self, self.ctx)
    }
}

/// Canonical printer: graded lexicographic order (total degree descending,
/// then x-exponent descending), explicit `*` and `^`, coefficients as
/// residues in `[0, p)`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.graded_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if c != 1 || (i == 0 && j == 0) {
                parts.push(c.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        BiPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
            deg_x: 0,
            deg_y: 0,
        }
    }

    /// Builds from `(i, j, coeff)` triples; repeated exponents are summed.
    pub fn from_terms<I>(ctx: &FieldCtx, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, u64)>,
    {
        let mut map: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for (i, j, c) in terms {
            let e = map.entry((i, j)).or_insert(0);
            *e = ctx.add(*e, ctx.reduce(c));
        }
        Self::from_map(ctx, map)
    }

    pub fn from_i64_terms(ctx: &FieldCtx, terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(ctx, terms.iter().map(|&(i, j, c)| (i, j, ctx.from_i64(c))))
    }

    fn from_map(ctx: &FieldCtx, mut terms: BTreeMap<(u32, u32), u64>) -> Self {
        terms.retain(|_, c| *c != 0);
        let deg_x = terms.keys().map(|k| k.0).max().unwrap_or(0);
        let deg_y = terms.keys().map(|k| k.1).max().unwrap_or(0);
        BiPoly {
            ctx: ctx.clone(),
            terms,
            deg_x,
            deg_y,
        }
    }

    pub fn constant(ctx: &FieldCtx, c: u64) -> Self {
        Self::from_terms(ctx, [(0, 0, c)])
    }

    pub fn monomial(ctx: &FieldCtx, i: u32, j: u32, c: u64) -> Self {
        Self::from_terms(ctx, [(i, j, c)])
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, 1, 0, 1)
    }

    pub fn y(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, 0, 1, 1)
    }

    /// `sum_j coeffs[j](x) * y^j`.
    pub fn from_y_coeffs(ctx: &FieldCtx, coeffs: &[UniPoly]) -> Self {
        let mut map = BTreeMap::new();
        for (j, cj) in coeffs.iter().enumerate() {
            for (i, &c) in cj.coeffs().iter().enumerate() {
                if c != 0 {
                    map.insert((i as u32, j as u32), c);
                }
            }
        }
        Self::from_map(ctx, map)
    }

    /// A univariate polynomial in `x` viewed as bivariate.
    pub fn from_x_poly(f: &UniPoly) -> Self {
        Self::from_y_coeffs(f.ctx(), std::slice::from_ref(f))
    }

    /// A univariate polynomial in `y` viewed as bivariate.
    pub fn from_y_poly(f: &UniPoly) -> Self {
        Self::from_terms(
            f.ctx(),
            f.coeffs().iter().enumerate().map(|(j, &c)| (0, j as u32, c)),
        )
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), u64> {
        &self.terms
    }

    /// Terms in graded lexicographic order.
    pub fn graded_terms(&self) -> Vec<((u32, u32), u64)> {
        let mut out: Vec<_> = self.terms.iter().map(|(&k, &c)| (k, c)).collect();
        out.sort_by(|a, b| {
            let (ta, tb) = (a.0 .0 + a.0 .1, b.0 .0 + b.0 .1);
            tb.cmp(&ta).then(b.0 .0.cmp(&a.0 .0))
        });
        out
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(deg_x, deg_y)`; `(0, 0)` for the zero polynomial.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.deg_x, self.deg_y)
    }

    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term has total degree `d` (and the polynomial is nonzero).
    pub fn is_homogeneous(&self) -> Option<u32> {
        let d = self.total_degree();
        (!self.is_zero() && self.terms.keys().all(|&(i, j)| i + j == d)).then_some(d)
    }

    pub fn eval(&self, x: u64, y: u64) -> u64 {
        let ctx = &self.ctx;
        let (x, y) = (ctx.reduce(x), ctx.reduce(y));
        let xp = powers(ctx, x, self.deg_x as usize);
        let yp = powers(ctx, y, self.deg_y as usize);
        self.terms.iter().fold(0, |acc, (&(i, j), &c)| {
            ctx.add(acc, ctx.mul(c, ctx.mul(xp[i as usize], yp[j as usize])))
        })
    }

    fn combine(&self, other: &Self, neg: bool) -> Self {
        let mut map = self.terms.clone();
        for (&k, &c) in &other.terms {
            let e = map.entry(k).or_insert(0);
            *e = if neg {
                self.ctx.sub(*e, c)
            } else {
                self.ctx.add(*e, c)
            };
        }
        Self::from_map(&self.ctx, map)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ctx.neg(1))
    }

    pub fn scale(&self, s: u64) -> Self {
        let s = self.ctx.reduce(s);
        let map = self
            .terms
            .iter()
            .map(|(&k, &c)| (k, self.ctx.mul(c, s)))
            .collect();
        Self::from_map(&self.ctx, map)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                let e = map.entry((i1 + i2, j1 + j2)).or_insert(0);
                *e = self.ctx.add(*e, self.ctx.mul(c1, c2));
            }
        }
        Self::from_map(&self.ctx, map)
    }

    /// Multiply by `c * x^i * y^j`.
    pub fn mul_monomial(&self, i: u32, j: u32, c: u64) -> Self {
        let map = self
            .terms
            .iter()
            .map(|(&(a, b), &v)| ((a + i, b + j), self.ctx.mul(v, c)))
            .collect();
        Self::from_map(&self.ctx, map)
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

    /// `dP/dx` with characteristic-p semantics (`x^p` differentiates to 0).
    pub fn partial_x(&self) -> Self {
        let map = self
            .terms
            .iter()
            .filter(|(&(i, _), _)| i > 0)
            .map(|(&(i, j), &c)| ((i - 1, j), self.ctx.mul(c, self.ctx.reduce(i as u64))))
            .collect();
        Self::from_map(&self.ctx, map)
    }

    /// `dP/dy` with characteristic-p semantics.
    pub fn partial_y(&self) -> Self {
        let map = self
            .terms
            .iter()
            .filter(|(&(_, j), _)| j > 0)
            .map(|(&(i, j), &c)| ((i, j - 1), self.ctx.mul(c, self.ctx.reduce(j as u64))))
            .collect();
        Self::from_map(&self.ctx, map)
    }

    /// Coefficients of `y^0 ..= y^deg_y`, each a polynomial in `x`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut dense = vec![vec![0u64; self.deg_x as usize + 1]; self.deg_y as usize + 1];
        for (&(i, j), &c) in &self.terms {
            dense[j as usize][i as usize] = c;
        }
        dense.into_iter().map(|v| UniPoly::new(&self.ctx, v)).collect()
    }

    /// `P(x0, y)` as a polynomial in `y`.
    pub fn specialize_x(&self, x0: u64) -> UniPoly {
        let ctx = &self.ctx;
        let xp = powers(ctx, ctx.reduce(x0), self.deg_x as usize);
        let mut c = vec![0u64; self.deg_y as usize + 1];
        for (&(i, j), &v) in &self.terms {
            c[j as usize] = ctx.add(c[j as usize], ctx.mul(v, xp[i as usize]));
        }
        UniPoly::new(ctx, c)
    }

    /// `P(x, y0)` as a polynomial in `x`.
    pub fn specialize_y(&self, y0: u64) -> UniPoly {
        let ctx = &self.ctx;
        let yp = powers(ctx, ctx.reduce(y0), self.deg_y as usize);
        let mut c = vec![0u64; self.deg_x as usize + 1];
        for (&(i, j), &v) in &self.terms {
            c[i as usize] = ctx.add(c[i as usize], ctx.mul(v, yp[j as usize]));
        }
        UniPoly::new(ctx, c)
    }

    /// `P(x, g(x))`.
    pub fn substitute_y(&self, g: &UniPoly) -> UniPoly {
        let coeffs = self.y_coeffs();
        let mut out = UniPoly::zero(&self.ctx);
        for c in coeffs.iter().rev() {
            out = out.mul(g).add(c);
        }
        out
    }

    /// `P(x, c*y)`.
    pub fn scale_y(&self, c: u64) -> Self {
        let ctx = &self.ctx;
        let cp = powers(ctx, ctx.reduce(c), self.deg_y as usize);
        let map = self
            .terms
            .iter()
            .map(|(&(i, j), &v)| ((i, j), ctx.mul(v, cp[j as usize])))
            .collect();
        Self::from_map(ctx, map)
    }

    /// `P(a*x, b*y)`.
    pub fn scale_vars(&self, a: u64, b: u64) -> Self {
        let ctx = &self.ctx;
        let ap = powers(ctx, ctx.reduce(a), self.deg_x as usize);
        let bp = powers(ctx, ctx.reduce(b), self.deg_y as usize);
        let map = self
            .terms
            .iter()
            .map(|(&(i, j), &v)| ((i, j), ctx.mul(v, ctx.mul(ap[i as usize], bp[j as usize]))))
            .collect();
        Self::from_map(ctx, map)
    }

    /// `P(x, y^k)`.
    pub fn inflate_y(&self, k: u32) -> Self {
        let map = self.terms.iter().map(|(&(i, j), &v)| ((i, j * k), v)).collect();
        Self::from_map(&self.ctx, map)
    }
}

/// `[1, x, x^2, ..., x^n]`.
pub fn powers(ctx: &FieldCtx, x: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = 1 % ctx.p();
    for _ in 0..=n {
        out.push(cur);
        cur = ctx.mul(cur, x);
    }
    out
}

/// Pseudo-remainder of `q` by `p` in `y` over `F_p[x]`.
///
/// Runs `steps` reduction rounds starting at y-degree `top`; each round
/// multiplies by the leading coefficient `f_n(x)` of `p` even when the
/// current top coefficient is zero, so the map `q -> prem` is linear and the
/// result equals `f_n^steps * q  mod  p` with `deg_y < n`.
pub fn pseudo_rem_y(
    q: &[UniPoly],
    p: &[UniPoly],
    top: usize,
) -> Vec<UniPoly> {
    let n = p.len() - 1;
    let ctx = p[n].ctx().clone();
    let lead = &p[n];
    let mut cur: Vec<UniPoly> = q.to_vec();
    if top < n {
        cur.resize(n.max(cur.len()), UniPoly::zero(&ctx));
        return cur;
    }
    cur.resize(top + 1, UniPoly::zero(&ctx));
    // rounds above the actual degree only multiply by f_n; defer them
    let actual = cur.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    debug_assert!(actual <= top, "dividend exceeds the declared y-degree");
    let start = actual.max(n - 1).min(top);
    let deferred = top - start;
    for d in (n..=start).rev() {
        let c = std::mem::replace(&mut cur[d], UniPoly::zero(&ctx));
        for j in 0..d {
            cur[j] = cur[j].mul(lead);
        }
        if !c.is_zero() {
            for (k, pk) in p.iter().enumerate().take(n) {
                let idx = d - n + k;
                cur[idx] = cur[idx].sub(&c.mul(pk));
            }
        }
    }
    cur.truncate(n);
    if deferred > 0 {
        let f = lead.pow(deferred as u64);
        for c in cur.iter_mut() {
            *c = c.mul(&f);
        }
    }
    cur
}

/// Whether `p` divides `q` in `F_p[x, y]`.
///
/// Uses pseudo-division in `y`. Valid when `p` is irreducible with positive
/// y-degree, so that its leading coefficient is coprime to `p`.
pub fn divides(p: &BiPoly, q: &BiPoly) -> Result<bool> {
    if p.is_zero() || p.deg_y() == 0 {
        return Err(Error::BadShape("divisor must have positive degree in y".into()));
    }
    if q.is_zero() {
        return Ok(true);
    }
    let pc = p.y_coeffs();
    let qc = q.y_coeffs();
    let top = qc.len() - 1;
    let rem = pseudo_rem_y(&qc, &pc, top);
    Ok(rem.iter().all(|c| c.is_zero()))
}
