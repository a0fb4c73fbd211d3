use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::bi::BiPoly;
use super::roots::uni_roots;
use super::uni::UniPoly;

/// Determinant of a square matrix over `F_p[x]` by Bareiss fraction-free
/// elimination.
pub fn det_fraction_free(mut m: Vec<Vec<UniPoly>>) -> Result<UniPoly> {
    let n = m.len();
    let ctx = match m.first().and_then(|r| r.first()) {
        Some(e) => e.ctx().clone(),
        None => return Err(Error::BadShape("empty matrix".into())),
    };
    let mut sign_flip = false;
    let mut prev = UniPoly::constant(&ctx, 1);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(UniPoly::zero(&ctx)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = UniPoly::zero(&ctx);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg() } else { det })
}

/// Sylvester matrix of two polynomials given by their y-coefficient lists.
fn sylvester(a: &[UniPoly], b: &[UniPoly]) -> Vec<Vec<UniPoly>> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let size = da + db;
    let ctx = a[0].ctx().clone();
    let mut m = vec![vec![UniPoly::zero(&ctx); size]; size];
    for r in 0..db {
        for (k, c) in a.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..da {
        for (k, c) in b.iter().rev().enumerate() {
            m[db + r][r + k] = c.clone();
        }
    }
    m
}

/// Resultant of `p` and `q` with respect to `y`, a polynomial in `x`.
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> Result<UniPoly> {
    if p.is_zero() || q.is_zero() || p.deg_y() == 0 || q.deg_y() == 0 {
        return Err(Error::BadShape("resultant needs positive y-degree".into()));
    }
    det_fraction_free(sylvester(&p.y_coeffs(), &q.y_coeffs()))
}

/// Points of `F_p^2` where both `P` and `dP/dy` vanish.
///
/// Candidate abscissae are roots of `Res_y(P, dP/dy)`; for each one the
/// ordinates are the common roots of the two specialisations.
pub fn singular_points(p: &BiPoly) -> Result<Vec<(u64, u64)>> {
    if p.deg_y() == 0 {
        return Err(Error::BadShape("singular points need positive y-degree".into()));
    }
    let py = p.partial_y();
    let mut out = BTreeSet::new();
    if py.is_zero() {
        return Err(Error::CommonFactor);
    }
    if py.deg_y() == 0 {
        // dP/dy = c(x): points on the vertical lines c(x0) = 0
        let c = py.specialize_y(0);
        if !c.is_zero() {
            for x0 in uni_roots(&c)? {
                let f = p.specialize_x(x0);
                if f.is_zero() {
                    return Err(Error::CommonFactor);
                }
                out.extend(uni_roots(&f)?.into_iter().map(|y0| (x0, y0)));
            }
        }
    } else {
        let res = resultant_y(p, &py)?;
        if res.is_zero() {
            return Err(Error::CommonFactor);
        }
        for x0 in uni_roots(&res)? {
            let f = p.specialize_x(x0);
            let g = py.specialize_x(x0);
            let h = if f.is_zero() {
                return Err(Error::CommonFactor);
            } else if g.is_zero() {
                f
            } else {
                f.gcd(&g)
            };
            if h.degree().unwrap_or(0) > 0 {
                out.extend(uni_roots(&h)?.into_iter().map(|y0| (x0, y0)));
            }
        }
    }
    let (m, n) = p.bidegree();
    let bound = ((m + n) as usize) * ((m + n) as usize).saturating_sub(1);
    debug_assert!(out.len() <= bound.max(1));
    Ok(out.into_iter().collect())
}
