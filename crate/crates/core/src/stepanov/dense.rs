//! Dense bivariate arithmetic for the derivative recursions.
//!
//! The recursions multiply large polynomials by small fixed ones many times;
//! a flat coefficient grid with `u128` accumulation is much faster than the
//! sparse map used by [`BiPoly`].

use crate::ffield::FieldCtx;
use crate::polyalg::{BiPoly, UniPoly};

/// Coefficient grid: `c[i * ny + j]` multiplies `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense {
    pub nx: usize,
    pub ny: usize,
    pub c: Vec<u64>,
}

impl Dense {
    pub fn zero() -> Self {
        Dense {
            nx: 0,
            ny: 0,
            c: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn from_bipoly(p: &BiPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let (nx, ny) = (p.deg_x() as usize + 1, p.deg_y() as usize + 1);
        let mut c = vec![0; nx * ny];
        for (&(i, j), &v) in p.terms() {
            c[i as usize * ny + j as usize] = v;
        }
        Dense { nx, ny, c }
    }

    pub fn to_bipoly(&self, ctx: &FieldCtx) -> BiPoly {
        BiPoly::from_terms(ctx, self.iter_nonzero().map(|(i, j, v)| (i as u32, j as u32, v)))
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let ny = self.ny;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(k, &v)| (k / ny, k % ny, v))
    }

    /// `(deg_x, deg_y)` of the nonzero part, `None` if zero.
    pub fn degrees(&self) -> Option<(usize, usize)> {
        let mut out: Option<(usize, usize)> = None;
        for (i, j, _) in self.iter_nonzero() {
            let (dx, dy) = out.unwrap_or((0, 0));
            out = Some((dx.max(i), dy.max(j)));
        }
        out
    }

    /// Drops trailing zero rows and columns.
    pub fn trimmed(self) -> Self {
        match self.degrees() {
            None => Self::zero(),
            Some((dx, dy)) if dx + 1 == self.nx && dy + 1 == self.ny => self,
            Some((dx, dy)) => {
                let (nx, ny) = (dx + 1, dy + 1);
                let mut c = vec![0; nx * ny];
                for i in 0..nx {
                    c[i * ny..i * ny + ny].copy_from_slice(&self.c[i * self.ny..i * self.ny + ny]);
                }
                Dense { nx, ny, c }
            }
        }
    }

    pub fn mul(&self, other: &Dense, ctx: &FieldCtx) -> Dense {
        if self.c.is_empty() || other.c.is_empty() {
            return Self::zero();
        }
        // iterate over the sparser factor's nonzeros
        let (big, small) = if self.c.len() >= other.c.len() {
            (self, other)
        } else {
            (other, self)
        };
        let nx = big.nx + small.nx - 1;
        let ny = big.ny + small.ny - 1;
        let mut acc = vec![0u128; nx * ny];
        for (i2, j2, v2) in small.iter_nonzero() {
            for i in 0..big.nx {
                let src = &big.c[i * big.ny..(i + 1) * big.ny];
                let dst = &mut acc[(i + i2) * ny + j2..(i + i2) * ny + j2 + big.ny];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d += (s * v2) as u128;
                }
            }
        }
        let p = ctx.p() as u128;
        Dense {
            nx,
            ny,
            c: acc.into_iter().map(|v| (v % p) as u64).collect(),
        }
        .trimmed()
    }

    fn combine(&self, other: &Dense, ctx: &FieldCtx, scale: u64) -> Dense {
        let nx = self.nx.max(other.nx);
        let ny = self.ny.max(other.ny);
        let mut c = vec![0; nx * ny];
        for i in 0..self.nx {
            c[i * ny..i * ny + self.ny].copy_from_slice(&self.c[i * self.ny..(i + 1) * self.ny]);
        }
        for (i, j, v) in other.iter_nonzero() {
            let k = i * ny + j;
            c[k] = ctx.add(c[k], ctx.mul(v, scale));
        }
        Dense { nx, ny, c }.trimmed()
    }

    pub fn add(&self, other: &Dense, ctx: &FieldCtx) -> Dense {
        self.combine(other, ctx, 1)
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Dense, s: u64, ctx: &FieldCtx) -> Dense {
        self.combine(other, ctx, ctx.reduce(s))
    }

    pub fn sub(&self, other: &Dense, ctx: &FieldCtx) -> Dense {
        self.combine(other, ctx, ctx.neg(1))
    }

    pub fn scale(&self, s: u64, ctx: &FieldCtx) -> Dense {
        let s = ctx.reduce(s);
        Dense {
            nx: self.nx,
            ny: self.ny,
            c: self.c.iter().map(|&v| ctx.mul(v, s)).collect(),
        }
        .trimmed()
    }

    pub fn partial_x(&self, ctx: &FieldCtx) -> Dense {
        if self.nx <= 1 {
            return Self::zero();
        }
        let (nx, ny) = (self.nx - 1, self.ny);
        let mut c = vec![0; nx * ny];
        for i in 0..nx {
            let f = ctx.reduce(i as u64 + 1);
            for j in 0..ny {
                c[i * ny + j] = ctx.mul(self.c[(i + 1) * ny + j], f);
            }
        }
        Dense { nx, ny, c }.trimmed()
    }

    pub fn partial_y(&self, ctx: &FieldCtx) -> Dense {
        if self.ny <= 1 {
            return Self::zero();
        }
        let (nx, ny) = (self.nx, self.ny - 1);
        let mut c = vec![0; nx * ny];
        for i in 0..nx {
            for j in 0..ny {
                let f = ctx.reduce(j as u64 + 1);
                c[i * ny + j] = ctx.mul(self.c[i * self.ny + j + 1], f);
            }
        }
        Dense { nx, ny, c }.trimmed()
    }

    pub fn eval(&self, xp: &[u64], yp: &[u64], ctx: &FieldCtx) -> u64 {
        let p = ctx.p() as u128;
        let mut acc: u128 = 0;
        for (i, j, v) in self.iter_nonzero() {
            acc += (ctx.mul(v, xp[i]) * yp[j]) as u128;
        }
        (acc % p) as u64
    }

    /// Coefficients of `y^0 ..`, each a polynomial in `x`.
    pub fn y_coeffs(&self, ctx: &FieldCtx) -> Vec<UniPoly> {
        (0..self.ny)
            .map(|j| UniPoly::new(ctx, (0..self.nx).map(|i| self.c[i * self.ny + j]).collect()))
            .collect()
    }

    #[cfg(test)]
    pub fn from_y_coeffs(coeffs: &[UniPoly]) -> Dense {
        let ny = coeffs.len();
        let nx = coeffs.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
        if nx == 0 || ny == 0 {
            return Self::zero();
        }
        let mut c = vec![0; nx * ny];
        for (j, cj) in coeffs.iter().enumerate() {
            for (i, &v) in cj.coeffs().iter().enumerate() {
                c[i * ny + j] = v;
            }
        }
        Dense { nx, ny, c }.trimmed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn agrees_with_sparse() {
        let ctx = FieldCtx::new(10007).unwrap();
        let a = parse_poly("3*x^3*y + x*y^4 - 7*y + 2", &ctx).unwrap();
        let b = parse_poly("x^2 - y^2*x + 9", &ctx).unwrap();
        let (da, db) = (Dense::from_bipoly(&a), Dense::from_bipoly(&b));
        assert_eq!(da.mul(&db, &ctx).to_bipoly(&ctx), a.mul(&b));
        assert_eq!(da.sub(&db, &ctx).to_bipoly(&ctx), a.sub(&b));
        assert_eq!(da.partial_x(&ctx).to_bipoly(&ctx), a.partial_x());
        assert_eq!(da.partial_y(&ctx).to_bipoly(&ctx), a.partial_y());
        assert!(da.sub(&da, &ctx).is_zero());
        assert_eq!(Dense::from_y_coeffs(&da.y_coeffs(&ctx)), da);
    }
}
