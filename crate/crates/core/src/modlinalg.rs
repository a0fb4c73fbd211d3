//! Dense linear algebra over `F_p`.
//!
//! Elimination is left-looking: columns are processed in order and each new
//! column is reduced against the pivots found so far. The first column that
//! reduces to zero yields the canonical kernel vector, so a kernel vector of
//! a wide system is found without touching the remaining columns.

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;

/// Default cap on `rows * cols`.
pub const DEFAULT_ENTRY_LIMIT: usize = 100_000_000;

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatFp {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatFp {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Result<Self> {
        Self::zeros_with_limit(ctx, rows, cols, DEFAULT_ENTRY_LIMIT)
    }

    pub fn zeros_with_limit(ctx: &FieldCtx, rows: usize, cols: usize, limit: usize) -> Result<Self> {
        match rows.checked_mul(cols) {
            Some(n) if n <= limit => Ok(MatFp {
                ctx: ctx.clone(),
                rows,
                cols,
                entries: vec![0; n],
            }),
            _ => Err(Error::Overflow { rows, cols, limit }),
        }
    }

    pub fn from_rows(ctx: &FieldCtx, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(ctx, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Result<Self> {
        let mut m = Self::zeros(ctx, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c] as u64
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.ctx.reduce(v) as u32;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Mutable row-major storage, for block-wise filling.
    pub fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.entries
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.ctx.p() as u128;
        (0..self.rows)
            .map(|r| {
                let acc: u128 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u128 * b as u128)
                    .sum();
                (acc % p) as u64
            })
            .collect()
    }

    /// Rows with at least one nonzero entry.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|&v| v != 0))
            .collect()
    }
}

/// Outcome of left-looking elimination.
struct Elimination {
    pivots: usize,
    kernel: Option<Vec<u64>>,
}

fn dot(a: &[u32], b: &[u64], p: u64) -> u64 {
    let mut acc: u128 = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc += (x as u64 * y) as u128;
    }
    (acc % p as u128) as u64
}

fn eliminate(m: &MatFp, stop_at_free: bool) -> Elimination {
    let ctx = &m.ctx;
    let p = ctx.p();
    let active = m.nonzero_rows();
    let ra = active.len();
    // multipliers[r] holds L[r][0..] for active row r, one per pivot created
    // while r was still unpivoted
    let mut multipliers: Vec<Vec<u32>> = vec![Vec::new(); ra];
    let mut pivoted = vec![false; ra];
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_vals: Vec<u64> = Vec::new();
    // upper[i] = entries of pivot column i at pivot rows 0..i
    let mut upper: Vec<Vec<u64>> = Vec::new();
    let mut v = vec![0u64; ra];
    let mut s: Vec<u64> = Vec::new();

    for j in 0..m.cols {
        for (k, &r) in active.iter().enumerate() {
            v[k] = m.get(r, j);
        }
        s.clear();
        for i in 0..pivot_rows.len() {
            let r = pivot_rows[i];
            let sub = dot(&multipliers[r][..i], &s[..i], p);
            s.push(ctx.sub(v[r], sub));
        }
        let np = pivot_rows.len();
        let mut pivot: Option<usize> = None;
        for k in 0..ra {
            if pivoted[k] {
                continue;
            }
            let sub = dot(&multipliers[k][..np], &s[..np], p);
            v[k] = ctx.sub(v[k], sub);
            if pivot.is_none() && v[k] != 0 {
                pivot = Some(k);
            }
        }
        match pivot {
            Some(k) => {
                let inv = ctx.inv(v[k]);
                for r in 0..ra {
                    if !pivoted[r] && r != k {
                        multipliers[r].push(ctx.mul(v[r], inv) as u32);
                    }
                }
                pivoted[k] = true;
                pivot_rows.push(k);
                pivot_cols.push(j);
                pivot_vals.push(v[k]);
                upper.push(s.clone());
            }
            None if stop_at_free => {
                // back-substitute: sum_i U[i'][i] z_i = -s_{i'}
                let mut z = vec![0u64; np];
                for i in (0..np).rev() {
                    let mut acc = s[i];
                    for (i2, zi2) in z.iter().enumerate().skip(i + 1) {
                        acc = ctx.add(acc, ctx.mul(upper[i2][i], *zi2));
                    }
                    z[i] = ctx.mul(ctx.neg(acc), ctx.inv(pivot_vals[i]));
                }
                let mut kernel = vec![0u64; m.cols];
                kernel[j] = 1;
                for (i, &c) in pivot_cols.iter().enumerate() {
                    kernel[c] = z[i];
                }
                let first = kernel.iter().copied().find(|&x| x != 0).unwrap_or(1);
                let scale = ctx.inv(first);
                for x in kernel.iter_mut() {
                    *x = ctx.mul(*x, scale);
                }
                return Elimination {
                    pivots: np,
                    kernel: Some(kernel),
                };
            }
            None => {}
        }
    }
    Elimination {
        pivots: pivot_rows.len(),
        kernel: None,
    }
}

/// A nonzero `v` with `M v = 0`, scaled so its first nonzero entry is 1, or
/// `None` if the kernel is trivial.
///
/// The vector is the one attached to the first column that depends on the
/// columns before it: it is supported on that column and earlier pivot
/// columns only.
pub fn nullspace_vector(m: &MatFp) -> Option<Vec<u64>> {
    eliminate(m, true).kernel
}

pub fn rank(m: &MatFp) -> usize {
    eliminate(m, false).pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f7() -> FieldCtx {
        FieldCtx::new(7).unwrap()
    }

    #[test]
    fn examples() {
        let ctx = f7();
        let id = MatFp::identity(&ctx, 2).unwrap();
        assert_eq!(nullspace_vector(&id), None);
        assert_eq!(rank(&id), 2);
        let m = MatFp::from_rows(&ctx, &[vec![1, 1]]).unwrap();
        assert_eq!(nullspace_vector(&m), Some(vec![1, 6]));
        let z = MatFp::zeros(&ctx, 1, 3).unwrap();
        assert_eq!(nullspace_vector(&z), Some(vec![1, 0, 0]));
        assert_eq!(rank(&z), 0);
        let m = MatFp::from_rows(&ctx, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&MatFp::identity(&ctx, 5).unwrap()), 5);
    }

    #[test]
    fn overflow() {
        let ctx = f7();
        assert!(matches!(
            MatFp::zeros_with_limit(&ctx, 100, 100, 9_999),
            Err(Error::Overflow { .. })
        ));
        assert!(MatFp::zeros(&ctx, usize::MAX, 2).is_err());
    }

    /// Plain right-looking row reduction used as a reference.
    fn reference_rank(m: &MatFp) -> usize {
        let ctx = m.ctx();
        let mut a: Vec<Vec<u64>> = (0..m.rows()).map(|r| m.row(r).iter().map(|&v| v as u64).collect()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(pr) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, pr);
            let inv = ctx.inv(a[rank][c]);
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let f = ctx.mul(a[r][c], inv);
                    for k in 0..m.cols() {
                        let t = ctx.mul(f, a[rank][k]);
                        a[r][k] = ctx.sub(a[r][k], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &p in &[2_147_483_647u64, 101, 3] {
            let ctx = FieldCtx::new(p).unwrap();
            for _ in 0..200 {
                let rows = rng.gen_range(1..8);
                let cols = rng.gen_range(1..8);
                let sparse = rng.gen_bool(0.5);
                let data: Vec<Vec<u64>> = (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| if sparse && rng.gen_bool(0.6) { 0 } else { rng.gen_range(0..p) })
                            .collect()
                    })
                    .collect();
                let m = MatFp::from_rows(&ctx, &data).unwrap();
                let r = rank(&m);
                assert_eq!(r, reference_rank(&m));
                match nullspace_vector(&m) {
                    Some(v) => {
                        assert!(r < cols);
                        assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
                        assert_eq!(v.iter().find(|&&x| x != 0), Some(&1));
                        assert_eq!(nullspace_vector(&m), Some(v));
                    }
                    None => assert_eq!(r, cols),
                }
            }
        }
    }
}
