//! The homogeneous system on `lambda_{a,b,c}` expressing `P | R_k` for
//! `k = 0..D-1`.
//!
//! Row block `k` holds the coefficients of the fixed-round pseudo-remainder
//! of `R_k` by `P`, starting from the declared y-degree `4kn`. Because that
//! pseudo-division is linear, each column is the remainder of one operator
//! factor, computed from remainders of the components `V_{k,i,j}`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::modlinalg::MatFp;
use crate::polyalg::{powers, pseudo_rem_y, BiPoly, UniPoly};

use super::dense::Dense;
use super::family::OperatorFamily;
use super::linform::LinFormPoly;
use super::params::StepanovParams;

/// Unknowns `(a, b, c)` in graded order: by the degree `a + bt + ct` of the
/// monomial they multiply, then by `c`, then by `b`.
pub fn column_order(params: &StepanovParams) -> Vec<(u64, u64, u64)> {
    let mut cols = Vec::with_capacity(params.unknowns() as usize);
    for a in 0..params.a {
        for b in 0..params.b {
            for c in 0..params.c {
                cols.push((a, b, c));
            }
        }
    }
    let t = params.t;
    cols.sort_by_key(|&(a, b, c)| (a + (b + c) * t, c, b));
    cols
}

/// Shape of the row block for derivative order `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockShape {
    /// Declared y-degree of `R_k`, the start of pseudo-division.
    pub top: u64,
    /// Number of pseudo-division rounds.
    pub rounds: u64,
    /// Remainder y-exponents kept, `0..ny`.
    pub ny: u64,
    /// Remainder x-exponents kept, `0..nx`.
    pub nx: u64,
}

impl BlockShape {
    pub fn rows(&self) -> u64 {
        self.ny * self.nx
    }
}

pub fn block_shape(params: &StepanovParams, k: u64) -> BlockShape {
    let (m, n) = (params.m as u64, params.n as u64);
    let top = 4 * k * n;
    if k == 0 || top < n {
        // R_k has y-degree below n, so P | R_k forces R_k = 0
        return BlockShape {
            top,
            rounds: 0,
            ny: 1,
            nx: params.a,
        };
    }
    let rounds = top - n + 1;
    BlockShape {
        top,
        rounds,
        ny: n,
        nx: params.a + 4 * k * m + rounds * m + 1,
    }
}

/// Total row count for `pairs` coset pairs.
pub fn system_rows(params: &StepanovParams, pairs: usize) -> u64 {
    let per: u64 = (0..params.d).map(|k| block_shape(params, k).rows()).sum();
    per * pairs as u64
}

fn check_preconditions(p: &BiPoly) -> Result<()> {
    if p.coeff(0, 0) == 0 {
        return Err(Error::PrecondViolated("P(0,0) = 0".into()));
    }
    if p.specialize_y(0).degree().unwrap_or(0) == 0 {
        return Err(Error::PrecondViolated("deg P(x,0) = 0".into()));
    }
    if p.deg_y() == 0 {
        return Err(Error::PrecondViolated("deg_y P = 0".into()));
    }
    Ok(())
}

/// Remainders of every component `V_{k,i,j}`, flattened as `[j][i]` with
/// row stride `width`.
struct BlockData {
    shape: BlockShape,
    k: usize,
    width: usize,
    /// `w[i][j]`: coefficient grid of `prem(V_{k,i,j})`, indexed `[jy * width + ix]`.
    w: Vec<Vec<Option<Vec<u64>>>>,
}

fn block_data(fam: &OperatorFamily, p: &BiPoly, params: &StepanovParams, k: usize) -> BlockData {
    let ctx = p.ctx();
    let shape = block_shape(params, k as u64);
    let pc = p.y_coeffs();
    let n = shape.ny as usize;
    let mut rems: Vec<Vec<Option<Vec<UniPoly>>>> = vec![vec![None; k + 1]; k + 1];
    let mut width = 1;
    for (i, row) in rems.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().take(k + 1 - i) {
            let v: &Dense = fam.component(k, i, j);
            if v.is_zero() {
                continue;
            }
            let r = pseudo_rem_y(&v.y_coeffs(ctx), &pc, shape.top as usize);
            width = width.max(r.iter().map(|c| c.coeffs().len()).max().unwrap_or(0));
            *slot = Some(r);
        }
    }
    let w = rems
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|slot| {
                    slot.map(|r| {
                        let mut flat = vec![0u64; n * width];
                        for (jy, c) in r.iter().enumerate().take(n) {
                            flat[jy * width..jy * width + c.coeffs().len()].copy_from_slice(c.coeffs());
                        }
                        flat
                    })
                })
                .collect()
        })
        .collect();
    BlockData { shape, k, width, w }
}

/// Writes block rows for one coset pair into `out` (row-major, `cols` wide).
fn fill_block(
    ctx: &FieldCtx,
    data: &BlockData,
    params: &StepanovParams,
    columns: &[(u64, u64, u64)],
    gamma: (u64, u64),
    out: &mut [u32],
) {
    let ncols = columns.len();
    let g1 = powers(ctx, gamma.0, params.b as usize);
    let g2 = powers(ctx, gamma.1, params.c as usize);
    if data.k == 0 {
        for (col, &(a, b, c)) in columns.iter().enumerate() {
            out[a as usize * ncols + col] = ctx.mul(g1[b as usize], g2[c as usize]) as u32;
        }
        return;
    }
    let k = data.k;
    let len = data.shape.ny as usize * data.width;
    let nx = data.shape.nx as usize;
    let t = params.t as u128;
    let pm = ctx.p() as u128;
    // group columns by c so the beta sums are shared
    let mut by_c: Vec<Vec<usize>> = vec![Vec::new(); params.c as usize];
    for (col, &(_, _, c)) in columns.iter().enumerate() {
        by_c[c as usize].push(col);
    }
    let mut y_i = vec![vec![0u64; len]; k + 1];
    let mut z = vec![0u64; len];
    for (c, cols) in by_c.iter().enumerate() {
        let beta = ((c as u128 * t) % pm) as u64;
        let bp = powers(ctx, beta, k);
        // Y_i = sum_j beta^j W_{i,j}
        for (i, yi) in y_i.iter_mut().enumerate() {
            let mut acc = vec![0u128; len];
            for (j, w) in data.w[i].iter().enumerate().take(k + 1 - i) {
                if let Some(w) = w {
                    let s = bp[j];
                    for (a, &v) in acc.iter_mut().zip(w) {
                        *a += (v * s) as u128;
                    }
                }
            }
            for (d, a) in yi.iter_mut().zip(acc) {
                *d = (a % pm) as u64;
            }
        }
        for &col in cols {
            let (a, b, _) = columns[col];
            let alpha = ((a as u128 + b as u128 * t) % pm) as u64;
            // Horner over alpha
            z.copy_from_slice(&y_i[k]);
            for yi in y_i[..k].iter().rev() {
                for (zz, &v) in z.iter_mut().zip(yi) {
                    *zz = ((*zz as u128 * alpha as u128 + v as u128) % pm) as u64;
                }
            }
            let s = ctx.mul(g1[b as usize], g2[c]);
            for jy in 0..data.shape.ny as usize {
                for ix in 0..data.width {
                    let v = z[jy * data.width + ix];
                    if v != 0 {
                        let row = jy * nx + ix + a as usize;
                        out[row * ncols + col] = ctx.mul(v, s) as u32;
                    }
                }
            }
        }
    }
}

/// The linear system for one coset pair `(g1 G, g2 G)` with `gamma_i = g_i^t`.
pub fn build_system(p: &BiPoly, params: &StepanovParams, gamma1: u64, gamma2: u64) -> Result<MatFp> {
    build_system_multi(p, params, &[(gamma1, gamma2)])
}

/// Stacks the conditions for several coset pairs, one block group per pair.
pub fn build_system_multi(p: &BiPoly, params: &StepanovParams, gammas: &[(u64, u64)]) -> Result<MatFp> {
    check_preconditions(p)?;
    let ctx = p.ctx();
    if params.d >= ctx.p() {
        return Err(Error::ParamsInfeasible(format!("D={} >= p={}", params.d, ctx.p())));
    }
    let columns = column_order(params);
    let rows = system_rows(params, gammas.len()) as usize;
    let mut mat = MatFp::zeros(ctx, rows, columns.len())?;
    let fam = OperatorFamily::new(p, params.d.saturating_sub(1) as u32)?;
    let blocks: Vec<BlockData> = (0..params.d as usize)
        .into_par_iter()
        .map(|k| block_data(&fam, p, params, k))
        .collect();
    for b in &blocks {
        debug_assert!(b.k == 0 || b.width + params.a as usize <= b.shape.nx as usize);
    }
    // split storage into per-(pair, k) slices
    let ncols = columns.len();
    let mut slices: Vec<(usize, usize, &mut [u32])> = Vec::new();
    let mut rest = mat.entries_mut();
    for (pi, _) in gammas.iter().enumerate() {
        for b in &blocks {
            let (head, tail) = rest.split_at_mut(b.shape.rows() as usize * ncols);
            slices.push((pi, b.k, head));
            rest = tail;
        }
    }
    slices.into_par_iter().for_each(|(pi, k, out)| {
        fill_block(ctx, &blocks[k], params, &columns, gammas[pi], out);
    });
    Ok(mat)
}

/// `R_k = sum lambda_{a,b,c} gamma1^b gamma2^c x^a R_{k,a,b,c}` with unknown
/// `lambda`, indexed by position in [`column_order`].
pub fn assemble_rk(p: &BiPoly, params: &StepanovParams, gamma1: u64, gamma2: u64, k: u32) -> Result<LinFormPoly> {
    let ctx = p.ctx();
    let fam = OperatorFamily::new(p, k)?;
    let pm = ctx.p() as u128;
    let t = params.t as u128;
    let mut out = LinFormPoly::zero(ctx);
    for (col, (a, b, c)) in column_order(params).into_iter().enumerate() {
        let alpha = ((a as u128 + b as u128 * t) % pm) as u64;
        let beta = ((c as u128 * t) % pm) as u64;
        let s = ctx.mul(ctx.pow(gamma1, b), ctx.pow(gamma2, c));
        let r = fam
            .at_exponents(k as usize, alpha, beta)
            .to_bipoly(ctx)
            .mul_monomial(a as u32, 0, s);
        out = out.add(&LinFormPoly::from_unknown(col, &r));
    }
    Ok(out)
}

/// The same system as [`build_system`], produced by symbolic pseudo-division
/// of [`LinFormPoly`] values. Slow; meant for cross-checking small instances.
pub fn build_system_symbolic(p: &BiPoly, params: &StepanovParams, gamma1: u64, gamma2: u64) -> Result<MatFp> {
    check_preconditions(p)?;
    let ctx = p.ctx();
    let ncols = params.unknowns() as usize;
    let rows = system_rows(params, 1) as usize;
    let mut mat = MatFp::zeros(ctx, rows, ncols)?;
    let mut offset = 0usize;
    for k in 0..params.d {
        let shape = block_shape(params, k);
        let rk = assemble_rk(p, params, gamma1, gamma2, k as u32)?;
        let rem = rk.pseudo_rem_y(p, shape.top as u32);
        for (&(i, j), form) in rem.terms() {
            let (i, j) = (i as u64, j as u64);
            if j >= shape.ny || i >= shape.nx {
                return Err(Error::BadShape(format!("remainder term x^{i} y^{j} outside block {k}")));
            }
            let row = offset + (j * shape.nx + i) as usize;
            for (&col, &v) in form {
                mat.set(row, col, v);
            }
        }
        offset += shape.rows() as usize;
    }
    Ok(mat)
}
