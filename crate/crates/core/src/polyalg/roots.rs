//! Root extraction for univariate polynomials over `F_p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::uni::UniPoly;

/// Below this modulus a full scan is cheaper than gcd/splitting.
pub const SCAN_THRESHOLD: u64 = 1 << 16;

/// Seed used when callers do not supply one.
pub const DEFAULT_ROOT_SEED: u64 = 0x5eed_0f_f1e1d;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootStrategy {
    /// Scan for `p < 2^16`, split otherwise.
    Auto,
    Scan,
    /// `gcd(f, X^p - X)` followed by randomized equal-degree splitting.
    Split,
}

/// Distinct roots of `f` in `F_p`, ascending.
pub fn uni_roots(f: &UniPoly) -> Result<Vec<u64>> {
    uni_roots_with(f, RootStrategy::Auto, DEFAULT_ROOT_SEED)
}

pub fn uni_roots_with(f: &UniPoly, strategy: RootStrategy, seed: u64) -> Result<Vec<u64>> {
    let Some(deg) = f.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    let ctx = f.ctx();
    match deg {
        0 => return Ok(Vec::new()),
        1 => {
            let r = ctx.mul(ctx.neg(f.coeff(0)), ctx.inv(f.coeff(1)));
            return Ok(vec![r]);
        }
        _ => {}
    }
    let scan = match strategy {
        RootStrategy::Auto => ctx.p() < SCAN_THRESHOLD,
        RootStrategy::Scan => true,
        RootStrategy::Split => false,
    };
    if scan {
        return Ok((0..ctx.p()).filter(|&x| f.eval(x) == 0).collect());
    }
    let f = f.monic();
    let x = UniPoly::x(ctx);
    // split part: gcd(f, x^p - x)
    let xp = x.pow_mod(ctx.p(), &f)?;
    let g = f.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_linear(&g, &mut rng, &mut roots)?;
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Collects the roots of a monic, squarefree, fully split polynomial.
fn split_linear(g: &UniPoly, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) -> Result<()> {
    let ctx = g.ctx();
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(ctx.neg(g.coeff(0)));
            return Ok(());
        }
        _ => {}
    }
    if g.coeff(0) == 0 {
        out.push(0);
        let (q, _) = g.div_rem(&UniPoly::x(ctx))?;
        return split_linear(&q, rng, out);
    }
    let half = (ctx.p() - 1) / 2;
    loop {
        let a = rng.gen_range(0..ctx.p());
        let shifted = UniPoly::new(ctx, vec![a, 1]);
        let h = shifted.pow_mod(half, g)?.sub(&UniPoly::constant(ctx, 1));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap_or(0) {
            let (rest, _) = g.div_rem(&d)?;
            split_linear(&d, rng, out)?;
            return split_linear(&rest.monic(), rng, out);
        }
    }
}
