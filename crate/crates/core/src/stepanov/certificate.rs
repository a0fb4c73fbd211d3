use serde::{Deserialize, Serialize};

use crate::bounds::{bound_th1, bound_thsr};
use crate::counting::{count_solutions, family_mus, Method, SolutionSet};
use crate::error::{Error, Result};
use crate::ffield::{Coset, Subgroup};
use crate::modlinalg::nullspace_vector;
use crate::polyalg::{powers, singular_points, uni_roots, BiPoly};

use super::family::{tri, OperatorFamily};
use super::oracle::Series;
use super::params::{choose_params, StepanovParams};
use super::system::{build_system_multi, column_order};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub nonzero_lambda: bool,
    pub nab_le_t: bool,
    pub p00_nonzero: bool,
    pub rows_below_cols: bool,
    pub system_solved: bool,
    pub point_vanishing_verified: bool,
}

impl CertificateChecks {
    pub fn all_pass(&self) -> bool {
        self.nonzero_lambda
            && self.nab_le_t
            && self.p00_nonzero
            && self.rows_below_cols
            && self.system_solved
            && self.point_vanishing_verified
    }
}

/// Points where the order-`D` vanishing argument does not apply.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corrections {
    /// Roots of `P(0, y)`.
    pub axis_x: u64,
    /// Roots of `P(x, 0)`.
    pub axis_y: u64,
    /// Points with `P = dP/dy = 0`.
    pub singular: u64,
    /// Singular points lying in one of the coset products.
    pub coset_singular: u64,
    /// `axis_x + axis_y + D (singular + coset_singular)`.
    pub total: u64,
}

/// A solved auxiliary polynomial together with the count bound it implies.
///
/// `Psi = sum lambda_{a,b,c} x^a x^{bt} y^{ct}` vanishes to order at least
/// `D` at every smooth point of `P = 0` in the coset products, so
/// `N <= deg(Psi) (m + n) / D` plus the corrections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepanovCertificate {
    pub p: u64,
    pub t: u64,
    pub poly: String,
    /// Coset representative pairs `(g1, g2)`.
    pub reps: Vec<[u64; 2]>,
    pub rows: u64,
    pub cols: u64,
    pub psi_degree: u64,
    pub raw_bound: u64,
    pub bound: u64,
    /// The closed-form bound of the theorem, for comparison.
    pub closed_form: String,
    /// Nonzero `[a, b, c, lambda]` in column order.
    pub lambda: Vec<[u64; 4]>,
    pub params: StepanovParams,
    pub corrections: Corrections,
    pub checks: CertificateChecks,
}

impl StepanovCertificate {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("certificate serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config {
            key: "certificate".into(),
            msg: e.to_string(),
        })
    }

    /// `Psi(x, y)` evaluated through `x^t` and `y^t`.
    pub fn psi_eval(&self, x: u64, y: u64, ctx: &crate::ffield::FieldCtx) -> u64 {
        let xt = ctx.pow(x, self.t);
        let yt = ctx.pow(y, self.t);
        let xa = powers(ctx, x, self.params.a as usize);
        let xb = powers(ctx, xt, self.params.b as usize);
        let yc = powers(ctx, yt, self.params.c as usize);
        self.lambda.iter().fold(0, |acc, &[a, b, c, v]| {
            let m = ctx.mul(ctx.mul(xa[a as usize], xb[b as usize]), yc[c as usize]);
            ctx.add(acc, ctx.mul(v, m))
        })
    }
}

fn check_pairs(pairs: &[(Coset, Coset)]) -> Result<&Subgroup> {
    let sub = pairs
        .first()
        .map(|(c, _)| c.subgroup())
        .ok_or_else(|| Error::BadShape("no coset pairs".into()))?;
    for (c1, c2) in pairs {
        for c in [c1, c2] {
            if c.subgroup().t() != sub.t() || c.subgroup().ctx().p() != sub.ctx().p() {
                return Err(Error::BadShape("cosets of different subgroups".into()));
            }
        }
    }
    Ok(sub)
}

fn construct_multi(p: &BiPoly, pairs: &[(Coset, Coset)], h: u64) -> Result<StepanovCertificate> {
    let sub = check_pairs(pairs)?;
    let ctx = p.ctx();
    if p.coeff(0, 0) == 0 {
        return Err(Error::PrecondViolated("P(0,0) = 0".into()));
    }
    if p.specialize_y(0).degree().unwrap_or(0) == 0 {
        return Err(Error::PrecondViolated("deg P(x,0) = 0".into()));
    }
    let (m, n) = p.bidegree();
    if n == 0 {
        return Err(Error::PrecondViolated("deg_y P = 0".into()));
    }
    let t = sub.t();
    let params = choose_params(m, n, t, h)?;
    if params.d >= ctx.p() {
        return Err(Error::ParamsInfeasible(format!("D={} >= p", params.d)));
    }
    let gammas: Vec<(u64, u64)> = pairs.iter().map(|(a, b)| (a.gamma(), b.gamma())).collect();
    let mat = build_system_multi(p, &params, &gammas)?;
    let (rows, cols) = (mat.rows() as u64, mat.cols() as u64);
    let lambda_vec = nullspace_vector(&mat).ok_or(Error::NoKernel {
        rows: rows as usize,
        cols: cols as usize,
    })?;
    drop(mat);
    let columns = column_order(&params);
    let lambda: Vec<[u64; 4]> = columns
        .iter()
        .zip(&lambda_vec)
        .filter(|(_, &v)| v != 0)
        .map(|(&(a, b, c), &v)| [a, b, c, v])
        .collect();
    let psi_degree = lambda.iter().map(|&[a, b, c, _]| a + (b + c) * t).max().unwrap_or(0);
    let raw_bound = psi_degree * (m + n) as u64 / params.d;

    let axis_x = uni_roots(&p.specialize_x(0))?.len() as u64;
    let axis_y = uni_roots(&p.specialize_y(0))?.len() as u64;
    let sing = singular_points(p)?;
    let mut coset_singular = 0u64;
    for &(x, y) in &sing {
        if x != 0 && y != 0 {
            let mut hit = false;
            for (c1, c2) in pairs {
                hit |= c1.contains(x)? && c2.contains(y)?;
            }
            coset_singular += hit as u64;
        }
    }
    let singular = sing.len() as u64;
    let total = axis_x + axis_y + params.d * (singular + coset_singular);
    let closed = if h == 1 {
        bound_th1(m as u64, n as u64, t, ctx.p())
    } else {
        bound_thsr(n as u64, h, t, ctx.p())
    };
    let reps = pairs.iter().map(|(a, b)| [a.rep(), b.rep()]).collect();
    Ok(StepanovCertificate {
        p: ctx.p(),
        t,
        poly: p.to_string(),
        reps,
        rows,
        cols,
        psi_degree,
        raw_bound,
        bound: raw_bound + total,
        closed_form: closed.decimal(3),
        checks: CertificateChecks {
            nonzero_lambda: !lambda.is_empty(),
            nab_le_t: n as u64 * params.a * params.b <= t,
            p00_nonzero: true,
            rows_below_cols: rows < cols,
            system_solved: true,
            point_vanishing_verified: false,
        },
        lambda,
        params,
        corrections: Corrections {
            axis_x,
            axis_y,
            singular,
            coset_singular,
            total,
        },
    })
}

/// Certificate for the points of `P = 0` on `c1 x c2`.
pub fn construct_certificate(p: &BiPoly, c1: &Coset, c2: &Coset) -> Result<StepanovCertificate> {
    construct_multi(p, &[(c1.clone(), c2.clone())], 1)
}

/// Coset pairs `(mu_i^{-1} G, mu_i^{-1} G)` of the family `P(x, y) = l_i`.
pub fn family_pairs(n: u32, gamma: u64, ls: &[u64], sub: &Subgroup) -> Result<Vec<(Coset, Coset)>> {
    let ctx = sub.ctx();
    family_mus(n, gamma, ls, sub)?
        .into_iter()
        .map(|mu| {
            let c = sub.coset(ctx.inv(mu))?;
            Ok((c.clone(), c))
        })
        .collect()
}

/// Certificate bounding the total count of `P(x, y) = l_i` over `G x G`
/// for homogeneous `P`: one polynomial for `P = gamma` on all the
/// scaled cosets at once.
pub fn construct_family_certificate(
    p: &BiPoly,
    gamma: u64,
    ls: &[u64],
    sub: &Subgroup,
) -> Result<StepanovCertificate> {
    let n = match p.is_homogeneous() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::NotHomogeneous),
    };
    let pairs = family_pairs(n, gamma, ls, sub)?;
    let shifted = p.sub(&BiPoly::constant(p.ctx(), gamma));
    construct_multi(&shifted, &pairs, ls.len() as u64)
}

pub fn verify_certificate(
    cert: &StepanovCertificate,
    p: &BiPoly,
    c1: &Coset,
    c2: &Coset,
    solutions: &[(u64, u64)],
) -> Result<bool> {
    verify_certificate_multi(cert, p, &[(c1.clone(), c2.clone())], solutions)
}

/// Re-derives `D_k Psi` at every smooth solution two ways and checks that
/// both agree and vanish for `k < D`.
///
/// The first way assembles `R_k(x0, y0)` from the operator factors; the
/// second expands `Psi(x0 + s, y(x0 + s))` as a power series along the
/// branch of the curve. Points with `x0 y0 = 0` or `dP/dy = 0` are skipped.
pub fn verify_certificate_multi(
    cert: &StepanovCertificate,
    p: &BiPoly,
    pairs: &[(Coset, Coset)],
    solutions: &[(u64, u64)],
) -> Result<bool> {
    let ctx = p.ctx();
    let sub = check_pairs(pairs)?;
    let reps_match = cert.reps.len() == pairs.len()
        && cert
            .reps
            .iter()
            .zip(pairs)
            .all(|(r, (c1, c2))| ctx.reduce(r[0]) != 0 && ctx.reduce(r[1]) != 0 && c1.contains(r[0]).unwrap_or(false) && c2.contains(r[1]).unwrap_or(false));
    if cert.p != ctx.p() || cert.t != sub.t() || cert.poly != p.to_string() || !reps_match || cert.lambda.is_empty() {
        return Ok(false);
    }
    let params = &cert.params;
    if cert
        .lambda
        .iter()
        .any(|&[a, b, c, _]| a >= params.a || b >= params.b || c >= params.c)
    {
        return Ok(false);
    }
    let d = params.d as usize;
    let t = cert.t;
    let pm = ctx.p() as u128;
    let fam = OperatorFamily::new(p, (d - 1) as u32)?;
    let series = Series::new(ctx, d);
    let py = p.partial_y();
    let mut fact = vec![1u64; d];
    for k in 1..d {
        fact[k] = ctx.mul(fact[k - 1], k as u64);
    }
    for &(x0, y0) in solutions {
        if p.eval(x0, y0) != 0 {
            return Ok(false);
        }
        if x0 == 0 || y0 == 0 {
            continue;
        }
        let mut pair = None;
        for (c1, c2) in pairs {
            if c1.contains(x0)? && c2.contains(y0)? {
                pair = Some((c1.gamma(), c2.gamma()));
                break;
            }
        }
        let Some((g1, g2)) = pair else {
            return Ok(false);
        };
        let pyv = py.eval(x0, y0);
        if pyv == 0 {
            continue;
        }

        // assembled R_k(x0, y0) via moments sum lambda g1^b g2^c x0^a alpha^i beta^j
        let mut moments = vec![0u64; tri(0, d) + 1];
        let xa = powers(ctx, x0, params.a as usize);
        let g1p = powers(ctx, g1, params.b as usize);
        let g2p = powers(ctx, g2, params.c as usize);
        for &[a, b, c, v] in &cert.lambda {
            let alpha = ((a as u128 + b as u128 * t as u128) % pm) as u64;
            let beta = ((c as u128 * t as u128) % pm) as u64;
            let w = ctx.mul(ctx.mul(v, xa[a as usize]), ctx.mul(g1p[b as usize], g2p[c as usize]));
            let ap = powers(ctx, alpha, d);
            let bp = powers(ctx, beta, d);
            for s in 0..d {
                for j in 0..=s {
                    let i = s - j;
                    let idx = tri(i, j);
                    moments[idx] = ctx.add(moments[idx], ctx.mul(w, ctx.mul(ap[i], bp[j])));
                }
            }
        }
        let vals = fam.values_at(x0, y0);
        let assembled: Vec<u64> = (0..d)
            .map(|k| {
                let mut acc = 0u64;
                for s in 0..=k {
                    for j in 0..=s {
                        let idx = tri(s - j, j);
                        acc = ctx.add(acc, ctx.mul(vals[k][idx], moments[idx]));
                    }
                }
                acc
            })
            .collect();

        // power series of Psi along the branch
        let y = series.branch(p, x0, y0)?;
        let yt = series.pow(&y, t);
        let mut ypow = vec![series.pow(&yt, 0)];
        for c in 1..params.c as usize {
            let next = series.mul(&ypow[c - 1], &yt);
            ypow.push(next);
        }
        let mut psi = vec![0u64; d];
        for &[a, b, c, v] in &cert.lambda {
            let xe = series.shifted_power(x0, a + b * t);
            let term = series.mul(&xe, &ypow[c as usize]);
            for (o, tv) in psi.iter_mut().zip(term) {
                *o = ctx.add(*o, ctx.mul(tv, v));
            }
        }
        for k in 0..d {
            let oracle = if k == 0 {
                psi[0]
            } else {
                // D_k Psi = P_y^{2k-1} x^k y^k d^k Psi/dx^k
                let scale = ctx.mul(ctx.pow(pyv, 2 * k as u64 - 1), ctx.pow(ctx.mul(x0, y0), k as u64));
                ctx.mul(scale, ctx.mul(fact[k], psi[k]))
            };
            if oracle != assembled[k] || oracle != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Constructs a certificate, counts the points exactly and verifies the
/// certificate on them.
pub fn certify(p: &BiPoly, c1: &Coset, c2: &Coset) -> Result<(StepanovCertificate, SolutionSet)> {
    let mut cert = construct_certificate(p, c1, c2)?;
    let sols = count_solutions(p, c1, c2, Method::RootFind)?;
    cert.checks.point_vanishing_verified = verify_certificate(&cert, p, c1, c2, &sols.points)?;
    Ok((cert, sols))
}

/// Family version of [`certify`]; the returned count is the total over all
/// equations.
pub fn certify_family(
    p: &BiPoly,
    gamma: u64,
    ls: &[u64],
    sub: &Subgroup,
) -> Result<(StepanovCertificate, Vec<(u64, u64)>)> {
    let mut cert = construct_family_certificate(p, gamma, ls, sub)?;
    let n = p.is_homogeneous().unwrap_or(0);
    let pairs = family_pairs(n, gamma, ls, sub)?;
    let shifted = p.sub(&BiPoly::constant(p.ctx(), gamma));
    let mut points = Vec::new();
    for (c1, c2) in &pairs {
        points.extend(count_solutions(&shifted, c1, c2, Method::RootFind)?.points);
    }
    cert.checks.point_vanishing_verified = verify_certificate_multi(&cert, &shifted, &pairs, &points)?;
    Ok((cert, points))
}
