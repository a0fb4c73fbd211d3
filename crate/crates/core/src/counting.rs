//! Exact point counts on coset products and energies.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{nth_root, Coset, FieldCtx, Subgroup};
use crate::polyalg::{uni_roots, BiPoly, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// All `t^2` pairs.
    Naive,
    /// Roots of `P(x0, y)` for each `x0`.
    RootFind,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::RootFind => "rootfind",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "rootfind" => Ok(Method::RootFind),
            _ => Err(Error::Config {
                key: "method".into(),
                msg: format!("unknown method `{s}`"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub points: Vec<(u64, u64)>,
    pub method: Method,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn same_subgroup(c1: &Coset, c2: &Coset) -> Result<()> {
    let (s1, s2) = (c1.subgroup(), c2.subgroup());
    if s1.t() != s2.t() || s1.ctx().p() != s2.ctx().p() {
        return Err(Error::BadShape("cosets of different subgroups".into()));
    }
    Ok(())
}

fn points_over_x(p: &BiPoly, x0: u64, c2: &Coset, c2_elems: &[u64], method: Method) -> Result<Vec<(u64, u64)>> {
    match method {
        Method::Naive => Ok(c2_elems
            .iter()
            .filter(|&&y| p.eval(x0, y) == 0)
            .map(|&y| (x0, y))
            .collect()),
        Method::RootFind => {
            let f = p.specialize_x(x0);
            if f.is_zero() {
                return Ok(c2_elems.iter().map(|&y| (x0, y)).collect());
            }
            let mut out = Vec::new();
            for y in uni_roots(&f)? {
                if y != 0 && c2.contains(y)? {
                    out.push((x0, y));
                }
            }
            Ok(out)
        }
    }
}

/// Points `(x, y)` with `P(x, y) = 0`, `x` in `c1`, `y` in `c2`, sorted.
pub fn count_solutions(p: &BiPoly, c1: &Coset, c2: &Coset, method: Method) -> Result<SolutionSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    same_subgroup(c1, c2)?;
    let xs = c1.elements();
    let mut ys = c2.elements();
    ys.sort_unstable();
    let mut xs_sorted = xs;
    xs_sorted.sort_unstable();
    let chunks: Vec<Vec<(u64, u64)>> = xs_sorted
        .par_iter()
        .map(|&x0| points_over_x(p, x0, c2, &ys, method))
        .collect::<Result<_>>()?;
    let mut points: Vec<(u64, u64)> = chunks.into_iter().flatten().collect();
    points.sort_unstable();
    Ok(SolutionSet { points, method })
}

/// Number of points, without storing them.
pub fn count_only(p: &BiPoly, c1: &Coset, c2: &Coset, method: Method) -> Result<u64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    same_subgroup(c1, c2)?;
    let ys = c2.elements();
    c1.elements()
        .par_iter()
        .map(|&x0| match method {
            Method::Naive => Ok(ys.iter().filter(|&&y| p.eval(x0, y) == 0).count() as u64),
            Method::RootFind => points_over_x(p, x0, c2, &ys, method).map(|v| v.len() as u64),
        })
        .sum()
}

/// Counts for the equations `P(x, y) = l_i`, `x, y` in `G`, where
/// `P` is homogeneous of degree `n` and `l_i = gamma mu_i^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCount {
    pub gamma: u64,
    pub ls: Vec<u64>,
    pub mus: Vec<u64>,
    /// Direct counts of `P = l_i` on `G x G`.
    pub per_equation: Vec<u64>,
    /// Counts of `P = gamma` on `mu_i^{-1} G x mu_i^{-1} G`.
    pub scaled: Vec<u64>,
    pub total: u64,
}

impl FamilyCount {
    pub fn consistent(&self) -> bool {
        self.per_equation == self.scaled && self.total == self.per_equation.iter().sum::<u64>()
    }
}

/// `mu_i` with `l_i = gamma mu_i^n`, checking the `l_i` lie in distinct
/// cosets of `G`.
pub fn family_mus(n: u32, gamma: u64, ls: &[u64], sub: &Subgroup) -> Result<Vec<u64>> {
    let ctx = sub.ctx();
    if gamma == 0 {
        return Err(Error::ZeroElement);
    }
    let ginv = ctx.inv(gamma);
    let mut reps: Vec<(u64, u64)> = Vec::new();
    let mut mus = Vec::with_capacity(ls.len());
    for &l in ls {
        if l == 0 {
            return Err(Error::ZeroElement);
        }
        for &(prev, _) in &reps {
            if sub.coset(prev)?.contains(l)? {
                return Err(Error::CosetCollision(prev, l));
            }
        }
        let mu = nth_root(ctx, ctx.mul(l, ginv), n as u64)?.ok_or(Error::RootMissing(l))?;
        reps.push((l, mu));
        mus.push(mu);
    }
    Ok(mus)
}

pub fn count_family(p: &BiPoly, gamma: u64, ls: &[u64], sub: &Subgroup) -> Result<FamilyCount> {
    let n = match p.is_homogeneous() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::NotHomogeneous),
    };
    let ctx = sub.ctx();
    let mus = family_mus(n, gamma, ls, sub)?;
    let g = sub.trivial_coset();
    let shifted = p.sub(&BiPoly::constant(ctx, gamma));
    let mut per_equation = Vec::with_capacity(ls.len());
    let mut scaled = Vec::with_capacity(ls.len());
    for (&l, &mu) in ls.iter().zip(&mus) {
        let direct = p.sub(&BiPoly::constant(ctx, l));
        per_equation.push(count_only(&direct, &g, &g, Method::RootFind)?);
        let c = sub.coset(ctx.inv(mu))?;
        scaled.push(count_only(&shifted, &c, &c, Method::RootFind)?);
    }
    let total = per_equation.iter().sum();
    Ok(FamilyCount {
        gamma,
        ls: ls.to_vec(),
        mus,
        per_equation,
        scaled,
        total,
    })
}

/// Distinct elements, sorted.
fn as_set(v: &[u64]) -> Vec<u64> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// `E(A, B) = sum_c r(c)^2` with `r(c) = #{(a, b) : a + b = c}`; inputs are
/// treated as sets.
pub fn additive_energy(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> u128 {
    let (a, b) = (as_set(a), as_set(b));
    let mut fibers: HashMap<u64, u64> = HashMap::new();
    for &x in &a {
        for &y in &b {
            *fibers.entry(ctx.add(x, y)).or_insert(0) += 1;
        }
    }
    fibers.values().map(|&m| m as u128 * m as u128).sum()
}

/// `c -> #{(x, y) in G x G : P(x, y) = c}`, zero fibers omitted.
pub fn fiber_histogram(p: &BiPoly, g: &Subgroup) -> BTreeMap<u64, u64> {
    let elems = g.elements();
    elems
        .par_iter()
        .map(|&x| {
            let f = p.specialize_x(x);
            let mut h: HashMap<u64, u64> = HashMap::new();
            for &y in elems {
                *h.entry(f.eval(y)).or_insert(0) += 1;
            }
            h
        })
        .reduce(HashMap::new, |mut acc, h| {
            for (k, v) in h {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        })
        .into_iter()
        .collect()
}

/// `E_P^q(G) = sum_c m(c)^q`.
pub fn polynomial_energy(p: &BiPoly, g: &Subgroup, q: u32) -> Result<BigUint> {
    if q == 0 {
        return Err(Error::BadExponent(q));
    }
    Ok(fiber_histogram(p, g).values().map(|&m| BigUint::from(m).pow(q)).sum())
}

/// `E(f(G), g(G))` with images taken as sets.
pub fn composed_energy(f: &UniPoly, g: &UniPoly, sub: &Subgroup) -> Result<u128> {
    if f.degree().unwrap_or(0) == 0 || g.degree().unwrap_or(0) == 0 {
        return Err(Error::BadShape("composed energy needs nonconstant f and g".into()));
    }
    let fa: Vec<u64> = sub.elements().iter().map(|&x| f.eval(x)).collect();
    let ga: Vec<u64> = sub.elements().iter().map(|&x| g.eval(x)).collect();
    Ok(additive_energy(sub.ctx(), &fa, &ga))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::subgroup_of_order;
    use crate::polyalg::parse_poly;

    #[test]
    fn count_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        let g = subgroup_of_order(&ctx, 3).unwrap();
        let c = g.trivial_coset();
        for method in [Method::Naive, Method::RootFind] {
            let p = parse_poly("x - y + 1", &ctx).unwrap();
            assert_eq!(count_solutions(&p, &c, &c, method).unwrap().points, vec![(1, 2)]);
            let p = parse_poly("x - y", &ctx).unwrap();
            assert_eq!(count_solutions(&p, &c, &c, method).unwrap().len(), 3);
            assert!(count_solutions(&BiPoly::constant(&ctx, 5), &c, &c, method).unwrap().is_empty());
        }
        assert_eq!(
            count_solutions(&BiPoly::zero(&ctx), &c, &c, Method::Naive),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn energy_examples() {
        let ctx = FieldCtx::new(7).unwrap();
        assert_eq!(additive_energy(&ctx, &[1, 2], &[1, 2]), 6);
        assert_eq!(additive_energy(&ctx, &[3], &[5]), 1);
        let g = subgroup_of_order(&ctx, 3).unwrap();
        let p = parse_poly("x + y", &ctx).unwrap();
        assert_eq!(polynomial_energy(&p, &g, 2).unwrap(), BigUint::from(15u32));
        assert_eq!(polynomial_energy(&p, &g, 1).unwrap(), BigUint::from(9u32));
        let id = UniPoly::x(&ctx);
        assert_eq!(
            composed_energy(&id, &id, &g).unwrap(),
            additive_energy(&ctx, g.elements(), g.elements())
        );
    }

    #[test]
    fn family_h1_matches_plain_count() {
        let ctx = FieldCtx::new(31).unwrap();
        let g = subgroup_of_order(&ctx, 5).unwrap();
        let p = parse_poly("x^2 + 3*x*y + y^2", &ctx).unwrap();
        let fc = count_family(&p, 7, &[7], &g).unwrap();
        assert_eq!(fc.mus, vec![1]);
        let shifted = p.sub(&BiPoly::constant(&ctx, 7));
        let c = g.trivial_coset();
        assert_eq!(fc.total, count_only(&shifted, &c, &c, Method::Naive).unwrap());
        assert!(fc.consistent());
        assert!(matches!(count_family(&p, 7, &[7, 7], &g), Err(Error::CosetCollision(7, 7))));
        let lin = parse_poly("x + 1", &ctx).unwrap();
        assert_eq!(count_family(&lin, 7, &[7], &g), Err(Error::NotHomogeneous));
    }
}
