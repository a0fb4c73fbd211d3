use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{missing, Config, Shape, SweepKind, TSpec};
use super::record::ExperimentRecord;
use super::rng::{instance_rng, instance_seed};
use crate::bounds::{bound_comparators, bound_corollaries, bound_energy, bound_th1, bound_thsr, BoundReport};
use crate::counting::{composed_energy, count_family, count_solutions, polynomial_energy, Method};
use crate::error::{Error, Result};
use crate::ffield::{divisors, is_prime, subgroup_of_order, FieldCtx, Subgroup};
use crate::polyalg::{parse_poly, BiPoly, UniPoly};
use crate::stepanov::{certify, certify_family, StepanovCertificate};

fn orders(cfg: &Config, p: u64) -> Result<Vec<u64>> {
    match cfg.t.ok_or_else(|| missing("t"))? {
        TSpec::Order(t) => Ok(vec![t]),
        TSpec::All => {
            let lo = cfg.t_min.unwrap_or(1);
            let hi = cfg.t_max.unwrap_or(u64::MAX);
            Ok(divisors(p - 1).into_iter().filter(|t| (lo..=hi).contains(t)).collect())
        }
    }
}

fn parse_input(cfg: &Config) -> Result<(FieldCtx, BiPoly)> {
    let ctx = FieldCtx::new(cfg.require_p()?)?;
    let poly = parse_poly(cfg.require_poly()?, &ctx).map_err(|e| Error::Config {
        key: "poly".into(),
        msg: e.to_string(),
    })?;
    Ok((ctx, poly))
}

fn parse_uni(text: &str, key: &str, ctx: &FieldCtx) -> Result<UniPoly> {
    let p = parse_poly(text, ctx).map_err(|e| Error::Config {
        key: key.into(),
        msg: e.to_string(),
    })?;
    if p.deg_y() > 0 {
        return Err(Error::Config {
            key: key.into(),
            msg: "expected a polynomial in x only".into(),
        });
    }
    Ok(p.specialize_y(0))
}

fn base_record(ctx: &FieldCtx, t: u64, poly: &BiPoly, seed: u64) -> ExperimentRecord {
    let (m, n) = poly.bidegree();
    ExperimentRecord {
        p: ctx.p(),
        t,
        poly: poly.to_string(),
        m: Some(m),
        n: Some(n),
        seed: Some(seed),
        ..Default::default()
    }
}

fn stamp(rec: &mut ExperimentRecord, start: Instant, timing: bool) {
    if timing {
        rec.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
}

/// No factor in `x` alone or `y` alone. Irreducibility itself is taken on
/// trust; this only rules out the cheap counterexamples.
fn no_univariate_factor(poly: &BiPoly) -> bool {
    let (m, n) = poly.bidegree();
    if m == 0 || n == 0 {
        return false;
    }
    let content = |q: &BiPoly| {
        q.y_coeffs()
            .into_iter()
            .filter(|c| !c.is_zero())
            .reduce(|a, b| a.gcd(&b))
            .and_then(|g| g.degree())
            .unwrap_or(0)
    };
    let swapped = BiPoly::from_terms(poly.ctx(), poly.terms().iter().map(|(&(i, j), &c)| (j, i, c)));
    content(poly) == 0 && content(&swapped) == 0
}

/// The shape hypotheses shared by the single-equation results.
fn require_shape(report: &mut BoundReport, poly: &BiPoly) {
    if !no_univariate_factor(poly) {
        report.applicable = false;
        report.violated.push("no factor in x or y alone".into());
    }
    if poly.coeff(0, 0) == 0 {
        report.applicable = false;
        report.violated.push("P(0,0) != 0".into());
    }
    if poly.specialize_y(0).degree().unwrap_or(0) == 0 {
        report.applicable = false;
        report.violated.push("deg P(x,0) >= 1".into());
    }
}

/// `y = x + mu` with both cosets equal to `G`, up to a scalar.
fn linear_case(poly: &BiPoly, g1: u64, g2: u64, sub: &Subgroup) -> bool {
    let ctx = poly.ctx();
    let terms = poly.terms();
    let a = poly.coeff(1, 0);
    terms.len() == 3
        && a != 0
        && poly.coeff(0, 1) == ctx.neg(a)
        && poly.coeff(0, 0) != 0
        && sub.contains(ctx.reduce(g1))
        && sub.contains(ctx.reduce(g2))
}

fn attach_cert(rec: &mut ExperimentRecord, cert: &StepanovCertificate, count: u64) {
    rec.cert_bound = Some(cert.bound.to_string());
    rec.attach("cert", cert.checks.all_pass(), count <= cert.bound);
}

fn write_cert(cfg: &Config, cert: &StepanovCertificate) -> Result<()> {
    if let Some(path) = &cfg.cert_out {
        std::fs::write(path, cert.to_toml())?;
    }
    Ok(())
}

struct CountJob<'a> {
    cfg: &'a Config,
    ctx: &'a FieldCtx,
    poly: &'a BiPoly,
    t: u64,
    g1: u64,
    g2: u64,
    seed: u64,
    certify: bool,
}

fn count_instance(job: &CountJob) -> Vec<ExperimentRecord> {
    let CountJob { cfg, ctx, poly, t, g1, g2, seed, .. } = *job;
    let timing = cfg.timing.unwrap_or(false);
    let (m, n) = poly.bidegree();
    let mut base = base_record(ctx, t, poly, seed);
    base.g1 = Some(g1);
    base.g2 = Some(g2);
    let setup = subgroup_of_order(ctx, t).and_then(|sub| {
        let c1 = sub.coset(g1)?;
        let c2 = sub.coset(g2)?;
        Ok((sub, c1, c2))
    });
    let (sub, c1, c2) = match setup {
        Ok(s) => s,
        Err(e) => {
            base.fail(&e);
            return vec![base];
        }
    };
    let mut th1 = bound_th1(m as u64, n as u64, t, ctx.p());
    require_shape(&mut th1, poly);
    let (hk, cz) = bound_comparators(m as u64, n as u64, t, ctx.p(), cfg.chi, linear_case(poly, g1, g2, &sub));
    let mut out: Vec<ExperimentRecord> = Vec::new();
    let mut first_count: Option<u64> = None;
    for method in cfg.method.unwrap_or_default().methods() {
        let start = Instant::now();
        let mut rec = base.clone();
        rec.method = Some(method.to_string());
        match count_solutions(poly, &c1, &c2, method) {
            Ok(sols) => {
                let count = sols.len() as u64;
                let big = BigUint::from(count);
                rec.count = Some(count.to_string());
                for b in [&th1, &hk, &cz] {
                    rec.attach_bound(b, &big);
                }
                match first_count {
                    Some(c) => rec.attach("agree", true, c == count),
                    None => first_count = Some(count),
                }
                if job.certify && method == Method::RootFind {
                    match certify(poly, &c1, &c2) {
                        Ok((cert, _)) => {
                            attach_cert(&mut rec, &cert, count);
                            if let Err(e) = write_cert(cfg, &cert) {
                                rec.fail(&e);
                            }
                        }
                        Err(e) => rec.cert_bound = Some(format!("error: {e}")),
                    }
                }
            }
            Err(e) => rec.fail(&e),
        }
        stamp(&mut rec, start, timing);
        out.push(rec);
    }
    out
}

/// Point counts per subgroup order and method, with the single-equation
/// bounds and comparators attached.
pub fn run_count(cfg: &Config) -> Result<Vec<ExperimentRecord>> {
    let (ctx, poly) = parse_input(cfg)?;
    let ts = orders(cfg, ctx.p())?;
    Ok(ts
        .into_iter()
        .flat_map(|t| {
            count_instance(&CountJob {
                cfg,
                ctx: &ctx,
                poly: &poly,
                t,
                g1: cfg.g1.unwrap_or(1),
                g2: cfg.g2.unwrap_or(1),
                seed: cfg.seed(),
                certify: cfg.certify.unwrap_or(false),
            })
        })
        .collect())
}

/// Like [`run_count`] with the certificate required: a failed
/// construction becomes a failure row.
pub fn run_certify(cfg: &Config) -> Result<Vec<ExperimentRecord>> {
    let (ctx, poly) = parse_input(cfg)?;
    let ts = orders(cfg, ctx.p())?;
    let (g1, g2) = (cfg.g1.unwrap_or(1), cfg.g2.unwrap_or(1));
    Ok(ts
        .into_iter()
        .map(|t| certify_instance(cfg, &ctx, &poly, t, g1, g2, cfg.seed()))
        .collect())
}

fn certify_instance(cfg: &Config, ctx: &FieldCtx, poly: &BiPoly, t: u64, g1: u64, g2: u64, seed: u64) -> ExperimentRecord {
    let start = Instant::now();
    let (m, n) = poly.bidegree();
    let mut rec = base_record(ctx, t, poly, seed);
    rec.g1 = Some(g1);
    rec.g2 = Some(g2);
    rec.method = Some(Method::RootFind.to_string());
    let res = subgroup_of_order(ctx, t).and_then(|sub| {
        let c1 = sub.coset(g1)?;
        let c2 = sub.coset(g2)?;
        let (cert, sols) = certify(poly, &c1, &c2)?;
        Ok((sub, cert, sols))
    });
    match res {
        Ok((sub, cert, sols)) => {
            let count = sols.len() as u64;
            let big = BigUint::from(count);
            rec.count = Some(count.to_string());
            let mut th1 = bound_th1(m as u64, n as u64, t, ctx.p());
            require_shape(&mut th1, poly);
            let (hk, cz) = bound_comparators(m as u64, n as u64, t, ctx.p(), cfg.chi, linear_case(poly, g1, g2, &sub));
            for b in [&th1, &hk, &cz] {
                rec.attach_bound(b, &big);
            }
            attach_cert(&mut rec, &cert, count);
            if let Err(e) = write_cert(cfg, &cert) {
                rec.fail(&e);
            }
        }
        Err(e) => rec.fail(&e),
    }
    stamp(&mut rec, start, cfg.timing.unwrap_or(false));
    rec
}

fn energy_instance(cfg: &Config, ctx: &FieldCtx, poly: &BiPoly, t: u64, qs: &[u32], seed: u64) -> Vec<ExperimentRecord> {
    let timing = cfg.timing.unwrap_or(false);
    let (m, n) = poly.bidegree();
    let sub = match subgroup_of_order(ctx, t) {
        Ok(s) => s,
        Err(e) => {
            let mut rec = base_record(ctx, t, poly, seed);
            rec.fail(&e);
            return vec![rec];
        }
    };
    qs.iter()
        .map(|&q| {
            let start = Instant::now();
            let mut rec = base_record(ctx, t, poly, seed);
            rec.q = Some(q);
            match polynomial_energy(poly, &sub, q) {
                Ok(e) => {
                    rec.count = Some(e.to_string());
                    if q >= 2 {
                        if let Ok(mut b) = bound_energy(m.max(n) as u64, q, t, ctx.p()) {
                            if poly.specialize_y(0).degree().unwrap_or(0) == 0 || !no_univariate_factor(poly) {
                                b.applicable = false;
                                b.violated.push("deg P(x,0) >= 1, no univariate factor".into());
                            }
                            rec.attach_bound(&b, &e);
                        }
                    }
                    if q == 2 {
                        let (mut c17, _) = bound_corollaries(m as u64, n as u64, t, ctx.p());
                        if poly.specialize_y(0).degree().unwrap_or(0) == 0 || !no_univariate_factor(poly) {
                            c17.applicable = false;
                        }
                        rec.attach("cor17", c17.applicable, c17.admits(&e));
                    }
                }
                Err(err) => rec.fail(&err),
            }
            stamp(&mut rec, start, timing);
            rec
        })
        .collect()
}

fn composed_record(cfg: &Config, ctx: &FieldCtx, f: &UniPoly, g: &UniPoly, t: u64) -> ExperimentRecord {
    let start = Instant::now();
    let m = f.degree().unwrap_or(0) as u32;
    let n = g.degree().unwrap_or(0) as u32;
    let fb = BiPoly::from_x_poly(f);
    let gb = BiPoly::from_x_poly(g);
    let mut rec = ExperimentRecord {
        p: ctx.p(),
        t,
        poly: format!("f={fb}; g={gb}"),
        m: Some(m),
        n: Some(n),
        q: Some(2),
        seed: Some(cfg.seed()),
        ..Default::default()
    };
    let res = subgroup_of_order(ctx, t).and_then(|sub| composed_energy(f, g, &sub));
    match res {
        Ok(e) => {
            let e = BigUint::from(e);
            rec.count = Some(e.to_string());
            let (_, c16) = bound_corollaries(m as u64, n as u64, t, ctx.p());
            rec.attach_bound(&c16, &e);
        }
        Err(err) => rec.fail(&err),
    }
    stamp(&mut rec, start, cfg.timing.unwrap_or(false));
    rec
}

/// Polynomial energies per order and exponent; with `f` and `g` set, also
/// the composed additive energies.
pub fn run_energy(cfg: &Config) -> Result<Vec<ExperimentRecord>> {
    let ctx = FieldCtx::new(cfg.require_p()?)?;
    let ts = orders(cfg, ctx.p())?;
    let qs = cfg.q.clone().unwrap_or_else(|| vec![2]);
    let mut out = Vec::new();
    if cfg.poly.is_some() {
        let (_, poly) = parse_input(cfg)?;
        for &t in &ts {
            out.extend(energy_instance(cfg, &ctx, &poly, t, &qs, cfg.seed()));
        }
    }
    if let (Some(f), Some(g)) = (&cfg.f, &cfg.g) {
        let f = parse_uni(f, "f", &ctx)?;
        let g = parse_uni(g, "g", &ctx)?;
        for &t in &ts {
            out.push(composed_record(cfg, &ctx, &f, &g, t));
        }
    }
    if out.is_empty() && cfg.poly.is_none() {
        return Err(missing("poly"));
    }
    Ok(out)
}

/// `h` values `gamma u^n` lying in distinct cosets of `G`.
pub fn random_family_ls(rng: &mut ChaCha8Rng, n: u32, gamma: u64, h: u64, sub: &Subgroup) -> Result<Vec<u64>> {
    let ctx = sub.ctx();
    if h > sub.index() {
        return Err(Error::Config {
            key: "h".into(),
            msg: format!("h={h} exceeds the number of cosets {}", sub.index()),
        });
    }
    let mut ls: Vec<u64> = Vec::new();
    let mut keys: Vec<u64> = Vec::new();
    let mut tries = 0;
    while (ls.len() as u64) < h {
        tries += 1;
        if tries > 10_000 {
            return Err(Error::Config {
                key: "h".into(),
                msg: "could not find values in distinct cosets".into(),
            });
        }
        let u = rng.gen_range(1..ctx.p());
        let l = ctx.mul(gamma, ctx.pow(u, n as u64));
        let key = ctx.pow(l, sub.t());
        if !keys.contains(&key) {
            keys.push(key);
            ls.push(l);
        }
    }
    Ok(ls)
}

fn family_instance(cfg: &Config, ctx: &FieldCtx, poly: &BiPoly, t: u64, ls: Result<Vec<u64>>, seed: u64) -> ExperimentRecord {
    let start = Instant::now();
    let gamma = cfg.gamma.unwrap_or(1);
    let mut rec = base_record(ctx, t, poly, seed);
    rec.method = Some(Method::RootFind.to_string());
    let res = ls.and_then(|ls| {
        let sub = subgroup_of_order(ctx, t)?;
        let fc = count_family(poly, gamma, &ls, &sub)?;
        Ok((sub, ls, fc))
    });
    match res {
        Ok((sub, ls, fc)) => {
            let h = ls.len() as u64;
            rec.h = Some(h);
            rec.count = Some(fc.total.to_string());
            rec.attach("agree", true, fc.consistent());
            let n = poly.is_homogeneous().unwrap_or(0) as u64;
            let mut b = bound_thsr(n, h, t, ctx.p());
            // hypotheses read on the shifted polynomials P - l_i
            if poly.coeff(n as u32, 0) == 0 {
                b.applicable = false;
                b.violated.push("deg P(x,0) >= 1".into());
            }
            rec.attach_bound(&b, &BigUint::from(fc.total));
            if cfg.certify.unwrap_or(false) {
                match certify_family(poly, gamma, &ls, &sub) {
                    Ok((cert, _)) => {
                        attach_cert(&mut rec, &cert, fc.total);
                        if let Err(e) = write_cert(cfg, &cert) {
                            rec.fail(&e);
                        }
                    }
                    Err(e) => rec.cert_bound = Some(format!("error: {e}")),
                }
            }
        }
        Err(e) => rec.fail(&e),
    }
    stamp(&mut rec, start, cfg.timing.unwrap_or(false));
    rec
}

/// Total count for `P(x, y) = l_i`, `i <= h`, over `G x G` with the
/// averaged bound attached. Uses `ls` when given, otherwise `h` random
/// values from the seed.
pub fn run_family(cfg: &Config) -> Result<Vec<ExperimentRecord>> {
    let (ctx, poly) = parse_input(cfg)?;
    let n = poly.is_homogeneous().ok_or(Error::NotHomogeneous)?;
    let ts = orders(cfg, ctx.p())?;
    let seed = cfg.seed();
    Ok(ts
        .into_iter()
        .map(|t| {
            let ls = match &cfg.ls {
                Some(ls) => Ok(ls.clone()),
                None => subgroup_of_order(&ctx, t).and_then(|sub| {
                    let mut rng = instance_rng(seed);
                    random_family_ls(&mut rng, n, cfg.gamma.unwrap_or(1), cfg.h.unwrap_or(1), &sub)
                }),
            };
            family_instance(cfg, &ctx, &poly, t, ls, seed)
        })
        .collect())
}

/// One generated sweep instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub seed: u64,
    pub p: u64,
    pub t: u64,
    pub poly: BiPoly,
    pub g1: u64,
    pub g2: u64,
}

fn random_prime(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> Option<u64> {
    for _ in 0..1000 {
        let mut c = rng.gen_range(lo..=hi) | 1;
        while c <= hi {
            if is_prime(c) {
                return Some(c);
            }
            c += 2;
        }
    }
    None
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &FieldCtx, shape: Shape, dx: u32, dy: u32) -> BiPoly {
    let p = ctx.p();
    match shape {
        Shape::Linear => {
            let mu = rng.gen_range(1..p);
            BiPoly::from_terms(ctx, [(1, 0, 1), (0, 1, p - 1), (0, 0, mu)])
        }
        Shape::Homogeneous => {
            let n = dy.max(1);
            let mut terms: Vec<(u32, u32, u64)> = (0..=n).map(|i| (i, n - i, rng.gen_range(0..p))).collect();
            terms[n as usize].2 = rng.gen_range(1..p);
            BiPoly::from_terms(ctx, terms)
        }
        Shape::Random => loop {
            let mx = rng.gen_range(0..=dx);
            let my = rng.gen_range(0..=dy);
            let mut terms = Vec::new();
            for i in 0..=mx {
                for j in 0..=my {
                    terms.push((i, j, rng.gen_range(0..p)));
                }
            }
            let poly = BiPoly::from_terms(ctx, terms);
            if !poly.is_zero() {
                break poly;
            }
        },
    }
}

/// Deterministic instance number `index` of a sweep.
pub fn generate_instance(cfg: &Config, index: u64) -> Result<Instance> {
    let seed = instance_seed(cfg.seed(), index);
    let mut rng = instance_rng(seed);
    let shape = cfg.shape.unwrap_or_default();
    let hi = cfg.p_max.unwrap_or(100_000);
    let lo = cfg.p_min.unwrap_or(1_000.min(hi / 2)).max(3);
    if lo > hi {
        return Err(Error::Config {
            key: "p_min".into(),
            msg: format!("p_min={lo} exceeds p_max={hi}"),
        });
    }
    let (tlo, thi) = (cfg.t_min.unwrap_or(1), cfg.t_max.unwrap_or(u64::MAX));
    for _ in 0..1000 {
        let p = match cfg.p {
            Some(p) => p,
            None => random_prime(&mut rng, lo, hi).ok_or_else(|| Error::Config {
                key: "p_min".into(),
                msg: "no prime in range".into(),
            })?,
        };
        let t = match cfg.t {
            Some(TSpec::Order(t)) => {
                if (p - 1) % t != 0 {
                    if cfg.p.is_some() {
                        return Err(Error::NotDivisor { t, p_minus_1: p - 1 });
                    }
                    continue;
                }
                t
            }
            _ => {
                let ds: Vec<u64> = divisors(p - 1).into_iter().filter(|d| (tlo..=thi).contains(d)).collect();
                if ds.is_empty() {
                    if cfg.p.is_some() {
                        return Err(Error::Config {
                            key: "t_min".into(),
                            msg: format!("no divisor of {} in range", p - 1),
                        });
                    }
                    continue;
                }
                ds[rng.gen_range(0..ds.len())]
            }
        };
        let ctx = FieldCtx::new(p)?;
        let poly = match &cfg.poly {
            Some(text) => parse_poly(text, &ctx)?,
            None => random_poly(&mut rng, &ctx, shape, cfg.deg_x.unwrap_or(3), cfg.deg_y.unwrap_or(3)),
        };
        let (g1, g2) = match (shape, cfg.g1, cfg.g2) {
            (_, Some(a), Some(b)) => (a, b),
            (Shape::Random, _, _) => (rng.gen_range(1..p), rng.gen_range(1..p)),
            _ => (1, 1),
        };
        return Ok(Instance { seed, p, t, poly, g1, g2 });
    }
    Err(Error::Config {
        key: "t_min".into(),
        msg: "no instance found for the requested ranges".into(),
    })
}

fn sweep_instance(cfg: &Config, index: u64) -> Vec<ExperimentRecord> {
    let inst = match generate_instance(cfg, index) {
        Ok(i) => i,
        Err(e) => {
            let mut rec = ExperimentRecord {
                seed: Some(instance_seed(cfg.seed(), index)),
                ..Default::default()
            };
            rec.fail(&e);
            return vec![rec];
        }
    };
    let ctx = inst.poly.ctx().clone();
    match cfg.kind.unwrap_or_default() {
        SweepKind::Count => count_instance(&CountJob {
            cfg,
            ctx: &ctx,
            poly: &inst.poly,
            t: inst.t,
            g1: inst.g1,
            g2: inst.g2,
            seed: inst.seed,
            certify: cfg.certify.unwrap_or(false),
        }),
        SweepKind::Certify => vec![certify_instance(cfg, &ctx, &inst.poly, inst.t, inst.g1, inst.g2, inst.seed)],
        SweepKind::Energy => {
            let qs = cfg.q.clone().unwrap_or_else(|| vec![2]);
            energy_instance(cfg, &ctx, &inst.poly, inst.t, &qs, inst.seed)
        }
        SweepKind::Family => {
            let n = inst.poly.is_homogeneous().unwrap_or(0);
            let mut rng = instance_rng(inst.seed ^ 0x9e37_79b9_7f4a_7c15);
            let h = rng.gen_range(1..=cfg.h.unwrap_or(4).max(1));
            let ls = match (&cfg.ls, n) {
                (Some(ls), _) => Ok(ls.clone()),
                (None, 0) => Err(Error::NotHomogeneous),
                (None, _) => subgroup_of_order(&ctx, inst.t)
                    .and_then(|sub| random_family_ls(&mut rng, n, cfg.gamma.unwrap_or(1), h, &sub)),
            };
            vec![family_instance(cfg, &ctx, &inst.poly, inst.t, ls, inst.seed)]
        }
    }
}

/// `instances` generated instances of the configured kind. Instances run
/// in parallel; the output order is the instance order.
pub fn sweep(cfg: &Config) -> Result<Vec<ExperimentRecord>> {
    let n = cfg.instances.unwrap_or(10) as u64;
    let work = || -> Vec<ExperimentRecord> {
        let per: Vec<Vec<ExperimentRecord>> = (0..n).into_par_iter().map(|i| sweep_instance(cfg, i)).collect();
        per.into_iter().flatten().collect()
    };
    match cfg.threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Config {
                    key: "threads".into(),
                    msg: e.to_string(),
                })?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// Re-checks a serialized certificate against a fresh exact count.
pub fn verify_file(text: &str) -> Result<(StepanovCertificate, bool, u64)> {
    let cert = StepanovCertificate::from_toml(text)?;
    let ctx = FieldCtx::new(cert.p)?;
    let poly = parse_poly(&cert.poly, &ctx)?;
    let sub = subgroup_of_order(&ctx, cert.t)?;
    let mut pairs = Vec::new();
    let mut points = Vec::new();
    for &[r1, r2] in &cert.reps {
        let c1 = sub.coset(r1)?;
        let c2 = sub.coset(r2)?;
        points.extend(count_solutions(&poly, &c1, &c2, Method::RootFind)?.points);
        pairs.push((c1, c2));
    }
    let ok = crate::stepanov::verify_certificate_multi(&cert, &poly, &pairs, &points)?;
    let count = points.len() as u64;
    Ok((cert.clone(), ok && count <= cert.bound, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Config {
        Config::from_toml_str(text).unwrap()
    }

    #[test]
    fn count_examples() {
        let r = run_count(&cfg("p = 7\nt = 3\npoly = \"x - y + 1\"")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].count.as_deref(), Some("1"));
        assert_eq!(r[0].bound_hk.as_deref(), Some("8.320"));
        let r = run_count(&cfg("p = 31\nt = \"all\"\npoly = \"x - y + 1\"")).unwrap();
        assert_eq!(r.len(), 8);
        let r = run_count(&cfg("p = 31\nt = \"all\"\npoly = \"x^2 - 3*y + 1\"\nmethod = \"both\"")).unwrap();
        assert_eq!(r.len(), 16);
        for pair in r.chunks(2) {
            assert_eq!(pair[0].count, pair[1].count);
            assert_eq!(pair[1].flag("agree"), Some((true, true)));
        }
    }

    #[test]
    fn energy_examples() {
        let r = run_energy(&cfg("p = 7\nt = 3\npoly = \"x + y\"\nq = [1, 2]")).unwrap();
        assert_eq!(r[0].count.as_deref(), Some("9"));
        assert_eq!(r[1].count.as_deref(), Some("15"));
        assert!(r[1].bound_energy.is_some());
        let r = run_energy(&cfg("p = 31\nt = 5\nf = \"x^2\"\ng = \"x^3\"")).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].flag("cor16").is_some());
    }

    #[test]
    fn univariate_factors_are_not_applicable() {
        let ctx = FieldCtx::new(31).unwrap();
        let yes = parse_poly("x*y + x + 1", &ctx).unwrap();
        let no = parse_poly("(x - 2)*(y + 1)", &ctx).unwrap();
        let no2 = parse_poly("(y - 3)*(x*y + 1)", &ctx).unwrap();
        assert!(no_univariate_factor(&yes));
        assert!(!no_univariate_factor(&no));
        assert!(!no_univariate_factor(&no2));
        assert!(!no_univariate_factor(&parse_poly("x^2 + 1", &ctx).unwrap()));
    }

    #[test]
    fn certify_failure_row() {
        let r = run_certify(&cfg("p = 29\nt = 7\npoly = \"x - y + 1\"")).unwrap();
        assert_eq!(r[0].failure(), Some("ParamsInfeasible: D=0"));
    }

    #[test]
    fn family_and_sweep() {
        let r = run_family(&cfg("p = 31\nt = 5\npoly = \"x^2 + y^2\"\nh = 3\nseed = 9")).unwrap();
        assert_eq!(r[0].flag("agree"), Some((true, true)));
        assert_eq!(r[0].h, Some(3));
        let c = cfg("p = 31\nt = 5\npoly = \"x^2 + y^2\"\nls = [1, 1]");
        assert!(run_family(&c).unwrap()[0].failure().unwrap().contains("same coset"));

        let c = cfg("kind = \"count\"\ninstances = 6\nseed = 3\np_max = 2000\nt_max = 60\nmethod = \"both\"");
        let a = sweep(&c).unwrap();
        let mut c1 = c.clone();
        c1.threads = Some(1);
        assert_eq!(a, sweep(&c1).unwrap());
        assert_eq!(a.len(), 12);
    }
}
