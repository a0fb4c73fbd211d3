use coset_curves::counting::{count_solutions, Method};
use coset_curves::ffield::{next_prime_congruent_one, subgroup_of_order, FieldCtx};
use coset_curves::polyalg::{parse_poly, uni_roots, BiPoly};
use coset_curves::stepanov::{
    certify, construct_certificate, derivative_pairs, operator_factor, verify_certificate, StepanovCertificate,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, ctx: &FieldCtx, dx: u32, dy: u32) -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=dx {
        for j in 0..=dy {
            terms.push((i, j, rng.gen_range(0..ctx.p())));
        }
    }
    BiPoly::from_terms(ctx, terms)
}

// truncated series helpers, kept separate from the library's own
fn smul(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len()];
    for i in 0..a.len() {
        for j in 0..a.len() - i {
            out[i + j] = ctx.add(out[i + j], ctx.mul(a[i], b[j]));
        }
    }
    out
}

fn spow(ctx: &FieldCtx, a: &[u64], e: u64) -> Vec<u64> {
    let mut out = vec![0; a.len()];
    out[0] = 1;
    for _ in 0..e {
        out = smul(ctx, &out, a);
    }
    out
}

fn seval(ctx: &FieldCtx, p: &BiPoly, x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut out = vec![0; x.len()];
    for (&(i, j), &c) in p.terms() {
        let term = smul(ctx, &spow(ctx, x, i as u64), &spow(ctx, y, j as u64));
        for (o, v) in out.iter_mut().zip(term) {
            *o = ctx.add(*o, ctx.mul(c, v));
        }
    }
    out
}

/// `y(x0 + s)` one coefficient at a time.
fn branch(ctx: &FieldCtx, p: &BiPoly, x0: u64, y0: u64, len: usize) -> Vec<u64> {
    let mut x = vec![0; len];
    x[0] = x0;
    if len > 1 {
        x[1] = 1;
    }
    let mut y = vec![0; len];
    y[0] = y0;
    let d = ctx.inv(p.partial_y().eval(x0, y0));
    for i in 1..len {
        let r = seval(ctx, p, &x, &y);
        y[i] = ctx.neg(ctx.mul(r[i], d));
    }
    y
}

fn smooth_points(ctx: &FieldCtx, p: &BiPoly, want: usize) -> Vec<(u64, u64)> {
    let py = p.partial_y();
    let mut out = Vec::new();
    for x0 in 1..ctx.p() {
        let f = p.specialize_x(x0);
        if f.is_zero() {
            continue;
        }
        for y0 in uni_roots(&f).unwrap() {
            if y0 != 0 && py.eval(x0, y0) != 0 {
                out.push((x0, y0));
            }
        }
        if out.len() >= want {
            break;
        }
    }
    out
}

#[test]
fn graph_curves_give_plain_derivatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &p in &[101u64, 10007] {
        let ctx = FieldCtx::new(p).unwrap();
        for _ in 0..5 {
            let f = random_poly(&mut rng, &ctx, 6, 0).specialize_y(0);
            let graph = BiPoly::monomial(&ctx, 0, 1, 1).sub(&BiPoly::from_x_poly(&f));
            let mut fk = f.clone();
            for d in derivative_pairs(&graph, 10).unwrap() {
                fk = BiPoly::from_x_poly(&fk).partial_x().specialize_y(0);
                assert_eq!(d.r, BiPoly::constant(&ctx, 1));
                assert_eq!(d.q, BiPoly::from_x_poly(&fk), "k={}", d.k);
            }
        }
    }
}

#[test]
fn derivative_pairs_respect_degree_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let ctx = FieldCtx::new(10007).unwrap();
    for _ in 0..10 {
        let (dx, dy) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
        let p = random_poly(&mut rng, &ctx, dx, dy);
        let (m, n) = p.bidegree();
        if n == 0 {
            continue;
        }
        let py = p.partial_y();
        for d in derivative_pairs(&p, 12).unwrap() {
            let k = d.k as i64;
            let (m, n) = (m as i64, n as i64);
            let (qx, qy) = d.q.bidegree();
            let (rx, ry) = d.r.bidegree();
            assert!(d.q.is_zero() || (qx as i64) <= (2 * k - 1) * m - k);
            assert!(d.q.is_zero() || (qy as i64) <= (2 * k - 1) * n - k + 1);
            assert!((rx as i64) <= (2 * k - 1) * m && (ry as i64) <= (2 * k - 1) * (n - 1));
            assert_eq!(d.r, py.pow(2 * d.k as u64 - 1));
        }
    }
}

#[test]
fn derivatives_match_series_along_the_curve() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ctx = FieldCtx::new(10007).unwrap();
    for _ in 0..6 {
        let p = random_poly(&mut rng, &ctx, 2, 2);
        for (x0, y0) in smooth_points(&ctx, &p, 3) {
            let y = branch(&ctx, &p, x0, y0, 8);
            let mut fact = 1;
            for d in derivative_pairs(&p, 7).unwrap() {
                fact = ctx.mul(fact, d.k as u64);
                let lhs = ctx.mul(d.q.eval(x0, y0), ctx.inv(d.r.eval(x0, y0)));
                assert_eq!(lhs, ctx.mul(fact, y[d.k as usize]), "k={}", d.k);
            }
        }
    }
}

#[test]
fn operator_factors_match_series_and_degree_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let ctx = FieldCtx::new(10007).unwrap();
    for _ in 0..6 {
        let p = random_poly(&mut rng, &ctx, 2, 2);
        let (m, n) = p.bidegree();
        let py = p.partial_y();
        let t = rng.gen_range(2..40u64);
        let (a, b, c) = (rng.gen_range(0..5u64), rng.gen_range(0..4u64), rng.gen_range(0..4u64));
        let pts = smooth_points(&ctx, &p, 2);
        for k in 0..6u32 {
            let r = operator_factor(&p, t, k, a, b, c).unwrap();
            let (rx, ry) = r.bidegree();
            assert!(rx <= 4 * k * m && ry <= 4 * k * n, "k={k} deg {:?}", r.bidegree());
            for &(x0, y0) in &pts {
                let len = k as usize + 1;
                let y = branch(&ctx, &p, x0, y0, len);
                let mut xs = vec![0; len];
                xs[0] = x0;
                if len > 1 {
                    xs[1] = 1;
                }
                let psi = smul(&ctx, &spow(&ctx, &xs, a + b * t), &spow(&ctx, &y, c * t));
                let mut fact = 1;
                for i in 1..=k as u64 {
                    fact = ctx.mul(fact, i);
                }
                let mono = ctx.mul(ctx.pow(x0, a + b * t), ctx.pow(y0, c * t));
                let lhs = ctx.mul(r.eval(x0, y0), mono);
                let rhs = if k == 0 {
                    psi[0]
                } else {
                    let s = ctx.mul(ctx.pow(py.eval(x0, y0), 2 * k as u64 - 1), ctx.pow(ctx.mul(x0, y0), k as u64));
                    ctx.mul(s, ctx.mul(fact, psi[k as usize]))
                };
                assert_eq!(lhs, rhs, "k={k}");
            }
        }
    }
}

#[test]
fn certificates_are_sound_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut verified = 0;
    for _ in 0..8 {
        let t = [64u64, 125, 216, 343][rng.gen_range(0..4)];
        let p = next_prime_congruent_one(t * rng.gen_range(2..40), t);
        let ctx = FieldCtx::new(p).unwrap();
        let poly = loop {
            let q = random_poly(&mut rng, &ctx, 1, 1);
            if q.bidegree() == (1, 1) && q.coeff(0, 0) != 0 && q.coeff(1, 0) != 0 {
                break q;
            }
        };
        let sub = subgroup_of_order(&ctx, t).unwrap();
        let c1 = sub.coset(rng.gen_range(1..p)).unwrap();
        let c2 = sub.coset(rng.gen_range(1..p)).unwrap();
        let (cert, sols) = certify(&poly, &c1, &c2).unwrap();
        assert!(cert.checks.nonzero_lambda && cert.checks.nab_le_t && cert.checks.p00_nonzero);
        if cert.checks.all_pass() {
            verified += 1;
            assert!(cert.bound >= sols.len() as u64, "{} < {}", cert.bound, sols.len());
        }
    }
    assert!(verified >= 6);
}

#[test]
fn perturbed_certificates_are_rejected() {
    let ctx = FieldCtx::new(next_prime_congruent_one(2000, 216)).unwrap();
    let sub = subgroup_of_order(&ctx, 216).unwrap();
    let g = sub.trivial_coset();
    let mu = ctx.sub(sub.gen(), 1);
    let p = parse_poly(&format!("x - y + {mu}"), &ctx).unwrap();
    let cert = construct_certificate(&p, &g, &g).unwrap();
    let sols = count_solutions(&p, &g, &g, Method::RootFind).unwrap();
    assert!(!sols.is_empty());
    assert!(verify_certificate(&cert, &p, &g, &g, &sols.points).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..10 {
        let mut bad = cert.clone();
        let i = rng.gen_range(0..bad.lambda.len());
        bad.lambda[i][3] = ctx.add(bad.lambda[i][3], rng.gen_range(1..ctx.p()));
        assert!(!verify_certificate(&bad, &p, &g, &g, &sols.points).unwrap());
    }
    // a point off the curve is rejected as well
    let (x, y) = sols.points[0];
    assert!(!verify_certificate(&cert, &p, &g, &g, &[(x, ctx.mul(y, sub.gen()))]).unwrap());
}

#[test]
fn certificates_are_deterministic() {
    let ctx = FieldCtx::new(next_prime_congruent_one(5000, 125)).unwrap();
    let sub = subgroup_of_order(&ctx, 125).unwrap();
    let g = sub.trivial_coset();
    let p = parse_poly("2*x + 3*x*y - y + 4", &ctx).unwrap();
    let a = construct_certificate(&p, &g, &g).unwrap().to_toml();
    let b = construct_certificate(&p, &g, &g).unwrap().to_toml();
    assert_eq!(a, b);
    assert_eq!(StepanovCertificate::from_toml(&a).unwrap().to_toml(), a);
}
