//! An auxiliary polynomial vanishing to order D at every point of
//! x - y + mu = 0 on G x G, with |G| = 1000.

use coset_curves::ffield::{next_prime_congruent_one, subgroup_of_order};
use coset_curves::polyalg::parse_poly;
use coset_curves::stepanov::{certify, StepanovCertificate};
use coset_curves::FieldCtx;

pub fn run() -> coset_curves::Result<()> {
    let p = next_prime_congruent_one(1_000_000, 1000);
    let ctx = FieldCtx::new(p)?;
    let sub = subgroup_of_order(&ctx, 1000)?;
    let mu = ctx.sub(sub.gen(), 1);
    let poly = parse_poly(&format!("x - y + {mu}"), &ctx)?;
    let g = sub.trivial_coset();

    let (cert, sols) = certify(&poly, &g, &g)?;
    let pr = &cert.params;
    println!("p={p} A={} B={} C={} D={}", pr.a, pr.b, pr.c, pr.d);
    println!("system {}x{}, {} nonzero coefficients", cert.rows, cert.cols, cert.lambda.len());
    println!("deg Psi = {}, bound {} vs closed form {}", cert.psi_degree, cert.bound, cert.closed_form);
    println!("exact count {}, checks {:?}", sols.len(), cert.checks);

    let back = StepanovCertificate::from_toml(&cert.to_toml())?;
    assert_eq!(back, cert);
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
