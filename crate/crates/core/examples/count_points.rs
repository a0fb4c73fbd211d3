//! Points of P(x, y) = 0 on a coset product, by brute force and by root finding.

use coset_curves::bounds::bound_th1;
use coset_curves::counting::{count_solutions, Method};
use coset_curves::ffield::subgroup_of_order;
use coset_curves::polyalg::parse_poly;
use coset_curves::FieldCtx;

pub fn run() -> coset_curves::Result<()> {
    let ctx = FieldCtx::new(1_003_001)?;
    let sub = subgroup_of_order(&ctx, 1000)?;
    let c1 = sub.trivial_coset();
    let c2 = sub.coset(5)?;
    let p = parse_poly("x^2*y + 3*x - y^2 + 7", &ctx)?;

    let naive = count_solutions(&p, &c1, &c2, Method::Naive)?;
    let fast = count_solutions(&p, &c1, &c2, Method::RootFind)?;
    assert_eq!(naive.points, fast.points);
    println!("{} points, first few {:?}", fast.len(), &fast.points[..fast.len().min(4)]);

    let (m, n) = p.bidegree();
    let b = bound_th1(m as u64, n as u64, sub.t(), ctx.p());
    println!("bound {} (hypotheses hold: {})", b.decimal(3), b.applicable);
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
