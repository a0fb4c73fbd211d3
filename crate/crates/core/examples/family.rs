//! Several equations P(x, y) = l_i with l_i in distinct cosets, counted
//! directly and through one rescaled equation per coset.

use coset_curves::bounds::bound_thsr;
use coset_curves::counting::count_family;
use coset_curves::ffield::subgroup_of_order;
use coset_curves::polyalg::parse_poly;
use coset_curves::stepanov::certify_family;
use coset_curves::FieldCtx;

pub fn run() -> coset_curves::Result<()> {
    let ctx = FieldCtx::new(1_003_001)?;
    let sub = subgroup_of_order(&ctx, 1000)?;
    let p = parse_poly("x^2 + 3*x*y + y^2", &ctx)?;
    let ls = [1, ctx.pow(5, 2), ctx.pow(7, 2)];
    let fc = count_family(&p, 1, &ls, &sub)?;
    println!("per equation {:?}, scaled {:?}, total {}", fc.per_equation, fc.scaled, fc.total);
    let b = bound_thsr(2, ls.len() as u64, sub.t(), ctx.p());
    println!("averaged bound {} (applicable {})", b.decimal(3), b.applicable);

    // one auxiliary polynomial for two linear equations
    let lin = parse_poly("x + 2*y", &ctx)?;
    let ls = [1, 3];
    let (cert, points) = certify_family(&lin, 1, &ls, &sub)?;
    println!(
        "family certificate: D={} system {}x{}, bound {} >= {} points, verified {}",
        cert.params.d,
        cert.rows,
        cert.cols,
        cert.bound,
        points.len(),
        cert.checks.point_vanishing_verified
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
