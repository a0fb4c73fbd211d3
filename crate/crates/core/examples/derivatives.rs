//! Implicit derivatives along a curve: y^(k) = q_k / r_k on P = 0.

use coset_curves::polyalg::parse_poly;
use coset_curves::stepanov::{derivative_pairs, operator_factor};
use coset_curves::FieldCtx;

pub fn run() -> coset_curves::Result<()> {
    let ctx = FieldCtx::new(101)?;
    // the graph y = x^4 + 2x: q_k(x, f(x)) is the k-th derivative, r_k = 1
    let p = parse_poly("y - x^4 - 2*x", &ctx)?;
    for d in derivative_pairs(&p, 5)? {
        println!("k={} q={} r={}", d.k, d.q, d.r);
    }

    let circle = parse_poly("x^2 + y^2 - 1", &ctx)?;
    for d in derivative_pairs(&circle, 3)? {
        println!("circle k={} deg q={:?} r={}", d.k, d.q.bidegree(), d.r);
    }

    let u = operator_factor(&circle, 4, 2, 1, 0, 1)?;
    println!("U_2 for x^1 x^4 y^4: {u}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
