//! Parsing, partial derivatives, root finding, resultants and singular points.

use coset_curves::polyalg::{parse_poly, pseudo_rem_y, resultant_y, singular_points, uni_roots, BiPoly};
use coset_curves::FieldCtx;

pub fn run() -> coset_curves::Result<()> {
    let ctx = FieldCtx::new(101)?;
    let p = parse_poly("y^2 - x^3 - x^2", &ctx)?;
    println!("P = {p}, bidegree {:?}", p.bidegree());
    println!("P_x = {}, P_y = {}", p.partial_x(), p.partial_y());

    let f = p.specialize_y(0);
    println!("roots of P(x, 0): {:?}", uni_roots(&f)?);

    let res = resultant_y(&p, &p.partial_y())?;
    println!("Res_y(P, P_y) has degree {:?}", res.degree());
    println!("singular points: {:?}", singular_points(&p)?);

    // y^5 reduced modulo the monic-in-y curve
    let q = BiPoly::monomial(&ctx, 0, 5, 1);
    let r = BiPoly::from_y_coeffs(&ctx, &pseudo_rem_y(&q.y_coeffs(), &p.y_coeffs(), 5));
    println!("y^5 mod P = {r}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
