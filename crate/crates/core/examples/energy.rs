//! Polynomial and additive energies of subgroups, with their bounds.

use coset_curves::bounds::{bound_corollaries, bound_energy};
use coset_curves::counting::{additive_energy, composed_energy, fiber_histogram, polynomial_energy};
use coset_curves::ffield::subgroup_of_order;
use coset_curves::polyalg::{parse_poly, UniPoly};
use coset_curves::FieldCtx;

pub fn run() -> coset_curves::Result<()> {
    let ctx = FieldCtx::new(7)?;
    let g = subgroup_of_order(&ctx, 3)?;
    let p = parse_poly("x + y", &ctx)?;
    println!("fibers of x + y on {:?}: {:?}", g.elements(), fiber_histogram(&p, &g));
    println!("E^2 = {}", polynomial_energy(&p, &g, 2)?);
    println!("E(G) = {}", additive_energy(&ctx, g.elements(), g.elements()));

    let ctx = FieldCtx::new(1201)?;
    let g = subgroup_of_order(&ctx, 100)?;
    let p = parse_poly("x^2 + x*y + 3*y", &ctx)?;
    for q in 2..=5 {
        let e = polynomial_energy(&p, &g, q)?;
        let b = bound_energy(2, q, 100, ctx.p())?;
        println!("q={q}: E = {e}, bound {} admits: {}", b.significant(6), b.admits(&e));
    }
    let f = UniPoly::new(&ctx, vec![0, 0, 1]);
    let h = UniPoly::new(&ctx, vec![0, 0, 0, 1]);
    let e = composed_energy(&f, &h, &g)?;
    let (_, c16) = bound_corollaries(2, 3, 100, ctx.p());
    println!("E(f(G), g(G)) = {e} <= {}", c16.significant(6));
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
