//! Prime field arithmetic, subgroups and cosets.

use coset_curves::ffield::{nth_root, subgroup_of_order, FieldCtx};

pub fn run() -> coset_curves::Result<()> {
    let ctx = FieldCtx::new(1009)?;
    let g = ctx.primitive_root();
    println!("p = {}, primitive root {g}", ctx.p());
    println!("3 * 5^-1 = {}", ctx.mul(3, ctx.inv(5)));
    println!("log_g(123) = {}", ctx.discrete_log(123)?);

    let sq = ctx.mul(77, 77);
    let r = nth_root(&ctx, sq, 2)?.expect("a square has a root");
    assert_eq!(ctx.mul(r, r), sq);
    println!("sqrt({sq}) = {r}");

    let sub = subgroup_of_order(&ctx, 24)?;
    let coset = sub.coset(5)?;
    println!("G of order {} generated by {}, index {}", sub.t(), sub.gen(), sub.index());
    println!("5G contains 5*gen: {}", coset.contains(ctx.mul(5, sub.gen()))?);
    println!("5G contains 1: {}", coset.contains(1)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
