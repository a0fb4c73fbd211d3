//! Rank and a kernel vector of a matrix over F_p.

use coset_curves::modlinalg::{nullspace_vector, rank, MatFp};
use coset_curves::FieldCtx;

pub fn run() -> coset_curves::Result<()> {
    let ctx = FieldCtx::new(13)?;
    let m = MatFp::from_rows(&ctx, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 5, 7]])?;
    println!("rank = {}", rank(&m));
    let v = nullspace_vector(&m).expect("more columns than rank");
    println!("kernel vector {v:?}");
    assert!(m.mul_vec(&v).iter().all(|&e| e == 0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
