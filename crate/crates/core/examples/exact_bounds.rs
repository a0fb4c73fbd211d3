//! Bounds with fractional exponents compared exactly by raising to powers.

use coset_curves::bounds::{bound_comparators, bound_th1, bound_thsr, decimal_admits};
use num_bigint::BigUint;

pub fn run() -> coset_curves::Result<()> {
    let p = 1_000_000_007;
    let th1 = bound_th1(1, 1, 1000, p);
    println!("16 mn^2 (m+n) t^(2/3) at t=1000: {} ({}^{} = {})", th1.decimal(5), th1.decimal(0), th1.root, th1.radicand);
    for count in [3199u64, 3200, 3201] {
        let exact = th1.admits_u64(count);
        let dec = decimal_admits(&th1, &BigUint::from(count), 50);
        println!("{count} <= bound: {exact} (decimal agrees: {})", exact == dec);
    }
    let sr = bound_thsr(2, 3, 5000, p);
    println!("averaged bound {} applicable {} {:?}", sr.significant(12), sr.applicable, sr.violated);
    let (hk, cz) = bound_comparators(1, 1, 1000, p, Some(4), true);
    println!("hk {} cz {}", hk.decimal(3), cz.decimal(3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
