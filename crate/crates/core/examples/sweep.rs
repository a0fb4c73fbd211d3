//! A seeded sweep of random instances written as CSV.

use coset_curves::harness::{from_csv, sweep, to_csv, tripwire, Config, MethodChoice, SweepKind};

pub fn run() -> coset_curves::Result<()> {
    let cfg = Config {
        kind: Some(SweepKind::Count),
        instances: Some(8),
        seed: Some(2024),
        p_max: Some(5000),
        t_max: Some(100),
        method: Some(MethodChoice::Both),
        ..Config::default()
    };
    let records = sweep(&cfg)?;
    let csv = to_csv(&records)?;
    print!("{csv}");
    assert_eq!(from_csv(&csv)?, records);
    println!("violations: {}", tripwire(&records));
    Ok(())
}

#[allow(dead_code)]
fn main() -> coset_curves::Result<()> {
    run()
}
