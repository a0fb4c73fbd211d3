use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed of instance `index` under `master`: the first word of ChaCha8
/// stream `index`, so instances can be generated in any order.
pub fn instance_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

pub fn instance_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_of_order() {
        let fwd: Vec<u64> = (0..5).map(|i| instance_seed(7, i)).collect();
        let back: Vec<u64> = (0..5).rev().map(|i| instance_seed(7, i)).collect();
        assert_eq!(fwd, back.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(fwd[0], fwd[1]);
    }
}
