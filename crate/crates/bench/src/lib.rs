//! Fixed benchmark inputs shared by the criterion benches.

use nnirank2_core::instancegen::{gen_bt, gen_product_with, instance_rng, DiscreteGaussian};
use nnirank2_core::IntMatrix;

pub const BENCH_SEED: u64 = 0x6e6e_6972;

pub fn beasley() -> IntMatrix {
    IntMatrix::from_rows(&[vec![2, 0, 3], vec![1, 1, 4], vec![1, 3, 9]]).expect("static matrix")
}

pub fn bt(t: i64) -> IntMatrix {
    gen_bt(t).expect("t >= 1")
}

/// `count` seeded `n x n` product instances.
pub fn products(n: usize, sigma: f64, count: usize) -> Vec<IntMatrix> {
    let g = DiscreteGaussian::new(sigma).expect("positive sigma");
    (0..count as u64)
        .map(|i| gen_product_with(n, n, &g, &mut instance_rng(BENCH_SEED, i)).expect("valid size").a)
        .collect()
}
