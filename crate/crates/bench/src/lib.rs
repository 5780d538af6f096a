//! Fixed inputs shared by the criterion benchmarks.

use qtsp::TspInstance;

/// Seeded symmetric instance with distances in `[1, 10)`.
pub fn fixture(n: usize, seed: u64) -> TspInstance {
    qtsp::random_instance(n, seed, 1.0, 10.0).expect("valid fixture size")
}
