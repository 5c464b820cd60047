//! Deterministic test-vector families for the sampling-based checks.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::rational::{rat_i64, Rational};

/// All basis vectors, all pairwise sums of basis vectors, then `samples`
/// seeded random vectors with integer entries in [-9, 9]. Vectors that come
/// out zero are dropped, so the returned count can undershoot the nominal
/// one; callers report the actual count.
pub fn standard_test_vectors(dim: usize, samples: u32, seed: u64) -> Vec<Vec<Rational>> {
    let mut vectors = Vec::new();
    for i in 0..dim {
        let mut v = vec![Rational::zero(); dim];
        v[i] = rat_i64(1);
        vectors.push(v);
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let mut v = vec![Rational::zero(); dim];
            v[i] = rat_i64(1);
            v[j] = rat_i64(1);
            vectors.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v: Vec<Rational> = (0..dim).map(|_| rat_i64(rng.gen_range(-9..=9))).collect();
        if v.iter().all(Rational::is_zero) {
            continue;
        }
        vectors.push(v);
    }
    vectors
}
