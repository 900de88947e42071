//! Seeded instance generators, reproducible across platforms.
//!
//! Both generators are driven by SplitMix64, a tiny deterministic PRNG with
//! fixed published constants, so a `(generator, n, parameter, seed)` tuple
//! denotes the same instance everywhere.

use crate::model::CostMatrix;

/// SplitMix64 PRNG (public-domain constants).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next 64 uniformly distributed bits.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` via the widening-multiply method.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

/// Random symmetric matrix with integer costs drawn uniformly from
/// `1..=max_cost`. Entries are drawn row-major over the strict upper
/// triangle, so the instance depends only on `(n, max_cost, seed)`.
pub fn random_matrix(n: usize, max_cost: u64, seed: u64) -> CostMatrix {
    assert!(max_cost > 0, "max_cost must be positive");
    let mut rng = SplitMix64::new(seed);
    let mut values = vec![0.0f64; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let c = (1 + rng.below(max_cost)) as f64;
            values[u * n + v] = c;
            values[v * n + u] = c;
        }
    }
    CostMatrix::from_fn(n, |u, v| values[u * n + v]).expect("generated matrix is valid")
}

/// Random points with integer coordinates in `[0, box_size)²` and
/// ceiled Euclidean costs. Ceiling keeps costs integral while preserving the
/// triangle inequality.
pub fn random_euclidean(n: usize, box_size: u64, seed: u64) -> CostMatrix {
    assert!(box_size > 0, "box_size must be positive");
    let mut rng = SplitMix64::new(seed);
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.below(box_size) as f64, rng.below(box_size) as f64))
        .collect();
    CostMatrix::from_fn(n, |u, v| {
        if u == v {
            0.0
        } else {
            let (dx, dy) = (points[u].0 - points[v].0, points[u].1 - points[v].1);
            (dx * dx + dy * dy).sqrt().ceil()
        }
    })
    .expect("generated matrix is valid")
}
