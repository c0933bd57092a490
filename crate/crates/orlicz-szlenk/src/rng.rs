//! Seedable, portable random probe generator.
//!
//! SplitMix64: state advances by 0x9E3779B97F4A7C15 per draw, output is
//! the finalizer `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//! z *= 0x94D049BB133111EB; z ^= z >> 31`. Fully specified so that runs
//! are reproducible across implementations; identical seeds give
//! byte-identical probe streams.

use crate::sparse::SparseVector;

#[derive(Debug, Clone)]
pub struct Probe {
    state: u64,
}

impl Probe {
    pub fn new(seed: u64) -> Self {
        Probe { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn uniform_usize(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }

    /// A random sparse vector: support size in `[1, max_support]`,
    /// indices drawn without replacement from `[1, max_index]`, values
    /// uniform in `[-amplitude, amplitude]` (zeros redrawn).
    pub fn sparse_vector(
        &mut self,
        max_support: usize,
        max_index: u64,
        amplitude: f64,
    ) -> SparseVector {
        let support = self.uniform_usize(1, max_support.min(max_index as usize));
        let mut indices = std::collections::BTreeSet::new();
        while indices.len() < support {
            indices.insert(1 + self.next_u64() % max_index);
        }
        let entries = indices
            .into_iter()
            .map(|i| {
                let mut v = 0.0;
                while v == 0.0 {
                    v = self.uniform(-amplitude, amplitude);
                }
                (i, v)
            })
            .collect();
        SparseVector::new(entries).expect("indices are sorted and values nonzero")
    }
}
