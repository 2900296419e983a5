//! Seeded deterministic RNG.
//!
//! Everything randomized in this crate (equal-degree factorization splits,
//! density sampling) must be reproducible from a seed, so we use a small
//! counter-friendly SplitMix64 instead of an external RNG crate.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// RNG for the `index`-th item of a stream, independent of how the other
    /// items are consumed. Shard-count independence for parallel sampling.
    pub fn for_index(seed: u64, index: u64) -> Self {
        let mut r = SplitMix64::new(seed ^ index.wrapping_mul(0x9e3779b97f4a7c15));
        r.next_u64();
        r
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` (n > 0). Rejection-free modulo is fine at the
    /// tiny ranges used here; the bias is < 2^-32 for n < 2^32.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let a: Vec<u64> = (0..5).map(|i| SplitMix64::for_index(42, i).next_u64()).collect();
        let b: Vec<u64> = (0..5).map(|i| SplitMix64::for_index(42, i).next_u64()).collect();
        assert_eq!(a, b);
        let c: Vec<u64> = (0..5).map(|i| SplitMix64::for_index(43, i).next_u64()).collect();
        assert_ne!(a, c);
    }
}
