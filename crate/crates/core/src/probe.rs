//! Seeded random probes with small integer entries.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, IVec};

pub struct Probe {
    rng: ChaCha8Rng,
}

impl Probe {
    pub fn new(seed: u64) -> Probe {
        Probe { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Integer in `[-3, 3]`.
    pub fn small(&mut self) -> i64 {
        self.rng.gen_range(-3..=3)
    }

    /// Uniform index in `0..len`.
    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// Random combination of `basis` with small coefficients; retries until nonzero when
    /// the basis is nonempty.
    pub fn combination(&mut self, basis: &[IVec]) -> IVec {
        if basis.is_empty() {
            return Vec::new();
        }
        loop {
            let coeffs: IVec = (0..basis.len())
                .filter_map(|j| {
                    let c = self.small();
                    (c != 0).then(|| (j, BigInt::from(c)))
                })
                .collect();
            let v = linalg::combination(basis, &coeffs);
            if !v.is_empty() {
                return v;
            }
        }
    }

    /// Vector of `len` small integers.
    pub fn vector(&mut self, len: usize) -> Vec<i64> {
        (0..len).map(|_| self.small()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Probe::new(7);
        let mut b = Probe::new(7);
        assert_eq!(a.vector(20), b.vector(20));
        assert!(a.vector(50).iter().all(|x| (-3..=3).contains(x)));
    }
}
