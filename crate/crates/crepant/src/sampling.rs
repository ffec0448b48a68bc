//! Seeded random rational samples for the numeric oracles.
//!
//! Oracle comparisons evaluate symbolic identities at rational points. The
//! points are small fractions drawn from a seeded generator so failures
//! reproduce exactly, with rejection to keep the values pairwise distinct and
//! nonzero (coincident values hit the poles of the moment formula).

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A deterministic stream of small rational samples.
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// One small nonzero rational with numerator in `-9..=9` and denominator
    /// in `1..=9`.
    fn draw(&mut self) -> BigRational {
        loop {
            let numer: i64 = self.rng.gen_range(-9..=9);
            if numer == 0 {
                continue;
            }
            let denom: i64 = self.rng.gen_range(1..=9);
            return BigRational::new(BigInt::from(numer), BigInt::from(denom));
        }
    }

    /// `count` pairwise distinct nonzero rationals.
    pub fn distinct(&mut self, count: usize) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = Vec::with_capacity(count);
        while out.len() < count {
            let candidate = self.draw();
            if !out.contains(&candidate) {
                out.push(candidate);
            }
        }
        out
    }
}
