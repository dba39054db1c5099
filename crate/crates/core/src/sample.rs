//! Seeded random parameter points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::num::{Complex, Precision};

pub struct Sampler {
    rng: ChaCha8Rng,
    precision: Precision,
}

impl Sampler {
    pub fn new(seed: u64, precision: Precision) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            precision,
        }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// A point with modulus in `[rmin, rmax)` and argument in `(-amax, amax)`.
    pub fn polar(&mut self, rmin: f64, rmax: f64, amax: f64) -> Complex {
        let r = self.uniform(rmin, rmax);
        let a = self.uniform(-amax, amax);
        Complex::from_f64_parts(r * Float::cos(a), r * Float::sin(a), self.precision)
    }

    /// A deformation parameter with `0.3 <= |q| < 0.6`.
    pub fn q(&mut self) -> Complex {
        self.polar(0.3, 0.6, 0.6)
    }

    /// A generic `u`, away from the resonances `u = q^k`.
    pub fn u(&mut self) -> Complex {
        self.polar(0.35, 0.85, 2.5)
    }

    pub fn s(&mut self) -> Complex {
        self.polar(0.5, 1.5, 3.0)
    }

    /// A small time variable with `rmax / 2 <= |Z| < rmax`.
    pub fn z(&mut self, rmax: f64) -> Complex {
        self.polar(rmax / 2.0, rmax, 1.0)
    }

    /// `(q1, q2)` with `|q2| < 1 < |q1|`.
    pub fn q_pair(&mut self) -> (Complex, Complex) {
        (self.polar(1.3, 2.0, 0.4), self.polar(0.35, 0.6, 0.4))
    }

    /// A nonzero rational with numerator and denominator at most `bound`.
    pub fn rational(&mut self, bound: i64) -> BigRational {
        let n = self.rng.gen_range(1..=bound);
        let d = self.rng.gen_range(1..=bound);
        let n = if self.rng.gen_bool(0.5) { n } else { -n };
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// A positive rational with numerator and denominator at most `bound`.
    pub fn positive_rational(&mut self, bound: i64) -> BigRational {
        let n = self.rng.gen_range(1..=bound);
        let d = self.rng.gen_range(1..=bound);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
}
