//! Exact arithmetic for biased clause weights.
//!
//! Biasing adds fractional weights of the form 1/2^k. To keep every
//! comparison exact, all weights of a biased instance are stored as
//! arbitrary-precision integers scaled by 2^scale_bits, where `scale_bits`
//! is chosen large enough (2n+1) that every bias is an integer after
//! scaling. No floating point is involved anywhere.

use num_bigint::BigUint;
use num_traits::Zero;
use std::ops::{Add, AddAssign, SubAssign};

/// A nonnegative weight stored as `value · 2^scale_bits`; the scale is owned
/// by the instance, not the weight.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct ExactWeight(BigUint);

impl ExactWeight {
    pub fn zero() -> Self {
        ExactWeight(BigUint::zero())
    }

    /// The integer weight `w`, scaled.
    pub fn from_integer(w: u64, scale_bits: u32) -> Self {
        ExactWeight(BigUint::from(w) << scale_bits)
    }

    /// The fraction 1/2^bit, scaled. Panics if `bit > scale_bits` (the scale
    /// must be able to represent the fraction exactly).
    pub fn fractional_bit(bit: u32, scale_bits: u32) -> Self {
        assert!(bit <= scale_bits, "fraction finer than the scale");
        ExactWeight(BigUint::from(1u32) << (scale_bits - bit))
    }

    pub fn from_scaled(scaled: BigUint) -> Self {
        ExactWeight(scaled)
    }

    pub fn scaled(&self) -> &BigUint {
        &self.0
    }

    /// Exact decimal rendering, e.g. scaled 42 at scale 5 → "1.3125".
    pub fn to_decimal_string(&self, scale_bits: u32) -> String {
        let int = &self.0 >> scale_bits;
        let rem = &self.0 - (&int << scale_bits);
        if rem.is_zero() {
            return int.to_string();
        }
        // rem / 2^s == (rem · 5^s) / 10^s, which is exact.
        let digits = (rem * BigUint::from(5u32).pow(scale_bits)).to_string();
        let padded = format!("{digits:0>width$}", width = scale_bits as usize);
        format!("{int}.{}", padded.trim_end_matches('0'))
    }
}

impl Add for ExactWeight {
    type Output = ExactWeight;
    fn add(self, rhs: ExactWeight) -> ExactWeight {
        ExactWeight(self.0 + rhs.0)
    }
}

impl AddAssign<&ExactWeight> for ExactWeight {
    fn add_assign(&mut self, rhs: &ExactWeight) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactWeight> for ExactWeight {
    fn sub_assign(&mut self, rhs: &ExactWeight) {
        self.0 -= &rhs.0;
    }
}

impl Zero for ExactWeight {
    fn zero() -> Self {
        ExactWeight::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::fmt::Display for ExactWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
