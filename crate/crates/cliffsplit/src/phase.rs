//! Exact phases: elements of ℚ/ℤ in lowest terms.
//!
//! A `Phase` stands for the root of unity exp(2πi·num/den). All group-level
//! computations in this crate stay in ℚ/ℤ so that splitting verdicts are
//! exact; floats appear only in the numeric Weyl cross-check.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

/// An element of ℚ/ℤ with `0 <= num < den` and `gcd(num, den) = 1`.
///
/// The additive order of `num/den` is exactly `den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };
    pub const HALF: Phase = Phase { num: 1, den: 2 };

    /// Builds `num/den` reduced mod 1. `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Result<Phase> {
        if den == 0 {
            return Err(Error::validation("phase denominator must be nonzero"));
        }
        Ok(Phase::reduced(num as i128, den as i128))
    }

    fn reduced(num: i128, den: i128) -> Phase {
        debug_assert!(den != 0);
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        Phase {
            num: (num / g) as i64,
            den: (den / g) as i64,
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Additive order in ℚ/ℤ.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `n` times this phase.
    pub fn scaled(&self, n: i64) -> Phase {
        Phase::reduced(self.num as i128 * n as i128, self.den as i128)
    }

    /// The unique odd-order square root: the phase `r` of odd order with
    /// `2r = self`. Errors when the order of `self` is even.
    pub fn half_odd(&self) -> Result<Phase> {
        if self.den % 2 == 0 {
            return Err(Error::precondition(format!(
                "no unique odd square root: {self} has even order {}",
                self.den
            )));
        }
        // inverse of 2 mod q for odd q is (q + 1) / 2
        let inv2 = (self.den + 1) / 2;
        Ok(Phase::reduced(
            self.num as i128 * inv2 as i128,
            self.den as i128,
        ))
    }

    /// `num/(2·den)`: the denominator-doubling half. `2 * halved = self`
    /// exactly, but the result need not have odd order.
    pub fn halved_denominator(&self) -> Phase {
        Phase::reduced(self.num as i128, 2 * self.den as i128)
    }

    /// Numerator when written over the common denominator `den`.
    /// Errors when `self.den` does not divide `den`.
    pub fn numerator_over(&self, den: i64) -> Result<i64> {
        if den <= 0 || den % self.den != 0 {
            return Err(Error::internal(format!(
                "phase {self} not representable over denominator {den}"
            )));
        }
        Ok(self.num * (den / self.den))
    }

    /// Value in [0, 1) as a float (turns, not radians).
    pub fn turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::reduced(
            self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::reduced(-(self.num as i128), self.den as i128)
    }
}

impl Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |acc, p| acc + p)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
