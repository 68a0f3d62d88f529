//! The scalar abstraction the whole crate is generic over.
//!
//! Two instantiations are provided: [`QuadNum`] for exact mode and `f64`
//! for float mode. Everything downstream (intervals, expression evaluation,
//! ladders, classification) is written once against [`Scalar`].

use std::fmt;

use num::Signed;

use crate::error::ScalarError;
use crate::quad::QuadNum;

/// Numeric requirements for interval endpoints and sample points.
///
/// `Signed` (from num-traits) brings the ring operations, zero/one and
/// absolute value; the rest is what the derivative machinery needs on top:
/// conversion from exact literals, a float projection for tolerance tests,
/// and a rationality classification for Dirichlet-style functions.
pub trait Scalar:
    Signed + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// True when arithmetic is exact and equality tests carry proof weight.
    const EXACT: bool;

    /// Injects an exact literal. Rounds in float mode.
    fn from_quad(q: &QuadNum) -> Self;

    fn from_int(n: i64) -> Self;

    /// `num/den` with `den != 0` (caller contract; panics otherwise).
    fn ratio(num: i64, den: i64) -> Self;

    fn sqrt2() -> Self;

    fn to_f64(&self) -> f64;

    /// `Some(true)` for provably rational, `Some(false)` for provably
    /// irrational, `None` when the representation cannot decide.
    fn rationality(&self) -> Option<bool>;

    /// False for float infinities/NaN; always true in exact mode.
    fn is_finite_value(&self) -> bool;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.clone() / rhs.clone())
        }
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Scalar for QuadNum {
    const EXACT: bool = true;

    fn from_quad(q: &QuadNum) -> Self {
        q.clone()
    }
    fn from_int(n: i64) -> Self {
        QuadNum::from_int(n)
    }
    fn ratio(num: i64, den: i64) -> Self {
        QuadNum::from_ratio(num, den).expect("nonzero denominator")
    }
    fn sqrt2() -> Self {
        QuadNum::sqrt2()
    }
    fn to_f64(&self) -> f64 {
        QuadNum::to_f64(self)
    }
    fn rationality(&self) -> Option<bool> {
        Some(self.is_rational())
    }
    fn is_finite_value(&self) -> bool {
        true
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        QuadNum::checked_div(self, rhs)
    }
    fn sign(&self) -> i8 {
        QuadNum::sign(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_quad(q: &QuadNum) -> Self {
        q.to_f64()
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "nonzero denominator");
        num as f64 / den as f64
    }
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    /// Every float is a dyadic rational, so the answer would be a vacuous
    /// `true`; the honest answer for a sample point meant to stand in for a
    /// real number is "cannot decide".
    fn rationality(&self) -> Option<bool> {
        None
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

/// Minimum of two scalars. Panics on unordered values (float NaN), which
/// the evaluation layer rules out via finiteness checks.
pub fn min_pair<S: Scalar>(a: S, b: S) -> S {
    if b < a {
        b
    } else {
        a
    }
}

/// Maximum of two scalars; same contract as [`min_pair`].
pub fn max_pair<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    #[test]
    fn f64_scalar_basics() {
        assert_eq!(f64::ratio(1, 2), 0.5);
        assert_eq!(f64::from_quad(&QuadNum::sqrt2()), std::f64::consts::SQRT_2);
        assert_eq!(1.0f64.rationality(), None);
        assert!(!(f64::INFINITY).is_finite_value());
    }

    #[test]
    fn quad_scalar_basics() {
        assert_eq!(QuadNum::ratio(1, 2), QuadNum::from_ratio(1, 2).unwrap());
        assert_eq!(QuadNum::sqrt2().rationality(), Some(false));
        assert_eq!(QuadNum::from_int(3).rationality(), Some(true));
        assert_eq!(Scalar::sign(&QuadNum::from_int(-3)), -1);
    }

    #[test]
    fn min_max_pairs() {
        assert_eq!(min_pair(2.0, 1.0), 1.0);
        assert_eq!(max_pair(QuadNum::one(), QuadNum::sqrt2()), QuadNum::sqrt2());
    }
}
