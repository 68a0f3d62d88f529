//! Intervals and the three operators the derivative calculus rests on:
//! the endpoint min/max difference, the Hausdorff distance, and division
//! by a nonzero scalar.

use std::fmt;

use crate::error::EvalError;
use crate::scalar::{max_pair, min_pair, Scalar};

/// A closed interval `[lo, hi]` with `lo ≤ hi`, over any [`Scalar`].
///
/// Degenerate intervals (`lo = hi`) are first-class: an interval function
/// with equal endpoints reduces to ordinary scalar calculus and must behave
/// identically. Construction with `lo > hi` is a hard error, never a silent
/// reorder, so endpoint-order bugs surface where they happen.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval<S> {
    lo: S,
    hi: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Result<Self, EvalError> {
        // `!(lo <= hi)` also rejects unordered float pairs (NaN).
        if !(lo <= hi) {
            return Err(EvalError::IntervalOrder {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[v, v]`.
    pub fn point(v: S) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    /// Ordered construction from an unordered pair.
    pub fn from_pair(x: S, y: S) -> Self {
        Interval {
            lo: min_pair(x.clone(), y.clone()),
            hi: max_pair(x, y),
        }
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    /// `[min(a̲−b̲, ā−b̄), max(a̲−b̲, ā−b̄)]` — the difference operator the
    /// interval derivative is built on (distinct from both the Minkowski
    /// and the Hukuhara difference).
    pub fn markov_diff(&self, other: &Self) -> Self {
        let d_lo = self.lo.clone() - other.lo.clone();
        let d_hi = self.hi.clone() - other.hi.clone();
        Self::from_pair(d_lo, d_hi)
    }

    /// Hausdorff distance `max(|a̲−b̲|, |ā−b̄|)`.
    pub fn hausdorff_dist(&self, other: &Self) -> S {
        let d_lo = (self.lo.clone() - other.lo.clone()).abs();
        let d_hi = (self.hi.clone() - other.hi.clone()).abs();
        max_pair(d_lo, d_hi)
    }

    /// Divides both endpoints by `s`, swapping them when `s < 0` so the
    /// ordering invariant holds. Errors on `s = 0`.
    pub fn scale_div(&self, s: &S) -> Result<Self, EvalError> {
        let lo = self.lo.checked_div(s)?;
        let hi = self.hi.checked_div(s)?;
        Ok(if s.sign() < 0 {
            Interval { lo: hi, hi: lo }
        } else {
            Interval { lo, hi }
        })
    }

    /// `[−hi, −lo]`.
    pub fn negate(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn width(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }

    /// Hausdorff distance projected to `f64`, for tolerance tests.
    pub fn dist_f64(&self, other: &Self) -> f64 {
        let d_lo = (self.lo.to_f64() - other.lo.to_f64()).abs();
        let d_hi = (self.hi.to_f64() - other.hi.to_f64()).abs();
        d_lo.max(d_hi)
    }

    /// Maps endpoints into another scalar type (e.g. exact → float).
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Interval<T> {
        Interval {
            lo: f(&self.lo),
            hi: f(&self.hi),
        }
    }
}

impl<S: Scalar> fmt::Display for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
