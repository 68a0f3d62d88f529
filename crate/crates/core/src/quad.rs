//! Exact arithmetic in the real quadratic field Q(√2).
//!
//! Every value is `a + b·√2` with rational `a`, `b`. The field is closed
//! under `+ − × ÷`, has a decidable total order, and — the point of the
//! exercise — a decidable rationality test (`b = 0`), so sample points can
//! be classified as rational or irrational exactly.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

/// Arbitrary-precision rational, kept reduced with a positive denominator.
pub type Rational = BigRational;

/// An element `a + b·√2` of Q(√2).
///
/// The representation is canonical: `BigRational` stores reduced fractions
/// with positive denominators, and √2 is irrational, so two values are equal
/// iff their coefficient pairs are identical. Equality and hashing are
/// therefore structural. Values are immutable once built and safe to share
/// across threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
}

impl QuadNum {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadNum { a, b }
    }

    /// The rational `r + 0·√2`.
    pub fn rational(r: Rational) -> Self {
        QuadNum { a: r, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a field element. `den` must be nonzero.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::rational(Rational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// The generator √2 itself.
    pub fn sqrt2() -> Self {
        QuadNum { a: Rational::zero(), b: Rational::one() }
    }

    /// Coefficient of 1.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √2.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// True iff the value lies in Q, i.e. the √2 coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Sign of the real value `a + b·√2`: −1, 0 or +1.
    ///
    /// When `a` and `b` have opposite signs the comparison reduces to
    /// `a²` versus `2b²`, decided exactly in integer arithmetic.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (sa, sb) if sa >= 0 && sb >= 0 => 1,
            (sa, sb) if sa <= 0 && sb <= 0 => -1,
            _ => {
                // a, b of opposite sign: a + b√2 > 0 iff |a| side dominates.
                let a2 = &self.a * &self.a;
                let b2 = (&self.b * &self.b) * Rational::from_integer(BigInt::from(2));
                match a2.cmp(&b2) {
                    Ordering::Equal => unreachable!("a^2 = 2 b^2 with a, b nonzero would make sqrt 2 rational"),
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                }
            }
        }
    }

    /// Conjugate `a − b·√2`.
    fn conjugate(&self) -> Self {
        QuadNum { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 2b²`; zero iff the value is zero.
    fn norm(&self) -> Rational {
        &self.a * &self.a - (&self.b * &self.b) * Rational::from_integer(BigInt::from(2))
    }

    /// Exact division. Fails on a zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = rhs.norm();
        let num = self * &rhs.conjugate();
        Ok(QuadNum { a: num.a / &n, b: num.b / &n })
    }

    /// Nearest `f64` to the real value.
    pub fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return ratio_to_f64(&self.a);
        }
        let approx = &self.a + &self.b * sqrt2_approx(self.b.numer().bits().max(self.b.denom().bits()));
        ratio_to_f64(&approx)
    }
}

fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Rational approximation of √2 with error below `2^-(160 + extra_bits)`,
/// by Newton iteration from 3/2. The common case is served by a cached
/// high-precision convergent.
fn sqrt2_approx(extra_bits: u64) -> &'static Rational {
    // Newton on x² = 2 squares the error each step; 10 steps from 3/2
    // give error < 2^-1024, far beyond f64 needs for small coefficients.
    static CACHED: OnceLock<Rational> = OnceLock::new();
    let cached = CACHED.get_or_init(|| newton_sqrt2(10));
    if extra_bits <= 800 {
        cached
    } else {
        // Coefficients this large never occur in practice; recompute lazily.
        static DEEP: OnceLock<Rational> = OnceLock::new();
        DEEP.get_or_init(|| newton_sqrt2(16))
    }
}

fn newton_sqrt2(steps: u32) -> Rational {
    let two = Rational::from_integer(BigInt::from(2));
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut x = Rational::new(BigInt::from(3), BigInt::from(2));
    for _ in 0..steps {
        x = (&x + &two / &x) * &half;
    }
    x
}

/// Round a rational to the nearest `f64` (ties to even), without overflowing
/// intermediate conversions for large numerators or denominators.
pub fn ratio_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let n = r.numer().magnitude().clone();
    let d = r.denom().magnitude().clone();

    // Scale so the integer quotient carries at least 55 significant bits,
    // then do a single round-half-even step down to 53.
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = 56 - (nb - db);
    let (num, den) = if shift >= 0 {
        (n << shift as u64, d)
    } else {
        (n, d << (-shift) as u64)
    };
    let (q, rem) = num::Integer::div_rem(&num, &den);
    let raw = q.to_u64().expect("quotient fits 64 bits by construction");
    let excess = (64 - raw.leading_zeros() as i64) - 53; // ≥ 1 by construction
    debug_assert!(excess >= 1);

    let guard = (raw >> (excess - 1)) & 1;
    let below = raw & ((1u64 << (excess - 1)) - 1);
    let sticky = below != 0 || !rem.is_zero();
    let mut mantissa = raw >> excess;
    let mut exp = -shift + excess;
    if guard == 1 && (sticky || mantissa & 1 == 1) {
        mantissa += 1;
        if mantissa == 1 << 53 {
            mantissa >>= 1;
            exp += 1;
        }
    }

    let magnitude = compose_f64(mantissa, exp);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// `mantissa * 2^exp` for a 53-bit mantissa that has already been rounded.
fn compose_f64(mantissa: u64, exp: i64) -> f64 {
    debug_assert!((1 << 52..1 << 53).contains(&mantissa));
    let value_exp = exp + 52; // value in [2^value_exp, 2^(value_exp+1))
    if value_exp > 1023 {
        f64::INFINITY
    } else if value_exp >= -1022 {
        // Exact bit-level construction; no further rounding.
        let bits = (((value_exp + 1023) as u64) << 52) | (mantissa & ((1 << 52) - 1));
        f64::from_bits(bits)
    } else if value_exp < -1080 {
        0.0
    } else {
        // Subnormal fallback; may double-round in the last ulp, which is
        // far below anything the ladders produce.
        mantissa as f64 * f64::powi(2.0, -600) * f64::powi(2.0, (exp + 600) as i32)
    }
}

impl fmt::Display for QuadNum {
    /// Canonical textual form: `a`, `b*sqrt2`, `sqrt2`, or `a+b*sqrt2`
    /// (with `-` folded into the √2 term when `b < 0`). Rationals print
    /// as `p` or `p/q`. The expression parser reads every form back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rat(r: &Rational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        fn sqrt2_term(b: &Rational) -> String {
            if b.is_one() {
                "sqrt2".to_string()
            } else {
                format!("{}*sqrt2", rat(b))
            }
        }
        if self.b.is_zero() {
            write!(f, "{}", rat(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}", sqrt2_term(&self.b))
        } else if self.b.is_negative() {
            write!(f, "{}-{}", rat(&self.a), sqrt2_term(&-self.b.clone()))
        } else {
            write!(f, "{}+{}", rat(&self.a), sqrt2_term(&self.b))
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadNum({self})")
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self - other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
    };
}

impl Add<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}
forward_binop!(Add, add);

impl Sub<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}
forward_binop!(Sub, sub);

impl Mul<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        // (a₁ + b₁√2)(a₂ + b₂√2) = a₁a₂ + 2b₁b₂ + (a₁b₂ + b₁a₂)√2
        let two = Rational::from_integer(BigInt::from(2));
        QuadNum {
            a: &self.a * &rhs.a + (&self.b * &rhs.b) * &two,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    /// Panics on a zero divisor, like primitive integer division;
    /// use [`QuadNum::checked_div`] for a fallible version.
    fn div(self, rhs: &QuadNum) -> QuadNum {
        self.checked_div(rhs).expect("division by zero")
    }
}
forward_binop!(Div, div);

impl Rem for QuadNum {
    type Output = QuadNum;
    /// Exact field division leaves no remainder.
    fn rem(self, _rhs: QuadNum) -> QuadNum {
        QuadNum::zero()
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a, b: -self.b }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Zero for QuadNum {
    fn zero() -> Self {
        QuadNum { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadNum {
    fn one() -> Self {
        QuadNum { a: Rational::one(), b: Rational::zero() }
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl num::Num for QuadNum {
    type FromStrRadixErr = num::rational::ParseRatioError;

    /// Parses plain rationals (`p` or `p/q`); the full `a+b*sqrt2` form
    /// goes through the expression parser instead.
    fn from_str_radix(src: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        Rational::from_str_radix(src, radix).map(Self::rational)
    }
}

impl Signed for QuadNum {
    fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }
    fn abs_sub(&self, other: &Self) -> Self {
        let d = self - other;
        if d.sign() <= 0 {
            QuadNum::zero()
        } else {
            d
        }
    }
    fn signum(&self) -> Self {
        QuadNum::from_int(self.sign() as i64)
    }
    fn is_positive(&self) -> bool {
        self.sign() > 0
    }
    fn is_negative(&self) -> bool {
        self.sign() < 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> QuadNum {
        QuadNum::from_ratio(num, den).unwrap()
    }

    fn quad(an: i64, ad: i64, bn: i64, bd: i64) -> QuadNum {
        QuadNum::new(
            Rational::new(BigInt::from(an), BigInt::from(ad)),
            Rational::new(BigInt::from(bn), BigInt::from(bd)),
        )
    }

    #[test]
    fn componentwise_addition() {
        assert_eq!(QuadNum::one() + QuadNum::sqrt2(), quad(1, 1, 1, 1));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(QuadNum::sqrt2() * QuadNum::sqrt2(), QuadNum::from_int(2));
    }

    #[test]
    fn conjugate_product_matches_expansion() {
        let p = quad(1, 1, 1, 1);
        let c = quad(1, 1, -1, 1);
        let product = &p * &c;
        assert_eq!(product, QuadNum::from_int(-1));
        // Independent route: a² − 2b² componentwise.
        let a2 = p.a() * p.a();
        let b2 = p.b() * p.b() * Rational::from_integer(BigInt::from(2));
        assert_eq!(product, QuadNum::rational(a2 - b2));
    }

    #[test]
    fn division_verified_by_remultiplication() {
        let r = QuadNum::one().checked_div(&QuadNum::sqrt2()).unwrap();
        assert_eq!(r, quad(0, 1, 1, 2));
        assert_eq!(&r * &QuadNum::sqrt2(), QuadNum::one());

        let r = QuadNum::from_int(2).checked_div(&quad(1, 1, 1, 1)).unwrap();
        assert_eq!(r, quad(-2, 1, 2, 1));
        assert_eq!(&r * &quad(1, 1, 1, 1), QuadNum::from_int(2));
    }

    #[test]
    fn self_division_is_one() {
        for v in [q(3, 7), quad(1, 2, -4, 3), QuadNum::sqrt2(), quad(-5, 1, 1, 1)] {
            assert_eq!(v.checked_div(&v).unwrap(), QuadNum::one());
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            QuadNum::one().checked_div(&QuadNum::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn sign_cases() {
        assert_eq!(QuadNum::zero().sign(), 0);
        // −1 + √2 > 0 because 1 < 2.
        assert_eq!(quad(-1, 1, 1, 1).sign(), 1);
        // 3 − 2√2 > 0 because 9 > 8.
        assert_eq!(quad(3, 1, -2, 1).sign(), 1);
        assert_eq!(quad(-3, 1, 2, 1).sign(), -1);
        assert_eq!(quad(1, 1, -1, 1).sign(), -1);
    }

    #[test]
    fn rationality() {
        assert!(q(3, 7).is_rational());
        assert!(!quad(0, 1, 1, 3).is_rational());
        // The √2 parts cancel under subtraction.
        let d = quad(1, 1, 1, 1) - QuadNum::sqrt2();
        assert!(d.is_rational());
        assert_eq!(d, QuadNum::one());
    }

    #[test]
    fn float_conversion() {
        assert_eq!(QuadNum::zero().to_f64(), 0.0);
        assert_eq!(QuadNum::sqrt2().to_f64(), 1.4142135623730951);
        assert_eq!(q(1, 2).to_f64(), 0.5);
        assert_eq!(q(-7, 4).to_f64(), -1.75);
        // Catastrophic cancellation is handled by the high-precision √2:
        // 665857/470832 − √2 ≈ 1.59e-12.
        let tight = QuadNum::new(
            Rational::new(BigInt::from(665857), BigInt::from(470832)),
            Rational::from_integer(BigInt::from(-1)),
        );
        let v = tight.to_f64();
        assert!((v - 1.5947e-12).abs() < 1e-15, "got {v}");
    }

    #[test]
    fn ratio_to_f64_handles_huge_components() {
        let huge = BigInt::from(10).pow(400u32);
        let r = Rational::new(huge.clone() * 3, huge);
        assert_eq!(ratio_to_f64(&r), 3.0);
        let tiny = Rational::new(BigInt::one(), BigInt::from(10).pow(400u32));
        assert_eq!(ratio_to_f64(&tiny), 0.0);
        let big = Rational::new(BigInt::from(10).pow(400u32), BigInt::one());
        assert_eq!(ratio_to_f64(&big), f64::INFINITY);
    }

    #[test]
    fn ordering_agrees_with_floats() {
        let vals = [
            QuadNum::zero(),
            q(1, 2),
            QuadNum::sqrt2(),
            quad(-1, 1, 1, 1),
            quad(3, 1, -2, 1),
            q(-5, 3),
        ];
        for p in &vals {
            for r in &vals {
                let exact = p.cmp(r);
                let approx = p.to_f64().partial_cmp(&r.to_f64()).unwrap();
                if (p.to_f64() - r.to_f64()).abs() > 1e-9 {
                    assert_eq!(exact, approx, "{p} vs {r}");
                }
            }
        }
    }

    #[test]
    fn display_round_trip_forms() {
        assert_eq!(q(1, 2).to_string(), "1/2");
        assert_eq!(QuadNum::from_int(-3).to_string(), "-3");
        assert_eq!(QuadNum::sqrt2().to_string(), "sqrt2");
        assert_eq!(quad(0, 1, 1, 3).to_string(), "1/3*sqrt2");
        assert_eq!(quad(1, 2, 3, 4).to_string(), "1/2+3/4*sqrt2");
        assert_eq!(quad(1, 2, -3, 4).to_string(), "1/2-3/4*sqrt2");
        assert_eq!(quad(0, 1, -1, 1).to_string(), "-1*sqrt2");
    }
}
