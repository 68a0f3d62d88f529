//! Expression ASTs for endpoint functions, their exact evaluator, and the
//! definition of an interval function `F(t) = [f(t), g(t)]` on a domain Ω.
//!
//! Constants are stored exactly (as Q(√2) literals) regardless of the
//! evaluation mode; [`Expr::eval`] is generic over the scalar type, so one
//! parsed AST serves both exact and float evaluation. Piecewise expressions
//! carry a mandatory else-branch, which makes them total by construction.

mod parse;

pub use parse::{parse_expr, parse_function_def, parse_scalar};

use std::fmt;

use num::{One, Signed, Zero};

use crate::error::EvalError;
use crate::interval::Interval;
use crate::quad::QuadNum;
use crate::scalar::{max_pair, min_pair, Scalar};

/// Expression over the single variable `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Const(QuadNum),
    Var,
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    /// Power with a nonnegative integer exponent.
    Pow(Box<Expr>, u32),
    /// Guarded branches tried in order, then the mandatory else-branch.
    Piecewise(Vec<(Predicate, Expr)>, Box<Expr>),
}

/// Branch guard, decidable exactly at every Q(√2) point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Predicate {
    /// `t < c`
    Lt(QuadNum),
    /// `t <= c`
    Le(QuadNum),
    /// `t > c`
    Gt(QuadNum),
    /// `t >= c`
    Ge(QuadNum),
    /// `rational(t)`
    Rational,
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

impl Expr {
    pub fn var() -> Self {
        Expr::Var
    }
    pub fn constant(q: QuadNum) -> Self {
        Expr::Const(q)
    }
    pub fn int(n: i64) -> Self {
        Expr::Const(QuadNum::from_int(n))
    }
    pub fn ratio(num: i64, den: i64) -> Self {
        Expr::Const(QuadNum::ratio(num, den))
    }
    pub fn neg(self) -> Self {
        Expr::Neg(Box::new(self))
    }
    pub fn abs(self) -> Self {
        Expr::Abs(Box::new(self))
    }
    pub fn add(self, rhs: Self) -> Self {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
    pub fn sub(self, rhs: Self) -> Self {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
    pub fn mul(self, rhs: Self) -> Self {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
    pub fn div(self, rhs: Self) -> Self {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
    pub fn min(self, rhs: Self) -> Self {
        Expr::Min(Box::new(self), Box::new(rhs))
    }
    pub fn max(self, rhs: Self) -> Self {
        Expr::Max(Box::new(self), Box::new(rhs))
    }
    pub fn pow(self, n: u32) -> Self {
        Expr::Pow(Box::new(self), n)
    }
    pub fn piecewise(branches: Vec<(Predicate, Expr)>, otherwise: Expr) -> Self {
        Expr::Piecewise(branches, Box::new(otherwise))
    }

    /// `c₀ + c₁·t + c₂·t² + …` via Horner's scheme.
    pub fn polynomial(coeffs: &[QuadNum]) -> Self {
        let mut acc = Expr::Const(coeffs.last().cloned().unwrap_or_else(QuadNum::zero));
        for c in coeffs.iter().rev().skip(1) {
            acc = acc.mul(Expr::Var).add(Expr::Const(c.clone()));
        }
        acc
    }

    /// Evaluates at `t`, exactly when `S` is exact.
    ///
    /// Division checks its divisor and reports the offending subexpression;
    /// in float mode every intermediate value is checked for finiteness.
    pub fn eval<S: Scalar>(&self, t: &S) -> Result<S, EvalError> {
        let v = match self {
            Expr::Const(q) => S::from_quad(q),
            Expr::Var => t.clone(),
            Expr::Neg(e) => -e.eval(t)?,
            Expr::Abs(e) => e.eval(t)?.abs(),
            Expr::Add(l, r) => l.eval(t)? + r.eval(t)?,
            Expr::Sub(l, r) => l.eval(t)? - r.eval(t)?,
            Expr::Mul(l, r) => l.eval(t)? * r.eval(t)?,
            Expr::Div(l, r) => {
                let d = r.eval(t)?;
                if d.is_zero() {
                    return Err(EvalError::DivisionByZero {
                        expr: r.to_string(),
                        t: t.to_string(),
                    });
                }
                l.eval(t)? / d
            }
            Expr::Min(l, r) => min_pair(l.eval(t)?, r.eval(t)?),
            Expr::Max(l, r) => max_pair(l.eval(t)?, r.eval(t)?),
            Expr::Pow(e, n) => num::pow::pow(e.eval(t)?, *n as usize),
            Expr::Piecewise(branches, otherwise) => {
                let mut chosen = None;
                for (guard, body) in branches {
                    if guard.holds(t)? {
                        chosen = Some(body);
                        break;
                    }
                }
                chosen.unwrap_or(otherwise).eval(t)?
            }
        };
        if !v.is_finite_value() {
            return Err(EvalError::NonFinite {
                expr: self.to_string(),
                t: t.to_string(),
            });
        }
        Ok(v)
    }

    /// The expression with `t` replaced by `−t` (and guards adjusted),
    /// so that `reflect(e)(t) = e(−t)`.
    pub fn reflect(&self) -> Expr {
        match self {
            Expr::Const(q) => Expr::Const(q.clone()),
            Expr::Var => Expr::Neg(Box::new(Expr::Var)),
            Expr::Neg(e) => Expr::Neg(Box::new(e.reflect())),
            Expr::Abs(e) => Expr::Abs(Box::new(e.reflect())),
            Expr::Add(l, r) => l.reflect().add(r.reflect()),
            Expr::Sub(l, r) => l.reflect().sub(r.reflect()),
            Expr::Mul(l, r) => l.reflect().mul(r.reflect()),
            Expr::Div(l, r) => l.reflect().div(r.reflect()),
            Expr::Min(l, r) => l.reflect().min(r.reflect()),
            Expr::Max(l, r) => l.reflect().max(r.reflect()),
            Expr::Pow(e, n) => e.reflect().pow(*n),
            Expr::Piecewise(branches, otherwise) => Expr::Piecewise(
                branches
                    .iter()
                    .map(|(p, e)| (p.reflect(), e.reflect()))
                    .collect(),
                Box::new(otherwise.reflect()),
            ),
        }
    }

    /// True when the expression does not mention `t`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Neg(e) | Expr::Abs(e) | Expr::Pow(e, _) => e.is_constant(),
            Expr::Add(l, r)
            | Expr::Sub(l, r)
            | Expr::Mul(l, r)
            | Expr::Div(l, r)
            | Expr::Min(l, r)
            | Expr::Max(l, r) => l.is_constant() && r.is_constant(),
            // Guards always reference `t`.
            Expr::Piecewise(..) => false,
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(q) => const_prec(q),
            Expr::Var
            | Expr::Abs(_)
            | Expr::Min(..)
            | Expr::Max(..)
            | Expr::Piecewise(..) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.prec();
        if prec < min_prec {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Const(q) => write!(f, "{q}"),
            Expr::Var => write!(f, "t"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 4)
            }
            Expr::Abs(e) => {
                write!(f, "abs(")?;
                e.fmt_prec(f, 0)?;
                write!(f, ")")
            }
            Expr::Add(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                r.fmt_prec(f, 2)
            }
            Expr::Sub(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                r.fmt_prec(f, 2)
            }
            Expr::Mul(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " * ")?;
                r.fmt_prec(f, 3)
            }
            Expr::Div(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " / ")?;
                r.fmt_prec(f, 3)
            }
            Expr::Min(l, r) | Expr::Max(l, r) => {
                let name = if matches!(self, Expr::Min(..)) { "min" } else { "max" };
                write!(f, "{name}(")?;
                l.fmt_prec(f, 0)?;
                write!(f, ", ")?;
                r.fmt_prec(f, 0)?;
                write!(f, ")")
            }
            Expr::Pow(base, n) => {
                base.fmt_prec(f, 5)?;
                write!(f, "^{n}")
            }
            Expr::Piecewise(branches, otherwise) => {
                write!(f, "piecewise(")?;
                for (guard, body) in branches {
                    write!(f, "{guard}: ")?;
                    body.fmt_prec(f, 0)?;
                    write!(f, ", ")?;
                }
                write!(f, "else: ")?;
                otherwise.fmt_prec(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

/// Precedence class of a constant's printed form, so that reprinting embeds
/// it unambiguously: nonnegative integers and bare `sqrt2` are atoms,
/// fractions and `b*sqrt2` products parse at factor level, mixed sums at
/// additive level.
fn const_prec(q: &QuadNum) -> u8 {
    if q.b().is_zero() {
        if q.a().denom().is_one() {
            if q.a().is_negative() {
                3
            } else {
                5
            }
        } else {
            2
        }
    } else if q.a().is_zero() {
        if q.b().is_one() {
            5
        } else {
            2
        }
    } else {
        1
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Predicate {
    pub fn lt(c: QuadNum) -> Self {
        Predicate::Lt(c)
    }
    pub fn le(c: QuadNum) -> Self {
        Predicate::Le(c)
    }
    pub fn gt(c: QuadNum) -> Self {
        Predicate::Gt(c)
    }
    pub fn ge(c: QuadNum) -> Self {
        Predicate::Ge(c)
    }
    pub fn and(self, rhs: Self) -> Self {
        Predicate::And(Box::new(self), Box::new(rhs))
    }
    pub fn or(self, rhs: Self) -> Self {
        Predicate::Or(Box::new(self), Box::new(rhs))
    }

    /// Decides the guard at `t`. `rational(t)` errors when the scalar type
    /// cannot decide rationality (float mode).
    pub fn holds<S: Scalar>(&self, t: &S) -> Result<bool, EvalError> {
        Ok(match self {
            Predicate::Lt(c) => *t < S::from_quad(c),
            Predicate::Le(c) => *t <= S::from_quad(c),
            Predicate::Gt(c) => *t > S::from_quad(c),
            Predicate::Ge(c) => *t >= S::from_quad(c),
            Predicate::Rational => t
                .rationality()
                .ok_or_else(|| EvalError::RationalityUndecidable { t: t.to_string() })?,
            Predicate::And(l, r) => l.holds(t)? && r.holds(t)?,
            Predicate::Or(l, r) => l.holds(t)? || r.holds(t)?,
        })
    }

    /// Guard for the reflected expression: `p.reflect()` holds at `t`
    /// exactly when `p` holds at `−t`.
    pub fn reflect(&self) -> Predicate {
        match self {
            Predicate::Lt(c) => Predicate::Gt(-c),
            Predicate::Le(c) => Predicate::Ge(-c),
            Predicate::Gt(c) => Predicate::Lt(-c),
            Predicate::Ge(c) => Predicate::Le(-c),
            Predicate::Rational => Predicate::Rational,
            Predicate::And(l, r) => l.reflect().and(r.reflect()),
            Predicate::Or(l, r) => l.reflect().or(r.reflect()),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Predicate::Or(..) => 1,
            Predicate::And(..) => 2,
            _ => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.prec();
        if prec < min_prec {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Predicate::Lt(c) => write!(f, "t < {}", ConstArg(c)),
            Predicate::Le(c) => write!(f, "t <= {}", ConstArg(c)),
            Predicate::Gt(c) => write!(f, "t > {}", ConstArg(c)),
            Predicate::Ge(c) => write!(f, "t >= {}", ConstArg(c)),
            Predicate::Rational => write!(f, "rational(t)"),
            Predicate::And(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " and ")?;
                r.fmt_prec(f, 3)
            }
            Predicate::Or(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, " or ")?;
                r.fmt_prec(f, 2)
            }
        }
    }
}

/// Comparison bounds print as full expressions; `and`/`or` are not
/// expression tokens, so no parentheses are ever needed around them.
struct ConstArg<'a>(&'a QuadNum);

impl fmt::Display for ConstArg<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// An interval-valued function: endpoint expressions `f ≤ g` over an open
/// domain `Ω = (lo, hi)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalFunction {
    f: Expr,
    g: Expr,
    omega: (QuadNum, QuadNum),
}

impl IntervalFunction {
    /// Requires `lo < hi`. The endpoint order `f(t) ≤ g(t)` is checked at
    /// every evaluation instead, since it cannot be decided syntactically.
    pub fn new(f: Expr, g: Expr, omega: (QuadNum, QuadNum)) -> Result<Self, EvalError> {
        if omega.0 >= omega.1 {
            return Err(EvalError::IntervalOrder {
                lo: omega.0.to_string(),
                hi: omega.1.to_string(),
            });
        }
        Ok(IntervalFunction { f, g, omega })
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn g(&self) -> &Expr {
        &self.g
    }

    pub fn omega(&self) -> (&QuadNum, &QuadNum) {
        (&self.omega.0, &self.omega.1)
    }

    pub fn omega_as<S: Scalar>(&self) -> (S, S) {
        (S::from_quad(&self.omega.0), S::from_quad(&self.omega.1))
    }

    /// Open-interval membership, in the scalar type's own order.
    pub fn contains<S: Scalar>(&self, t: &S) -> bool {
        let (lo, hi) = self.omega_as::<S>();
        *t > lo && *t < hi
    }

    fn domain_check<S: Scalar>(&self, t: &S) -> Result<(), EvalError> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(EvalError::OutOfDomain {
                t: t.to_string(),
                lo: self.omega.0.to_string(),
                hi: self.omega.1.to_string(),
            })
        }
    }

    /// `(f(t), g(t))` with domain and endpoint-order checks.
    pub fn eval_pair<S: Scalar>(&self, t: &S) -> Result<(S, S), EvalError> {
        self.domain_check(t)?;
        let fv = self.f.eval(t)?;
        let gv = self.g.eval(t)?;
        if fv > gv {
            return Err(EvalError::EndpointOrder {
                t: t.to_string(),
                f: fv.to_string(),
                g: gv.to_string(),
            });
        }
        Ok((fv, gv))
    }

    /// `F(t) = [f(t), g(t)]`.
    pub fn eval_interval<S: Scalar>(&self, t: &S) -> Result<Interval<S>, EvalError> {
        let (fv, gv) = self.eval_pair(t)?;
        Interval::new(fv, gv)
    }

    /// The length `g − f` as an expression (continuity witness material).
    pub fn length_expr(&self) -> Expr {
        self.g.clone().sub(self.f.clone())
    }

    /// `G(t) := F(−t)` with the domain reflected accordingly.
    pub fn reflected(&self) -> IntervalFunction {
        IntervalFunction {
            f: self.f.reflect(),
            g: self.g.reflect(),
            omega: (-&self.omega.1, -&self.omega.0),
        }
    }
}

#[cfg(test)]
mod tests;
