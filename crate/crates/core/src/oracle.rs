//! Independent brute-force reference for derivative results.
//!
//! Deliberately reimplements quotient evaluation from the expression level:
//! each quotient here is `[min(Δf/Δt, Δg/Δt), max(Δf/Δt, Δg/Δt)]`, built
//! from the two scalar difference quotients, whereas the engine divides the
//! interval difference. The routes agree algebraically, so a bug in the
//! engine's interval plumbing cannot validate itself. Used by tests and the
//! CLI's verify mode only; no attention is paid to speed.

use num::pow::pow;

use crate::error::EngineError;
use crate::expr::{Expr, IntervalFunction};
use crate::interval::Interval;
use crate::quad::QuadNum;
use crate::scalar::Scalar;

use crate::deriv::{DEFAULT_DEPTH_EXACT, DEFAULT_DEPTH_FLOAT};

/// Dense quotient scan around `x`: `n` rational and `n` irrational points
/// per side (4n total), log-spaced in step size from a quarter of the
/// boundary distance down to at least `(1/2)^depth` of it, where `depth`
/// is the mode's default ladder depth. Quotients are exact in exact mode.
pub fn brute_quotient_scan<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    n: usize,
) -> Result<Vec<(S, Interval<S>)>, EngineError> {
    if n < 16 {
        return Err(EngineError::Config(format!(
            "scan needs at least 16 points per flavor and side, got {n}"
        )));
    }
    let (lo, hi) = fun.omega_as::<S>();
    if !(*x > lo && *x < hi) {
        return Err(EngineError::NotInterior {
            x: x.to_string(),
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let to_lo = x.clone() - lo;
    let to_hi = hi - x.clone();
    let dist = if to_lo < to_hi { to_lo } else { to_hi };
    let h0 = dist * S::ratio(1, 4);

    let depth = if S::EXACT { DEFAULT_DEPTH_EXACT } else { DEFAULT_DEPTH_FLOAT };
    let deepest = depth.max(n - 1);

    let fx = fun.f().eval(x)?;
    let gx = fun.g().eval(x)?;

    let mut out = Vec::with_capacity(4 * n);
    for negative in [false, true] {
        for irrational in [false, true] {
            for j in 0..n {
                // Integer exponents spread uniformly over [0, deepest];
                // spacing >= 1 keeps them (and the points) distinct.
                let exponent = (j * deepest + (n - 1) / 2) / (n - 1);
                let mut step = h0.clone() * pow(S::ratio(1, 2), exponent);
                if irrational {
                    step = step * S::sqrt2() * S::ratio(1, 2);
                }
                if negative {
                    step = -step;
                }
                let t = x.clone() + step;
                let dt = t.clone() - x.clone();
                let df = (fun.f().eval(&t)? - fx.clone()).checked_div(&dt)?;
                let dg = (fun.g().eval(&t)? - gx.clone()).checked_div(&dt)?;
                out.push((t, Interval::from_pair(df, dg)));
            }
        }
    }
    Ok(out)
}

/// Central difference `(e(x+h) − e(x−h)) / (2h)`, evaluated exactly and
/// only then rounded to `f64`. Small `h` costs nothing in exact arithmetic,
/// so truncation error can be driven far below any test tolerance.
pub fn central_difference(e: &Expr, x: &QuadNum, h: &QuadNum) -> Result<f64, EngineError> {
    if h.sign() <= 0 {
        return Err(EngineError::Config(format!("step must be positive, got {h}")));
    }
    let plus = e.eval(&(x + h))?;
    let minus = e.eval(&(x - h))?;
    let two_h = QuadNum::from_int(2) * h;
    Ok((plus - minus).checked_div(&two_h)?.to_f64())
}

/// Renders a scan as CSV with both float and exact columns.
pub fn scan_to_csv<S: Scalar>(rows: &[(S, Interval<S>)]) -> String {
    let mut out = String::from("t_float,lo_float,hi_float,t_exact,lo_exact,hi_exact\n");
    for (t, q) in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            t.to_f64(),
            q.lo().to_f64(),
            q.hi().to_f64(),
            t,
            q.lo(),
            q.hi()
        ));
    }
    out
}
