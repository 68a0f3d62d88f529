//! Named interval-function families used by demos, tests and docs.
//!
//! Each family is defined by its textual source, so constructing one also
//! exercises the parser end to end.

use crate::expr::{parse_function_def, Expr, IntervalFunction, Predicate};
use crate::quad::QuadNum;

/// Dirichlet-style pair on (−1, 1): `f` is `t` on rationals and `0` off
/// them, `g` is `1` on rationals and `t + 1` off them. The interval
/// derivative at 0 exists (it is [0, 1]) although none of the one-sided
/// endpoint derivatives do.
pub const DIRICHLET_SRC: &str = "\
# Rational/irrational split on (-1, 1)
f = piecewise(rational(t): t, else: 0)
g = piecewise(rational(t): 1, else: t + 1)
omega = (-1, 1)
";

/// `[−|t|, |t|]` on (−1, 1): crossed one-sided slopes, derivative [−1, 1].
pub const ABS_PAIR_SRC: &str = "\
f = -abs(t)
g = abs(t)
omega = (-1, 1)
";

/// `[t, t² + 1]` on (−1, 1): both endpoints smooth, derivative [0, 1] at 0.
pub const SMOOTH_PAIR_SRC: &str = "\
f = t
g = t^2 + 1
omega = (-1, 1)
";

/// `[t, t + 1]` on (−1, 1): affine endpoints, derivative [1, 1] everywhere.
pub const AFFINE_PAIR_SRC: &str = "\
f = t
g = t + 1
omega = (-1, 1)
";

/// Unit jump at 0 with constant width 1: `f` jumps from 0 to 1 across 0,
/// `g = f + 1`. No derivative exists at 0 (the quotient blows up like 1/t).
pub const UNIT_JUMP_SRC: &str = "\
f = piecewise(t > 0: 1, else: 0)
g = piecewise(t > 0: 2, else: 1)
omega = (-1, 1)
";

pub fn dirichlet_pair() -> IntervalFunction {
    parse_function_def(DIRICHLET_SRC).expect("built-in family parses")
}

pub fn abs_pair() -> IntervalFunction {
    parse_function_def(ABS_PAIR_SRC).expect("built-in family parses")
}

pub fn smooth_pair() -> IntervalFunction {
    parse_function_def(SMOOTH_PAIR_SRC).expect("built-in family parses")
}

pub fn affine_pair() -> IntervalFunction {
    parse_function_def(AFFINE_PAIR_SRC).expect("built-in family parses")
}

pub fn unit_jump() -> IntervalFunction {
    parse_function_def(UNIT_JUMP_SRC).expect("built-in family parses")
}

/// Jump of height `c` at 0 in `f`, with `g = f + 1`.
pub fn jump_pair(c: QuadNum) -> IntervalFunction {
    let step = Expr::piecewise(
        vec![(Predicate::Gt(QuadNum::from_int(0)), Expr::constant(c))],
        Expr::int(0),
    );
    let g = step.clone().add(Expr::int(1));
    IntervalFunction::new(step, g, (QuadNum::from_int(-1), QuadNum::from_int(1)))
        .expect("valid domain")
}
