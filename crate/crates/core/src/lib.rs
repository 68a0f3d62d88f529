//! Calculus for interval-valued functions `F(t) = [f(t), g(t)]`.
//!
//! The crate provides the endpoint min/max difference, the Hausdorff
//! metric, interval derivatives with one-sided variants and explicit
//! existence verdicts, a classifier for how differentiability arises,
//! and an independent brute-force oracle — all generic over the scalar
//! type. Exact mode runs over Q(√2) so rational/irrational sample points
//! are decidable; float mode runs over `f64`.

pub mod classify;
pub mod deriv;
pub mod error;
pub mod expr;
pub mod families;
pub mod interval;
pub mod oracle;
pub mod quad;
pub mod report;
pub mod scalar;

pub use classify::{
    check_dpm, check_linear_relation, classify, verify_corollary_ufa, verify_theorem2, Case,
    ClassificationReport, ContinuityWitness, LinearRelationWitness, DEFAULT_EQ_TOL,
};
pub use deriv::{
    difference_quotient, ladder_points, markov_derivative, one_sided_all,
    one_sided_markov_derivative, one_sided_scalar_derivative, DerivativeResult, Flavor,
    LadderConfig, OneSidedDerivatives, QuotientTrace, ScalarDeriv, Side, Verdict,
};
pub use error::{EngineError, EvalError, ParseError, ParseErrorKind, ScalarError};
pub use expr::{parse_expr, parse_function_def, parse_scalar, Expr, IntervalFunction, Predicate};
pub use interval::Interval;
pub use oracle::{brute_quotient_scan, central_difference, scan_to_csv};
pub use quad::{QuadNum, Rational};
pub use report::{derivative_report, to_json_string, DerivativeReport};
pub use scalar::Scalar;

/// Interval with exact Q(√2) endpoints (exact mode).
pub type ExactInterval = Interval<QuadNum>;
/// Interval with `f64` endpoints (float mode).
pub type FloatInterval = Interval<f64>;
