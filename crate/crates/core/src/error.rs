//! Error types shared across the crate.

use thiserror::Error;

/// Errors from scalar field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// What went wrong while parsing, and where.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    /// 1-based line of the offending token.
    pub line: usize,
    /// 1-based column of the offending token.
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("malformed number `{0}`")]
    MalformedNumber(String),
    #[error("division by zero in constant expression")]
    ConstantDivisionByZero,
    #[error("piecewise requires a final `else:` branch")]
    MissingElse,
    #[error("comparison bound must be a constant expression")]
    NonConstantBound,
    #[error("missing binding `{0}` in function definition")]
    MissingBinding(&'static str),
    #[error("duplicate binding `{0}`")]
    DuplicateBinding(String),
    #[error("unknown binding `{0}` (expected f, g or omega)")]
    UnknownBinding(String),
    #[error("domain bounds must satisfy lo < hi")]
    EmptyDomain,
}

/// Errors raised while evaluating expressions or interval functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero in `{expr}` at t = {t}")]
    DivisionByZero { expr: String, t: String },
    #[error("rational({t}) is undecidable in float mode; use exact mode")]
    RationalityUndecidable { t: String },
    #[error("`{expr}` is not finite at t = {t}")]
    NonFinite { expr: String, t: String },
    #[error("t = {t} is outside the open domain ({lo}, {hi})")]
    OutOfDomain { t: String, lo: String, hi: String },
    #[error("endpoint order violated at t = {t}: f(t) = {f} > g(t) = {g}")]
    EndpointOrder { t: String, f: String, g: String },
    #[error("interval endpoints out of order: lo = {lo} > hi = {hi}")]
    IntervalOrder { lo: String, hi: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Errors from the derivative engine and the classifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("no ladder point fits inside the domain")]
    EmptyLadder,
    #[error("difference quotient needs t distinct from x (both are {x})")]
    CoincidentPoints { x: String },
    #[error("x = {x} is not interior to the domain ({lo}, {hi})")]
    NotInterior { x: String, lo: String, hi: String },
    #[error("invalid ladder config: {0}")]
    Config(String),
    #[error("one-sided derivative {which} is unavailable (verdict {verdict})")]
    MissingOneSided { which: &'static str, verdict: String },
    #[error("witness `{expr}` is not continuous: {detail}")]
    WitnessNotContinuous { expr: String, detail: String },
    #[error("precondition not met: {0}")]
    Precondition(String),
}

impl From<ScalarError> for EngineError {
    fn from(e: ScalarError) -> Self {
        EngineError::Eval(EvalError::Scalar(e))
    }
}
