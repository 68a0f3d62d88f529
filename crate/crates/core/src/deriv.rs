//! Difference quotients, sample-point ladders, and interval derivatives
//! with explicit existence verdicts.
//!
//! Limits are operationalized by geometric ladders approaching the point
//! from one side, in two flavors: rational steps and irrational steps
//! (multiples of √2/2). A limit claim is accepted only when every endpoint
//! trace settles and both flavors agree; anything else yields an explicit
//! negative or inconclusive verdict. Verdicts are evidence produced by a
//! finite procedure, not proofs, and the diagnostics say which ladder
//! misbehaved and how.

use std::fmt;

use crate::error::EngineError;
use crate::expr::{Expr, IntervalFunction};
use crate::interval::Interval;
use crate::scalar::Scalar;

/// Which side of the point a ladder approaches from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn direction<S: Scalar>(self) -> S {
        match self {
            Side::Right => S::one(),
            Side::Left => -S::one(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// Rationality class of the ladder steps. With a rational base point the
/// step flavor is also the rationality class of every ladder point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    Rational,
    Irrational,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Rational => write!(f, "rational"),
            Flavor::Irrational => write!(f, "irrational"),
        }
    }
}

/// Outcome of a limit computation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Exists,
    NotExistsDivergent,
    NotExistsOscillating,
    Inconclusive,
}

impl Verdict {
    pub fn exists(self) -> bool {
        self == Verdict::Exists
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Exists => "EXISTS",
            Verdict::NotExistsDivergent => "NOT_EXISTS_DIVERGENT",
            Verdict::NotExistsOscillating => "NOT_EXISTS_OSCILLATING",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Smallest ladder depth the convergence tests can work with.
pub const MIN_DEPTH: usize = 8;
/// Default rung count in exact mode, where traces are often exactly constant.
pub const DEFAULT_DEPTH_EXACT: usize = 12;
/// Default rung count in float mode; geometric halving gives ~12 digits.
pub const DEFAULT_DEPTH_FLOAT: usize = 40;
pub const DEFAULT_TOL_ABS: f64 = 1e-9;
pub const DEFAULT_TOL_REL: f64 = 1e-7;
pub const DEFAULT_DIVERGENCE_BOUND: f64 = 1e12;

/// Parameters of the geometric limit process.
#[derive(Clone, Debug)]
pub struct LadderConfig<S> {
    /// Initial step; must keep `x ± h0` inside the domain.
    pub h0: S,
    /// Geometric shrink factor in (0, 1); rational in exact mode.
    pub ratio: S,
    /// Number of rungs per ladder.
    pub depth: usize,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub divergence_bound: f64,
}

impl<S: Scalar> LadderConfig<S> {
    pub fn new(
        h0: S,
        ratio: S,
        depth: usize,
        tol_abs: f64,
        tol_rel: f64,
        divergence_bound: f64,
    ) -> Result<Self, EngineError> {
        let cfg = LadderConfig { h0, ratio, depth, tol_abs, tol_rel, divergence_bound };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Defaults for a point of a function: `h0` is a quarter of the
    /// distance from `x` to the domain boundary, ratio 1/2, mode-dependent
    /// depth.
    pub fn for_function(fun: &IntervalFunction, x: &S) -> Result<Self, EngineError> {
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
        Self::new(
            h0,
            S::ratio(1, 2),
            depth,
            DEFAULT_TOL_ABS,
            DEFAULT_TOL_REL,
            DEFAULT_DIVERGENCE_BOUND,
        )
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let fail = |msg: String| Err(EngineError::Config(msg));
        if self.h0.sign() <= 0 {
            return fail(format!("h0 must be positive, got {}", self.h0));
        }
        if self.ratio.sign() <= 0 || self.ratio.clone() >= S::one() {
            return fail(format!("ratio must lie in (0, 1), got {}", self.ratio));
        }
        if self.depth < MIN_DEPTH {
            return fail(format!("depth must be at least {MIN_DEPTH}, got {}", self.depth));
        }
        if self.h0.rationality() == Some(false) || self.ratio.rationality() == Some(false) {
            return fail("h0 and ratio must be rational so ladder flavors are meaningful".into());
        }
        if !(self.tol_abs >= 0.0) || !(self.tol_rel >= 0.0) {
            return fail("tolerances must be nonnegative".into());
        }
        if !(self.divergence_bound > 0.0) {
            return fail("divergence bound must be positive".into());
        }
        Ok(())
    }

    /// Combined absolute/relative tolerance test: the acceptance rule for
    /// all trace and flavor comparisons.
    pub fn agree(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.tol_abs + self.tol_rel * a.abs().max(b.abs())
    }
}

/// Sample points `x ± h0·ratio^k`, k = 0..depth, shrinking toward `x`.
///
/// The irrational flavor scales every step by √2/2, which makes the step —
/// and, for rational `x`, the point itself — irrational. Points outside the
/// optional open domain are dropped; since steps shrink geometrically this
/// only truncates the wide end.
pub fn ladder_points<S: Scalar>(
    x: &S,
    side: Side,
    flavor: Flavor,
    cfg: &LadderConfig<S>,
    omega: Option<(&S, &S)>,
) -> Result<Vec<S>, EngineError> {
    cfg.validate()?;
    let dir: S = side.direction();
    let mut step = match flavor {
        Flavor::Rational => cfg.h0.clone(),
        Flavor::Irrational => cfg.h0.clone() * S::sqrt2() * S::ratio(1, 2),
    };
    let mut points = Vec::with_capacity(cfg.depth);
    for _ in 0..cfg.depth {
        let t = x.clone() + dir.clone() * step.clone();
        let inside = match omega {
            Some((lo, hi)) => t > *lo && t < *hi,
            None => true,
        };
        // `t != x` also guards float steps that underflowed to zero.
        if inside && t != *x {
            points.push(t);
        }
        step = step * cfg.ratio.clone();
    }
    if points.is_empty() {
        return Err(EngineError::EmptyLadder);
    }
    Ok(points)
}

/// `(F(t) ⊖ F(x)) / (t − x)`, exact in exact mode.
pub fn difference_quotient<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    t: &S,
) -> Result<Interval<S>, EngineError> {
    if t == x {
        return Err(EngineError::CoincidentPoints { x: x.to_string() });
    }
    let ft = fun.eval_interval(t)?;
    let fx = fun.eval_interval(x)?;
    let dt = t.clone() - x.clone();
    Ok(ft.markov_diff(&fx).scale_div(&dt)?)
}

/// One quotient ladder: the sampled points and the quotient at each.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientTrace<S> {
    pub side: Side,
    pub flavor: Flavor,
    pub samples: Vec<(S, Interval<S>)>,
}

/// Result of an interval-derivative computation.
///
/// `value` is present exactly when `verdict` is `Exists`. `left`/`right`
/// hold whichever one-sided limits individually exist. `ladders` keeps the
/// full quotient traces for reporting, and `notes` a human-readable account
/// of how the verdict was reached.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeResult<S> {
    pub verdict: Verdict,
    pub value: Option<Interval<S>>,
    pub left: Option<Interval<S>>,
    pub right: Option<Interval<S>>,
    pub ladders: Vec<QuotientTrace<S>>,
    pub notes: String,
}

/// A scalar one-sided derivative with its verdict and per-flavor estimates
/// (the last quotient of each ladder, kept even when the limit does not
/// exist — they are the evidence for flavor disagreement).
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarDeriv<S> {
    pub verdict: Verdict,
    pub value: Option<S>,
    pub rational_estimate: Option<f64>,
    pub irrational_estimate: Option<f64>,
}

/// The four one-sided endpoint derivatives `f′₋, f′₊, g′₋, g′₊`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneSidedDerivatives<S> {
    pub f_minus: ScalarDeriv<S>,
    pub f_plus: ScalarDeriv<S>,
    pub g_minus: ScalarDeriv<S>,
    pub g_plus: ScalarDeriv<S>,
}

impl<S> OneSidedDerivatives<S> {
    pub fn all_exist(&self) -> bool {
        self.f_minus.verdict.exists()
            && self.f_plus.verdict.exists()
            && self.g_minus.verdict.exists()
            && self.g_plus.verdict.exists()
    }
}

/// How a single value trace behaved as its ladder descended.
#[derive(Clone, Debug)]
enum Outcome<S> {
    Converged { value: S, exact: bool },
    Divergent,
    Oscillating,
    Inconclusive,
}

impl<S> Outcome<S> {
    fn converged(&self) -> Option<(&S, bool)> {
        match self {
            Outcome::Converged { value, exact } => Some((value, *exact)),
            _ => None,
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            Outcome::Converged { exact: true, .. } => "exactly constant",
            Outcome::Converged { exact: false, .. } => "converged",
            Outcome::Divergent => "diverged",
            Outcome::Oscillating => "oscillated",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

/// Classifies one trace of quotient values.
///
/// In exact mode an exactly constant trace short-circuits to a converged
/// outcome with proof weight (`exact = true`). Otherwise: divergence means
/// the last three magnitudes grow beyond the bound; convergence means the
/// last four rungs agree pairwise within tolerance; a bounded trace whose
/// tail window fails to contract is called oscillating; anything else at
/// depth exhaustion stays inconclusive.
fn analyze_trace<S: Scalar>(vals: &[S], cfg: &LadderConfig<S>) -> Outcome<S> {
    if vals.len() < 4 {
        return Outcome::Inconclusive;
    }
    if S::EXACT && vals.iter().all(|v| v == &vals[0]) {
        return Outcome::Converged { value: vals[0].clone(), exact: true };
    }
    let f: Vec<f64> = vals.iter().map(Scalar::to_f64).collect();
    let n = f.len();

    let tail = &f[n - 3..];
    if tail.iter().all(|v| v.abs() > cfg.divergence_bound)
        && tail[0].abs() < tail[1].abs()
        && tail[1].abs() < tail[2].abs()
    {
        return Outcome::Divergent;
    }

    let window = &f[n - 4..];
    let converged = window
        .iter()
        .enumerate()
        .all(|(i, a)| window[i + 1..].iter().all(|b| cfg.agree(*a, *b)));
    if converged {
        return Outcome::Converged { value: vals[n - 1].clone(), exact: false };
    }

    let bounded = f.iter().all(|v| v.abs() <= cfg.divergence_bound);
    if bounded && n >= 8 {
        let spread = |w: &[f64]| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in w {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
            hi - lo
        };
        let last = spread(&f[n - 4..]);
        let prev = spread(&f[n - 8..n - 4]);
        if last > 0.5 * prev {
            return Outcome::Oscillating;
        }
    }
    Outcome::Inconclusive
}

/// One-sided derivative of a scalar expression at `x`, from both flavor
/// ladders. Exists only when each ladder settles and the two agree.
pub fn one_sided_scalar_derivative<S: Scalar>(
    e: &Expr,
    x: &S,
    side: Side,
    cfg: &LadderConfig<S>,
) -> Result<ScalarDeriv<S>, EngineError> {
    let ex = e.eval(x)?;
    let mut traces: Vec<Vec<S>> = Vec::with_capacity(2);
    for flavor in [Flavor::Rational, Flavor::Irrational] {
        let points = ladder_points(x, side, flavor, cfg, None)?;
        let mut vals = Vec::with_capacity(points.len());
        for t in &points {
            let dt = t.clone() - x.clone();
            let dv = e.eval(t)? - ex.clone();
            vals.push(dv.checked_div(&dt).expect("t != x on a ladder"));
        }
        traces.push(vals);
    }
    let [rational, irrational]: [Vec<S>; 2] = traces.try_into().expect("two flavors");
    Ok(combine_scalar_flavors(&rational, &irrational, cfg))
}

fn combine_scalar_flavors<S: Scalar>(
    rational: &[S],
    irrational: &[S],
    cfg: &LadderConfig<S>,
) -> ScalarDeriv<S> {
    let ra = analyze_trace(rational, cfg);
    let ia = analyze_trace(irrational, cfg);
    let rational_estimate = rational.last().map(Scalar::to_f64);
    let irrational_estimate = irrational.last().map(Scalar::to_f64);
    let (verdict, value) = match (&ra, &ia) {
        (Outcome::Divergent, _) | (_, Outcome::Divergent) => (Verdict::NotExistsDivergent, None),
        (Outcome::Converged { value: rv, exact: re }, Outcome::Converged { value: iv, exact: ie }) => {
            if *re && *ie && rv == iv {
                (Verdict::Exists, Some(rv.clone()))
            } else if cfg.agree(rv.to_f64(), iv.to_f64()) {
                (Verdict::Exists, Some(rv.clone()))
            } else {
                (Verdict::NotExistsOscillating, None)
            }
        }
        (Outcome::Oscillating, _) | (_, Outcome::Oscillating) => {
            (Verdict::NotExistsOscillating, None)
        }
        _ => (Verdict::Inconclusive, None),
    };
    ScalarDeriv { verdict, value, rational_estimate, irrational_estimate }
}

/// One-sided interval derivative `∂F₊(x)` or `∂F₋(x)`: the limit of the
/// difference quotient over the side's two flavor ladders.
pub fn one_sided_markov_derivative<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    side: Side,
    cfg: &LadderConfig<S>,
) -> Result<DerivativeResult<S>, EngineError> {
    let omega = fun.omega_as::<S>();
    let mut ladders = Vec::with_capacity(2);
    let mut outcomes: Vec<[Outcome<S>; 2]> = Vec::with_capacity(2);
    for flavor in [Flavor::Rational, Flavor::Irrational] {
        let points = ladder_points(x, side, flavor, cfg, Some((&omega.0, &omega.1)))?;
        let mut samples = Vec::with_capacity(points.len());
        for t in points {
            let q = difference_quotient(fun, x, &t)?;
            samples.push((t, q));
        }
        let lo_vals: Vec<S> = samples.iter().map(|(_, q)| q.lo().clone()).collect();
        let hi_vals: Vec<S> = samples.iter().map(|(_, q)| q.hi().clone()).collect();
        outcomes.push([analyze_trace(&lo_vals, cfg), analyze_trace(&hi_vals, cfg)]);
        ladders.push(QuotientTrace { side, flavor, samples });
    }

    let mut notes = Vec::new();
    for (i, flavor) in [Flavor::Rational, Flavor::Irrational].iter().enumerate() {
        notes.push(format!(
            "{side} {flavor} ladder: lo {}, hi {}",
            outcomes[i][0].describe(),
            outcomes[i][1].describe()
        ));
    }

    let divergent = outcomes
        .iter()
        .flatten()
        .any(|o| matches!(o, Outcome::Divergent));
    let oscillating = outcomes
        .iter()
        .flatten()
        .any(|o| matches!(o, Outcome::Oscillating));

    let (verdict, value) = if divergent {
        (Verdict::NotExistsDivergent, None)
    } else if let (Some((rlo, rlo_e)), Some((rhi, rhi_e)), Some((ilo, ilo_e)), Some((ihi, ihi_e))) = (
        outcomes[0][0].converged(),
        outcomes[0][1].converged(),
        outcomes[1][0].converged(),
        outcomes[1][1].converged(),
    ) {
        let all_exact = rlo_e && rhi_e && ilo_e && ihi_e;
        let flavors_match = if all_exact && rlo == ilo && rhi == ihi {
            true
        } else {
            cfg.agree(rlo.to_f64(), ilo.to_f64()) && cfg.agree(rhi.to_f64(), ihi.to_f64())
        };
        if flavors_match {
            let value = Interval::new(rlo.clone(), rhi.clone())?;
            (Verdict::Exists, Some(value))
        } else {
            notes.push(format!(
                "flavor ladders disagree: rational → [{rlo}, {rhi}], irrational → [{ilo}, {ihi}]"
            ));
            (Verdict::NotExistsOscillating, None)
        }
    } else if oscillating {
        (Verdict::NotExistsOscillating, None)
    } else {
        (Verdict::Inconclusive, None)
    };

    let (left, right) = match side {
        Side::Left => (value.clone(), None),
        Side::Right => (None, value.clone()),
    };
    Ok(DerivativeResult {
        verdict,
        value,
        left,
        right,
        ladders,
        notes: notes.join("; "),
    })
}

/// The interval derivative `∂F(x)`: exists when both one-sided derivatives
/// exist and coincide (exactly, or within tolerance).
pub fn markov_derivative<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    cfg: &LadderConfig<S>,
) -> Result<DerivativeResult<S>, EngineError> {
    let l = one_sided_markov_derivative(fun, x, Side::Left, cfg)?;
    let r = one_sided_markov_derivative(fun, x, Side::Right, cfg)?;

    let mut notes = Vec::new();
    if !l.notes.is_empty() {
        notes.push(l.notes.clone());
    }
    if !r.notes.is_empty() {
        notes.push(r.notes.clone());
    }

    let divergent = l.verdict == Verdict::NotExistsDivergent || r.verdict == Verdict::NotExistsDivergent;
    let oscillating =
        l.verdict == Verdict::NotExistsOscillating || r.verdict == Verdict::NotExistsOscillating;

    let (verdict, value) = if divergent {
        (Verdict::NotExistsDivergent, None)
    } else if let (Some(lv), Some(rv)) = (&l.value, &r.value) {
        let sides_match = lv == rv || {
            let scale = [lv.lo(), lv.hi(), rv.lo(), rv.hi()]
                .iter()
                .map(|s| s.to_f64().abs())
                .fold(0.0f64, f64::max);
            lv.dist_f64(rv) <= cfg.tol_abs + cfg.tol_rel * scale
        };
        if sides_match {
            (Verdict::Exists, Some(rv.clone()))
        } else {
            notes.push(format!("one-sided derivatives disagree: left {lv}, right {rv}"));
            (Verdict::NotExistsOscillating, None)
        }
    } else if oscillating {
        (Verdict::NotExistsOscillating, None)
    } else {
        (Verdict::Inconclusive, None)
    };

    let mut ladders = l.ladders;
    ladders.extend(r.ladders);
    Ok(DerivativeResult {
        verdict,
        value,
        left: l.value,
        right: r.value,
        ladders,
        notes: notes.join("; "),
    })
}

/// All four one-sided endpoint derivatives of `F = [f, g]` at `x`.
pub fn one_sided_all<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    cfg: &LadderConfig<S>,
) -> Result<OneSidedDerivatives<S>, EngineError> {
    Ok(OneSidedDerivatives {
        f_minus: one_sided_scalar_derivative(fun.f(), x, Side::Left, cfg)?,
        f_plus: one_sided_scalar_derivative(fun.f(), x, Side::Right, cfg)?,
        g_minus: one_sided_scalar_derivative(fun.g(), x, Side::Left, cfg)?,
        g_plus: one_sided_scalar_derivative(fun.g(), x, Side::Right, cfg)?,
    })
}
