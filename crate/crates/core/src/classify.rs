//! Classifies how differentiability of an interval function arises at a
//! point, using the derivative engine's verdicts.
//!
//! The taxonomy: both endpoint functions differentiable (case A); crossed
//! one-sided slopes `f′₋ = g′₊`, `g′₋ = f′₊` (case B); the derivative
//! exists although one-sided endpoint derivatives do not (case C — the
//! Dirichlet-style construction); or the derivative does not exist at all.
//! Case C is the reason "A or B" cannot be an if-and-only-if
//! characterization, so it is reported with per-flavor evidence.
//!
//! Also here: checkers for the supporting facts — the one-sided min/max
//! formula, the continuity-witness corollary, and the linear-relation
//! hypothesis that restores the only-if direction.

use std::fmt;

use crate::deriv::{
    ladder_points, markov_derivative, one_sided_all, one_sided_markov_derivative,
    one_sided_scalar_derivative, DerivativeResult, Flavor, LadderConfig, OneSidedDerivatives,
    Side, Verdict, MIN_DEPTH,
};
use crate::error::EngineError;
use crate::expr::{Expr, IntervalFunction};
use crate::interval::Interval;
use crate::quad::QuadNum;
use crate::scalar::{max_pair, min_pair, Scalar};

/// Absolute tolerance for the classifier's slope equalities, one order
/// looser than the ladder convergence tolerance.
pub const DEFAULT_EQ_TOL: f64 = 1e-7;

/// Number of probe centers per side for continuity checks.
const CONTINUITY_PROBES: usize = 4;

/// Which case of the differentiability taxonomy applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Case {
    /// Both `f` and `g` are differentiable at `x`.
    BothDifferentiable,
    /// All four one-sided derivatives exist and cross: `f′₋ = g′₊`, `g′₋ = f′₊`.
    CrossedDerivatives,
    /// The interval derivative exists while some one-sided endpoint
    /// derivative does not — outside the A/B characterization.
    BeyondOneSided,
    NotDifferentiable,
    Inconclusive,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::BothDifferentiable => "CASE_A_BOTH_DIFFERENTIABLE",
            Case::CrossedDerivatives => "CASE_B_CROSSED_DERIVATIVES",
            Case::BeyondOneSided => "CASE_C_BEYOND_THEOREM1",
            Case::NotDifferentiable => "NOT_DIFFERENTIABLE",
            Case::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Continuity witness choices for the corollary check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContinuityWitness {
    FCont,
    GCont,
    LengthCont,
}

impl ContinuityWitness {
    pub fn as_str(self) -> &'static str {
        match self {
            ContinuityWitness::FCont => "F_CONT",
            ContinuityWitness::GCont => "G_CONT",
            ContinuityWitness::LengthCont => "LENGTH_CONT",
        }
    }

    fn expr(self, fun: &IntervalFunction) -> Expr {
        match self {
            ContinuityWitness::FCont => fun.f().clone(),
            ContinuityWitness::GCont => fun.g().clone(),
            ContinuityWitness::LengthCont => fun.length_expr(),
        }
    }
}

impl fmt::Display for ContinuityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full classification of `F` at `x`, with the underlying evidence.
#[derive(Clone, Debug)]
pub struct ClassificationReport<S> {
    pub case: Case,
    pub markov: DerivativeResult<S>,
    pub one_sided: OneSidedDerivatives<S>,
    /// Whether the crossed-slope equalities hold; present only when all
    /// four one-sided derivatives exist.
    pub dpm_holds: Option<bool>,
    /// Outcome of the continuity-witness corollary check; present when the
    /// derivative exists and some witness passed its continuity probe.
    pub ufa_checked: Option<bool>,
    pub evidence: String,
}

fn scalar_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn deriv_close<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    a == b || scalar_close(a.to_f64(), b.to_f64(), tol)
}

fn interval_close<S: Scalar>(a: &Interval<S>, b: &Interval<S>, tol: f64) -> bool {
    a == b || a.dist_f64(b) <= tol
}

/// Classifies `F` at `x`.
///
/// The case invariants: A and B additionally require the interval
/// derivative to exist; C requires it to exist while at least one
/// one-sided endpoint derivative has a negative (not merely inconclusive)
/// verdict. When the derivative does not exist the case is
/// `NotDifferentiable` regardless of the one-sided picture.
pub fn classify<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    cfg: &LadderConfig<S>,
) -> Result<ClassificationReport<S>, EngineError> {
    let markov = markov_derivative(fun, x, cfg)?;
    let one_sided = one_sided_all(fun, x, cfg)?;
    let mut evidence: Vec<String> = Vec::new();

    let dpm_holds = if one_sided.all_exist() {
        Some(check_dpm(&one_sided, DEFAULT_EQ_TOL)?)
    } else {
        None
    };

    let case = match markov.verdict {
        Verdict::NotExistsDivergent | Verdict::NotExistsOscillating => {
            evidence.push(format!("derivative verdict {}: {}", markov.verdict, markov.notes));
            Case::NotDifferentiable
        }
        Verdict::Inconclusive => {
            evidence.push("derivative computation was inconclusive".into());
            Case::Inconclusive
        }
        Verdict::Exists => {
            if one_sided.all_exist() {
                let fm = one_sided.f_minus.value.as_ref().expect("exists");
                let fp = one_sided.f_plus.value.as_ref().expect("exists");
                let gm = one_sided.g_minus.value.as_ref().expect("exists");
                let gp = one_sided.g_plus.value.as_ref().expect("exists");
                if deriv_close(fm, fp, DEFAULT_EQ_TOL) && deriv_close(gm, gp, DEFAULT_EQ_TOL) {
                    evidence.push(format!("f and g differentiable: f' = {fm}, g' = {gm}"));
                    Case::BothDifferentiable
                } else if dpm_holds == Some(true) {
                    evidence.push(format!(
                        "crossed slopes: f'- = {fm} matches g'+ = {gp}, g'- = {gm} matches f'+ = {fp}"
                    ));
                    Case::CrossedDerivatives
                } else {
                    evidence.push(format!(
                        "derivative exists but slopes ({fm}, {fp}, {gm}, {gp}) are neither aligned nor crossed"
                    ));
                    Case::Inconclusive
                }
            } else {
                let mut missing = Vec::new();
                for (name, d) in [
                    ("f'-", &one_sided.f_minus),
                    ("f'+", &one_sided.f_plus),
                    ("g'-", &one_sided.g_minus),
                    ("g'+", &one_sided.g_plus),
                ] {
                    if !d.verdict.exists() {
                        missing.push(format!(
                            "{name} {}: rational ladder → {}, irrational ladder → {}",
                            d.verdict,
                            d.rational_estimate.map_or("?".into(), |v| v.to_string()),
                            d.irrational_estimate.map_or("?".into(), |v| v.to_string()),
                        ));
                    }
                }
                let refuted = [
                    &one_sided.f_minus,
                    &one_sided.f_plus,
                    &one_sided.g_minus,
                    &one_sided.g_plus,
                ]
                .iter()
                .any(|d| {
                    matches!(
                        d.verdict,
                        Verdict::NotExistsDivergent | Verdict::NotExistsOscillating
                    )
                });
                if refuted {
                    evidence.push(format!(
                        "derivative {} exists while one-sided derivatives fail: {}",
                        markov.value.as_ref().expect("exists"),
                        missing.join("; ")
                    ));
                    Case::BeyondOneSided
                } else {
                    evidence.push(format!("one-sided ladders undecided: {}", missing.join("; ")));
                    Case::Inconclusive
                }
            }
        }
    };

    let ufa_checked = if markov.verdict.exists() {
        let mut outcome = None;
        for witness in [
            ContinuityWitness::FCont,
            ContinuityWitness::GCont,
            ContinuityWitness::LengthCont,
        ] {
            match verify_corollary_ufa(fun, x, witness, cfg) {
                Ok(ok) => {
                    evidence.push(format!("corollary check via {witness}: {ok}"));
                    outcome = Some(ok);
                    break;
                }
                Err(EngineError::WitnessNotContinuous { .. }) => continue,
                Err(other) => return Err(other),
            }
        }
        if outcome.is_none() {
            evidence.push("no continuity witness applies (f, g and g - f all fail)".into());
        }
        outcome
    } else {
        None
    };

    Ok(ClassificationReport {
        case,
        markov,
        one_sided,
        dpm_holds,
        ufa_checked,
        evidence: evidence.join("; "),
    })
}

/// The crossed-slope condition `f′₋ = g′₊` and `g′₋ = f′₊`, within `tol`.
/// Errors if any of the four one-sided derivatives is unavailable.
pub fn check_dpm<S: Scalar>(
    d: &OneSidedDerivatives<S>,
    tol: f64,
) -> Result<bool, EngineError> {
    let take = |name: &'static str, sd: &crate::deriv::ScalarDeriv<S>| {
        sd.value.clone().ok_or(EngineError::MissingOneSided {
            which: name,
            verdict: sd.verdict.as_str().to_string(),
        })
    };
    let fm = take("f'-", &d.f_minus)?;
    let fp = take("f'+", &d.f_plus)?;
    let gm = take("g'-", &d.g_minus)?;
    let gp = take("g'+", &d.g_plus)?;
    Ok(deriv_close(&fm, &gp, tol) && deriv_close(&gm, &fp, tol))
}

/// Checks the one-sided min/max formula on `side`: the measured one-sided
/// interval derivative must equal `[min(f′, g′), max(f′, g′)]` built from
/// the measured one-sided scalar derivatives.
///
/// Errors if either scalar derivative on that side does not exist.
pub fn verify_theorem2<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    side: Side,
    cfg: &LadderConfig<S>,
) -> Result<bool, EngineError> {
    let fd = one_sided_scalar_derivative(fun.f(), x, side, cfg)?;
    let gd = one_sided_scalar_derivative(fun.g(), x, side, cfg)?;
    let name = |e: &str| -> &'static str {
        match (e, side) {
            ("f", Side::Left) => "f'-",
            ("f", Side::Right) => "f'+",
            ("g", Side::Left) => "g'-",
            _ => "g'+",
        }
    };
    let fv = fd.value.ok_or(EngineError::MissingOneSided {
        which: name("f"),
        verdict: fd.verdict.as_str().to_string(),
    })?;
    let gv = gd.value.ok_or(EngineError::MissingOneSided {
        which: name("g"),
        verdict: gd.verdict.as_str().to_string(),
    })?;
    let predicted = Interval::from_pair(fv, gv);
    let measured = one_sided_markov_derivative(fun, x, side, cfg)?;
    Ok(match measured.value {
        Some(actual) => interval_close(&actual, &predicted, DEFAULT_EQ_TOL),
        None => false,
    })
}

/// Checks the continuity-witness corollary: if the interval derivative
/// exists and the chosen witness (`f`, `g`, or `g − f`) is continuous,
/// then all four one-sided derivatives exist and both `[min, max]`
/// intervals equal the interval derivative.
///
/// Errors with `WitnessNotContinuous` when the witness fails its
/// continuity probe, and with `Precondition` when the derivative does not
/// exist; otherwise reports whether the corollary's equalities hold.
pub fn verify_corollary_ufa<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    witness: ContinuityWitness,
    cfg: &LadderConfig<S>,
) -> Result<bool, EngineError> {
    let markov = markov_derivative(fun, x, cfg)?;
    let Some(derivative) = markov.value else {
        return Err(EngineError::Precondition(format!(
            "interval derivative does not exist at x = {x} (verdict {})",
            markov.verdict
        )));
    };

    let w = witness.expr(fun);
    let omega = fun.omega_as::<S>();
    for side in [Side::Left, Side::Right] {
        probe_continuity_on_side(&w, x, side, (&omega.0, &omega.1), cfg)?;
    }
    probe_continuity_at(&w, x, (&omega.0, &omega.1), cfg)?;

    let os = one_sided_all(fun, x, cfg)?;
    if !os.all_exist() {
        return Ok(false);
    }
    let fm = os.f_minus.value.expect("exists");
    let fp = os.f_plus.value.expect("exists");
    let gm = os.g_minus.value.expect("exists");
    let gp = os.g_plus.value.expect("exists");
    let left = Interval::from_pair(fm, gm);
    let right = Interval::from_pair(fp, gp);
    Ok(interval_close(&left, &derivative, DEFAULT_EQ_TOL)
        && interval_close(&right, &derivative, DEFAULT_EQ_TOL))
}

/// The linear-relation witness `α·f + β·g = c + d` with its scale constant.
///
/// The two bound hypotheses (`|α| + |β| ≤ μ` and `μ·|α − β| ≥ 1`) are
/// scale-invariant as a pair: multiplying α, β, c, d by s > 0 preserves
/// the relation, so the checker accepts when some rescaling satisfies both
/// bounds, which reduces to `μ²·min|α − β| ≥ max(|α| + |β|)` over the
/// checked points.
#[derive(Clone, Debug)]
pub struct LinearRelationWitness {
    pub alpha: Expr,
    pub beta: Expr,
    pub c: Expr,
    pub d: Expr,
    pub mu: QuadNum,
}

impl LinearRelationWitness {
    pub fn new(alpha: Expr, beta: Expr, c: Expr, d: Expr, mu: QuadNum) -> Result<Self, EngineError> {
        if mu.sign() <= 0 {
            return Err(EngineError::Config(format!("mu must be positive, got {mu}")));
        }
        Ok(LinearRelationWitness { alpha, beta, c, d, mu })
    }

    /// `(1, 0, f, 0, 1)` — valid whenever `f` is continuous.
    pub fn continuous_f(fun: &IntervalFunction) -> Self {
        LinearRelationWitness {
            alpha: Expr::int(1),
            beta: Expr::int(0),
            c: fun.f().clone(),
            d: Expr::int(0),
            mu: QuadNum::from_int(1),
        }
    }

    /// `(−1, 1, g − f, 0, 1)` — valid whenever the length is continuous.
    pub fn continuous_length(fun: &IntervalFunction) -> Self {
        LinearRelationWitness {
            alpha: Expr::int(-1),
            beta: Expr::int(1),
            c: fun.length_expr(),
            d: Expr::int(0),
            mu: QuadNum::from_int(1),
        }
    }
}

/// Verifies a linear-relation witness on one side of `x`:
///
/// - the relation `α(t)f(t) + β(t)g(t) = c(t) + d(t)` at every ladder
///   point of both flavors (exactly in exact mode),
/// - the bound pair, in its scale-invariant form, over those points and `x`,
/// - `d(x) = 0` with one-sided derivative 0,
/// - continuity of `α`, `β`, `c` on the side (by ladder probe).
///
/// Returns `false` when any hypothesis fails; evaluation problems error.
pub fn check_linear_relation<S: Scalar>(
    fun: &IntervalFunction,
    witness: &LinearRelationWitness,
    side: Side,
    x: &S,
    cfg: &LadderConfig<S>,
) -> Result<bool, EngineError> {
    if witness.mu.sign() <= 0 {
        return Err(EngineError::Config(format!(
            "mu must be positive, got {}",
            witness.mu
        )));
    }
    let omega = fun.omega_as::<S>();

    let mut points: Vec<S> = Vec::new();
    for flavor in [Flavor::Rational, Flavor::Irrational] {
        points.extend(ladder_points(x, side, flavor, cfg, Some((&omega.0, &omega.1)))?);
    }

    // Relation and bound material at the ladder points.
    let mut sum_max: Option<S> = None;
    let mut gap_min: Option<S> = None;
    let mut record_bounds = |alpha: &S, beta: &S| {
        let sum = alpha.clone().abs() + beta.clone().abs();
        let gap = (alpha.clone() - beta.clone()).abs();
        sum_max = Some(match sum_max.take() {
            Some(m) => max_pair(m, sum),
            None => sum,
        });
        gap_min = Some(match gap_min.take() {
            Some(m) => min_pair(m, gap),
            None => gap,
        });
    };

    for t in &points {
        let (fv, gv) = fun.eval_pair(t)?;
        let alpha = witness.alpha.eval(t)?;
        let beta = witness.beta.eval(t)?;
        let cv = witness.c.eval(t)?;
        let dv = witness.d.eval(t)?;
        let lhs = alpha.clone() * fv + beta.clone() * gv;
        let rhs = cv + dv;
        let holds = if S::EXACT {
            lhs == rhs
        } else {
            cfg.agree(lhs.to_f64(), rhs.to_f64())
        };
        if !holds {
            return Ok(false);
        }
        record_bounds(&alpha, &beta);
    }
    record_bounds(&witness.alpha.eval(x)?, &witness.beta.eval(x)?);

    let (sum_max, gap_min) = (sum_max.expect("points"), gap_min.expect("points"));
    if gap_min.is_zero() {
        return Ok(false);
    }
    let mu = S::from_quad(&witness.mu);
    if mu.clone() * mu * gap_min < sum_max {
        return Ok(false);
    }

    // d(x) = 0 and ∂d(x) = 0 on this side.
    let dx = witness.d.eval(x)?;
    let d_zero = if S::EXACT {
        dx.is_zero()
    } else {
        dx.to_f64().abs() <= cfg.tol_abs
    };
    if !d_zero {
        return Ok(false);
    }
    let dd = one_sided_scalar_derivative(&witness.d, x, side, cfg)?;
    match dd.value {
        Some(v) if v.to_f64().abs() <= DEFAULT_EQ_TOL => {}
        _ => return Ok(false),
    }

    // α, β, c continuous on the side.
    for e in [&witness.alpha, &witness.beta, &witness.c] {
        match probe_continuity_on_side(e, x, side, (&omega.0, &omega.1), cfg) {
            Ok(()) => {}
            Err(EngineError::WitnessNotContinuous { .. }) => return Ok(false),
            Err(other) => return Err(other),
        }
    }
    Ok(true)
}

/// Probes continuity of `e` at several centers on one side of `x`,
/// erroring with `WitnessNotContinuous` on the first failed probe.
fn probe_continuity_on_side<S: Scalar>(
    e: &Expr,
    x: &S,
    side: Side,
    omega: (&S, &S),
    cfg: &LadderConfig<S>,
) -> Result<(), EngineError> {
    // Probe centers march toward x on rational steps; ladders around each
    // center stay strictly inside the open side interval.
    let centers = ladder_points(x, side, Flavor::Rational, cfg, Some(omega))?;
    let bounds = match side {
        Side::Right => (x, omega.1),
        Side::Left => (omega.0, x),
    };
    for center in centers.iter().take(CONTINUITY_PROBES) {
        probe_continuity_at(e, center, bounds, cfg)?;
    }
    Ok(())
}

/// Two-flavor, two-direction ladder probe of continuity of `e` at `center`:
/// every ladder's values must tend to `e(center)`.
///
/// Acceptance is evidence-based: a ladder passes when its deviations end
/// below tolerance or contract strongly (final window at most 1/8 of the
/// early window); in exact mode identically zero deviations pass outright.
fn probe_continuity_at<S: Scalar>(
    e: &Expr,
    center: &S,
    bounds: (&S, &S),
    cfg: &LadderConfig<S>,
) -> Result<(), EngineError> {
    let value = e.eval(center)?;
    let to_lo = center.clone() - bounds.0.clone();
    let to_hi = bounds.1.clone() - center.clone();
    let dist = if to_lo < to_hi { to_lo } else { to_hi };
    if dist.sign() <= 0 {
        return Err(EngineError::Precondition(format!(
            "continuity probe center {center} is not interior to its interval"
        )));
    }
    let mini = LadderConfig {
        h0: dist * S::ratio(1, 4),
        ratio: cfg.ratio.clone(),
        depth: cfg.depth.clamp(MIN_DEPTH, 16),
        tol_abs: cfg.tol_abs,
        tol_rel: cfg.tol_rel,
        divergence_bound: cfg.divergence_bound,
    };
    for side in [Side::Left, Side::Right] {
        for flavor in [Flavor::Rational, Flavor::Irrational] {
            let points = ladder_points(center, side, flavor, &mini, Some(bounds))?;
            let mut devs = Vec::with_capacity(points.len());
            let mut all_zero = true;
            for t in &points {
                let diff = e.eval(t)? - value.clone();
                all_zero &= diff.is_zero();
                devs.push(diff.to_f64().abs());
            }
            if S::EXACT && all_zero {
                continue;
            }
            let n = devs.len();
            if n < 4 {
                continue;
            }
            let early = devs[..n / 2].iter().cloned().fold(0.0f64, f64::max);
            let tail = n.div_ceil(4);
            let late = devs[n - tail..].iter().cloned().fold(0.0f64, f64::max);
            let tol = cfg.tol_abs + cfg.tol_rel * value.to_f64().abs();
            if late <= tol || late <= 0.125 * early {
                continue;
            }
            return Err(EngineError::WitnessNotContinuous {
                expr: e.to_string(),
                detail: format!(
                    "{side} {flavor} ladder at t = {center}: |w(t) - w({center})| stays near {late:.3e} (value {value})"
                ),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
