use super::*;
use num::Zero;
use crate::deriv::ScalarDeriv;
use crate::expr::parse_function_def;
use crate::families;

fn exact_cfg_for(fun: &IntervalFunction, x: &QuadNum) -> LadderConfig<QuadNum> {
    LadderConfig::for_function(fun, x).unwrap()
}

fn float_cfg_for(fun: &IntervalFunction, x: f64) -> LadderConfig<f64> {
    LadderConfig::for_function(fun, &x).unwrap()
}

#[test]
fn classify_smooth_pair_is_case_a() {
    let fun = families::smooth_pair();
    let cfg = float_cfg_for(&fun, 0.0);
    let report = classify(&fun, &0.0, &cfg).unwrap();
    assert_eq!(report.case, Case::BothDifferentiable);
    assert!(report.markov.verdict.exists());
    // Slopes are 1 and 0, so the crossed equalities fail.
    assert_eq!(report.dpm_holds, Some(false));
    assert_eq!(report.ufa_checked, Some(true));
}

#[test]
fn classify_abs_pair_is_case_b_with_exact_interval() {
    let fun = families::abs_pair();
    let zero = QuadNum::zero();
    let cfg = exact_cfg_for(&fun, &zero);
    let report = classify(&fun, &zero, &cfg).unwrap();
    assert_eq!(report.case, Case::CrossedDerivatives);
    assert_eq!(report.dpm_holds, Some(true));
    assert_eq!(
        report.markov.value,
        Some(Interval::new(QuadNum::from_int(-1), QuadNum::from_int(1)).unwrap())
    );
    assert_eq!(report.ufa_checked, Some(true));
}

#[test]
fn classify_dirichlet_is_case_c() {
    let fun = families::dirichlet_pair();
    let zero = QuadNum::zero();
    let cfg = exact_cfg_for(&fun, &zero);
    let report = classify(&fun, &zero, &cfg).unwrap();
    assert_eq!(report.case, Case::BeyondOneSided);
    assert_eq!(
        report.markov.value,
        Some(Interval::new(QuadNum::zero(), QuadNum::from_int(1)).unwrap())
    );
    assert_eq!(report.dpm_holds, None);
    // None of f, g, g − f is continuous, so the corollary never applies.
    assert_eq!(report.ufa_checked, None);
    assert!(report.evidence.contains("rational ladder → 1"), "{}", report.evidence);
}

#[test]
fn classify_jump_is_not_differentiable() {
    let fun = families::unit_jump();
    let mut cfg = float_cfg_for(&fun, 0.0);
    cfg.depth = 45;
    let report = classify(&fun, &0.0, &cfg).unwrap();
    assert_eq!(report.case, Case::NotDifferentiable);
    assert_eq!(report.dpm_holds, None);
    assert_eq!(report.ufa_checked, None);
}

#[test]
fn check_dpm_examples() {
    let sd = |v: i64| ScalarDeriv::<QuadNum> {
        verdict: Verdict::Exists,
        value: Some(QuadNum::from_int(v)),
        rational_estimate: Some(v as f64),
        irrational_estimate: Some(v as f64),
    };
    let build = |fm: i64, fp: i64, gm: i64, gp: i64| OneSidedDerivatives {
        f_minus: sd(fm),
        f_plus: sd(fp),
        g_minus: sd(gm),
        g_plus: sd(gp),
    };
    // The −|t|, |t| pattern.
    assert!(check_dpm(&build(1, -1, -1, 1), DEFAULT_EQ_TOL).unwrap());
    // A differentiable case satisfies the crossed equalities degenerately.
    assert!(check_dpm(&build(1, 1, 1, 1), DEFAULT_EQ_TOL).unwrap());
    assert!(!check_dpm(&build(1, 1, 0, 0), DEFAULT_EQ_TOL).unwrap());

    let mut missing = build(1, 1, 1, 1);
    missing.g_plus = ScalarDeriv {
        verdict: Verdict::Inconclusive,
        value: None,
        rational_estimate: None,
        irrational_estimate: None,
    };
    assert!(matches!(
        check_dpm(&missing, DEFAULT_EQ_TOL),
        Err(EngineError::MissingOneSided { which: "g'+", .. })
    ));
}

#[test]
fn theorem2_examples() {
    let smooth = families::smooth_pair();
    let cfg = float_cfg_for(&smooth, 0.0);
    assert!(verify_theorem2(&smooth, &0.0, Side::Right, &cfg).unwrap());
    assert!(verify_theorem2(&smooth, &0.0, Side::Left, &cfg).unwrap());

    let zero = QuadNum::zero();
    let affine = families::affine_pair();
    let cfg = exact_cfg_for(&affine, &zero);
    assert!(verify_theorem2(&affine, &zero, Side::Right, &cfg).unwrap());
    assert!(verify_theorem2(&affine, &zero, Side::Left, &cfg).unwrap());

    let abs_pair = families::abs_pair();
    let cfg = exact_cfg_for(&abs_pair, &zero);
    assert!(verify_theorem2(&abs_pair, &zero, Side::Right, &cfg).unwrap());

    // On the Dirichlet pair the scalar derivatives are missing.
    let dirichlet = families::dirichlet_pair();
    let cfg = exact_cfg_for(&dirichlet, &zero);
    assert!(matches!(
        verify_theorem2(&dirichlet, &zero, Side::Right, &cfg),
        Err(EngineError::MissingOneSided { .. })
    ));
}

#[test]
fn corollary_examples() {
    let zero = QuadNum::zero();

    let abs_pair = families::abs_pair();
    let cfg = exact_cfg_for(&abs_pair, &zero);
    assert!(verify_corollary_ufa(&abs_pair, &zero, ContinuityWitness::FCont, &cfg).unwrap());

    let smooth = families::smooth_pair();
    let cfg = float_cfg_for(&smooth, 0.0);
    assert!(verify_corollary_ufa(&smooth, &0.0, ContinuityWitness::GCont, &cfg).unwrap());

    let dirichlet = families::dirichlet_pair();
    let cfg = exact_cfg_for(&dirichlet, &zero);
    for witness in [
        ContinuityWitness::FCont,
        ContinuityWitness::GCont,
        ContinuityWitness::LengthCont,
    ] {
        assert!(
            matches!(
                verify_corollary_ufa(&dirichlet, &zero, witness, &cfg),
                Err(EngineError::WitnessNotContinuous { .. })
            ),
            "{witness} should fail its continuity probe"
        );
    }

    // Precondition: the derivative must exist.
    let jump = families::unit_jump();
    let mut cfg = float_cfg_for(&jump, 0.0);
    cfg.depth = 45;
    assert!(matches!(
        verify_corollary_ufa(&jump, &0.0, ContinuityWitness::LengthCont, &cfg),
        Err(EngineError::Precondition(_))
    ));
}

/// The Dirichlet endpoints with a smooth width: f and g are discontinuous
/// off 0, but g − f = 1 + t² is continuous, so the length witness applies.
fn dirichlet_with_smooth_width() -> IntervalFunction {
    let base = families::dirichlet_pair();
    let width = Expr::int(1).add(Expr::var().pow(2));
    let g = base.f().clone().add(width);
    IntervalFunction::new(
        base.f().clone(),
        g,
        (QuadNum::from_int(-1), QuadNum::from_int(1)),
    )
    .unwrap()
}

#[test]
fn linear_relation_examples() {
    let zero = QuadNum::zero();

    // Continuous f: (1, 0, f, 0, 1) is accepted.
    let smooth = families::smooth_pair();
    let cfg = exact_cfg_for(&smooth, &zero);
    let w = LinearRelationWitness::continuous_f(&smooth);
    assert!(check_linear_relation(&smooth, &w, Side::Right, &zero, &cfg).unwrap());
    assert!(check_linear_relation(&smooth, &w, Side::Left, &zero, &cfg).unwrap());

    // Continuous length: (−1, 1, g − f, 0, 1) is accepted even though f
    // and g are discontinuous everywhere off 0.
    let dw = dirichlet_with_smooth_width();
    let cfg = exact_cfg_for(&dw, &zero);
    let w = LinearRelationWitness::continuous_length(&dw);
    assert!(check_linear_relation(&dw, &w, Side::Right, &zero, &cfg).unwrap());

    // The f-witness for the Dirichlet pair is rejected: c = f is not
    // continuous on either side.
    let dirichlet = families::dirichlet_pair();
    let cfg = exact_cfg_for(&dirichlet, &zero);
    let w = LinearRelationWitness::continuous_f(&dirichlet);
    assert!(!check_linear_relation(&dirichlet, &w, Side::Right, &zero, &cfg).unwrap());
}

#[test]
fn linear_relation_d_hypotheses() {
    let zero = QuadNum::zero();
    let smooth = families::smooth_pair();
    // d = t² has a non-constant quotient trace, which needs depth to meet
    // the convergence tolerance even in exact mode.
    let mut cfg = exact_cfg_for(&smooth, &zero);
    cfg.depth = 44;

    // d = t² with c = f − t²: d(0) = 0 and ∂d(0) = 0, so this is accepted.
    let w = LinearRelationWitness::new(
        Expr::int(1),
        Expr::int(0),
        smooth.f().clone().sub(Expr::var().pow(2)),
        Expr::var().pow(2),
        QuadNum::from_int(1),
    )
    .unwrap();
    assert!(check_linear_relation(&smooth, &w, Side::Right, &zero, &cfg).unwrap());

    // d = t has slope 1 at 0: rejected.
    let w = LinearRelationWitness::new(
        Expr::int(1),
        Expr::int(0),
        smooth.f().clone().sub(Expr::var()),
        Expr::var(),
        QuadNum::from_int(1),
    )
    .unwrap();
    assert!(!check_linear_relation(&smooth, &w, Side::Right, &zero, &cfg).unwrap());

    // α = β makes the separation bound unsatisfiable: rejected even though
    // the relation itself holds (c = f + g is continuous here).
    let w = LinearRelationWitness::new(
        Expr::int(1),
        Expr::int(1),
        smooth.f().clone().add(smooth.g().clone()),
        Expr::int(0),
        QuadNum::from_int(1),
    )
    .unwrap();
    assert!(!check_linear_relation(&smooth, &w, Side::Right, &zero, &cfg).unwrap());

    // A relation that is simply false at ladder points: rejected.
    let w = LinearRelationWitness::new(
        Expr::int(1),
        Expr::int(0),
        smooth.f().clone().add(Expr::var().pow(3)),
        Expr::int(0),
        QuadNum::from_int(1),
    )
    .unwrap();
    assert!(!check_linear_relation(&smooth, &w, Side::Right, &zero, &cfg).unwrap());
}

/// Soundness: whenever classify reports case A or B, the one-sided min/max
/// formula verifies on both sides and the measured derivative matches the
/// corollary interval.
#[test]
fn case_a_b_soundness() {
    let zero = QuadNum::zero();
    let named: Vec<(IntervalFunction, bool)> = vec![
        (families::smooth_pair(), false),
        (families::abs_pair(), true),
        (families::affine_pair(), true),
        (
            parse_function_def("f = t^3 - t\ng = t^2 + 2\nomega = (-1, 1)\n").unwrap(),
            false,
        ),
    ];
    for (fun, exact) in named {
        if exact {
            let cfg = exact_cfg_for(&fun, &zero);
            let report = classify(&fun, &zero, &cfg).unwrap();
            assert!(matches!(report.case, Case::BothDifferentiable | Case::CrossedDerivatives));
            assert!(verify_theorem2(&fun, &zero, Side::Left, &cfg).unwrap());
            assert!(verify_theorem2(&fun, &zero, Side::Right, &cfg).unwrap());
            assert_eq!(report.ufa_checked, Some(true));
        } else {
            let cfg = float_cfg_for(&fun, 0.0);
            let report = classify(&fun, &0.0, &cfg).unwrap();
            assert!(matches!(report.case, Case::BothDifferentiable | Case::CrossedDerivatives));
            assert!(verify_theorem2(&fun, &0.0, Side::Left, &cfg).unwrap());
            assert!(verify_theorem2(&fun, &0.0, Side::Right, &cfg).unwrap());
            assert_eq!(report.ufa_checked, Some(true));
        }
    }
}

#[test]
fn exhaustiveness_no_case_without_existence() {
    // A kink in both endpoints with mismatched slopes: left and right
    // derivatives exist but disagree, so no case label may be assigned.
    let fun = parse_function_def("f = abs(t)\ng = abs(t) + 1\nomega = (-1, 1)\n").unwrap();
    let zero = QuadNum::zero();
    let cfg = exact_cfg_for(&fun, &zero);
    let report = classify(&fun, &zero, &cfg).unwrap();
    assert_eq!(report.case, Case::NotDifferentiable);
    assert!(!report.markov.verdict.exists());
}

#[test]
fn wire_names_are_stable() {
    assert_eq!(Case::BothDifferentiable.as_str(), "CASE_A_BOTH_DIFFERENTIABLE");
    assert_eq!(Case::CrossedDerivatives.as_str(), "CASE_B_CROSSED_DERIVATIVES");
    assert_eq!(Case::BeyondOneSided.as_str(), "CASE_C_BEYOND_THEOREM1");
    assert_eq!(Case::NotDifferentiable.as_str(), "NOT_DIFFERENTIABLE");
    assert_eq!(Case::Inconclusive.as_str(), "INCONCLUSIVE");
    assert_eq!(ContinuityWitness::LengthCont.as_str(), "LENGTH_CONT");
}
