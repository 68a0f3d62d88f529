//! Scripted reproductions of the canonical examples, with assertions.
//! Any failed claim exits with code 4.

use markov_deriv::{
    check_dpm, classify, difference_quotient, families, ladder_points, markov_derivative,
    one_sided_all, one_sided_markov_derivative, one_sided_scalar_derivative, Case, ExactInterval,
    Flavor, Interval, LadderConfig, QuadNum, Scalar, Side, Verdict, DEFAULT_EQ_TOL,
};
use crate::{DemoName, Failure};

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure::assertion(msg.into()))
    }
}

fn q(n: i64, d: i64) -> QuadNum {
    QuadNum::ratio(n, d)
}

fn unit() -> ExactInterval {
    Interval::new(QuadNum::from_int(0), QuadNum::from_int(1)).expect("ordered")
}

pub fn run(name: DemoName) -> Result<(), Failure> {
    match name {
        DemoName::Lemma1 => lemma1(),
        DemoName::Theorem2 => theorem2(),
        DemoName::Dpm => dpm(),
        DemoName::Lemcont => lemcont(),
    }
}

/// The Dirichlet pair has interval derivative [0, 1] at 0 although none of
/// the one-sided endpoint derivatives exist. The quotient is computed
/// exactly for the four sign/rationality cases, then over full ladders.
fn lemma1() -> Result<(), Failure> {
    let fun = families::dirichlet_pair();
    let zero = QuadNum::from_int(0);
    println!("Dirichlet pair on (-1, 1):");
    print!("{}", families::DIRICHLET_SRC);
    println!();

    let fx = fun.eval_interval(&zero).map_err(|e| Failure::assertion(e.to_string()))?;
    println!("F(0) = {fx}");
    ensure(fx == unit(), "F(0) should be [0, 1]")?;
    println!();

    let cases = [
        ("t > 0 rational  ", q(1, 2)),
        ("t < 0 rational  ", q(-1, 2)),
        ("t > 0 irrational", q(1, 4) * QuadNum::sqrt2()),
        ("t < 0 irrational", q(-1, 4) * QuadNum::sqrt2()),
    ];
    for (label, t) in cases {
        let ft = fun.eval_interval(&t).map_err(|e| Failure::assertion(e.to_string()))?;
        let diff = ft.markov_diff(&fx);
        let quotient = difference_quotient(&fun, &zero, &t)
            .map_err(|e| Failure::assertion(e.to_string()))?;
        println!("{label}  t = {t}");
        println!("    F(t) = {ft},  F(t) ⊖ F(0) = {diff},  quotient = {quotient}");
        ensure(quotient == unit(), format!("quotient at t = {t} should be [0, 1]"))?;
    }
    println!();

    let cfg = LadderConfig::for_function(&fun, &zero).map_err(|e| Failure::assertion(e.to_string()))?;
    let omega = fun.omega_as::<QuadNum>();
    let mut checked = 0usize;
    for side in [Side::Left, Side::Right] {
        for flavor in [Flavor::Rational, Flavor::Irrational] {
            for t in ladder_points(&zero, side, flavor, &cfg, Some((&omega.0, &omega.1)))
                .map_err(|e| Failure::assertion(e.to_string()))?
            {
                let quotient = difference_quotient(&fun, &zero, &t)
                    .map_err(|e| Failure::assertion(e.to_string()))?;
                ensure(quotient == unit(), format!("ladder quotient at t = {t}"))?;
                checked += 1;
            }
        }
    }
    println!("quotient is exactly [0, 1] at all {checked} ladder points (both sides, both flavors)");

    let d = markov_derivative(&fun, &zero, &cfg).map_err(|e| Failure::assertion(e.to_string()))?;
    println!("interval derivative at 0: {} {}", d.verdict, d.value.as_ref().map_or("-".into(), |v| v.to_string()));
    ensure(d.verdict == Verdict::Exists && d.value == Some(unit()), "derivative should be [0, 1]")?;

    let os = one_sided_all(&fun, &zero, &cfg).map_err(|e| Failure::assertion(e.to_string()))?;
    for (name, sd) in [
        ("f'-", &os.f_minus),
        ("f'+", &os.f_plus),
        ("g'-", &os.g_minus),
        ("g'+", &os.g_plus),
    ] {
        println!(
            "{name}: {} (rational ladder → {}, irrational ladder → {})",
            sd.verdict,
            sd.rational_estimate.unwrap_or(f64::NAN),
            sd.irrational_estimate.unwrap_or(f64::NAN)
        );
        ensure(
            sd.verdict == Verdict::NotExistsOscillating,
            format!("{name} should not exist"),
        )?;
    }
    println!("\nall claims verified");
    Ok(())
}

/// One-sided derivatives of the endpoints determine the one-sided interval
/// derivative: it is [min(f', g'), max(f', g')] on each side.
fn theorem2() -> Result<(), Failure> {
    println!("[-|t|, |t|] at 0, exact:");
    let fun = families::abs_pair();
    let zero = QuadNum::from_int(0);
    let cfg = LadderConfig::for_function(&fun, &zero).map_err(|e| Failure::assertion(e.to_string()))?;
    for side in [Side::Left, Side::Right] {
        let fd = one_sided_scalar_derivative(fun.f(), &zero, side, &cfg)
            .map_err(|e| Failure::assertion(e.to_string()))?;
        let gd = one_sided_scalar_derivative(fun.g(), &zero, side, &cfg)
            .map_err(|e| Failure::assertion(e.to_string()))?;
        let (fv, gv) = (fd.value.expect("exists"), gd.value.expect("exists"));
        let predicted = Interval::from_pair(fv.clone(), gv.clone());
        let measured = one_sided_markov_derivative(&fun, &zero, side, &cfg)
            .map_err(|e| Failure::assertion(e.to_string()))?;
        let m = measured.value.clone().expect("exists");
        println!("  {side}: f' = {fv}, g' = {gv} → predicted {predicted}, measured {m}");
        ensure(m == predicted, format!("{side} measured should equal predicted"))?;
    }

    println!("[t, t^2 + 1] at 0, float:");
    let fun = families::smooth_pair();
    let cfg = LadderConfig::<f64>::for_function(&fun, &0.0)
        .map_err(|e| Failure::assertion(e.to_string()))?;
    for side in [Side::Left, Side::Right] {
        let fd = one_sided_scalar_derivative(fun.f(), &0.0, side, &cfg)
            .map_err(|e| Failure::assertion(e.to_string()))?;
        let gd = one_sided_scalar_derivative(fun.g(), &0.0, side, &cfg)
            .map_err(|e| Failure::assertion(e.to_string()))?;
        let predicted = Interval::from_pair(fd.value.expect("exists"), gd.value.expect("exists"));
        let measured = one_sided_markov_derivative(&fun, &0.0, side, &cfg)
            .map_err(|e| Failure::assertion(e.to_string()))?
            .value
            .expect("exists");
        println!("  {side}: predicted {predicted}, measured {measured}");
        ensure(
            measured.dist_f64(&predicted) <= DEFAULT_EQ_TOL,
            format!("{side} measured should match predicted within {DEFAULT_EQ_TOL}"),
        )?;
    }
    println!("\nall claims verified");
    Ok(())
}

/// Crossed one-sided slopes: f'- = g'+ and g'- = f'+ make the derivative
/// exist even though neither endpoint is differentiable.
fn dpm() -> Result<(), Failure> {
    let fun = families::abs_pair();
    let zero = QuadNum::from_int(0);
    let cfg = LadderConfig::for_function(&fun, &zero).map_err(|e| Failure::assertion(e.to_string()))?;

    let os = one_sided_all(&fun, &zero, &cfg).map_err(|e| Failure::assertion(e.to_string()))?;
    println!("[-|t|, |t|] at 0:");
    for (name, sd) in [
        ("f'-", &os.f_minus),
        ("f'+", &os.f_plus),
        ("g'-", &os.g_minus),
        ("g'+", &os.g_plus),
    ] {
        println!("  {name} = {}", sd.value.as_ref().expect("exists"));
    }
    let crossed = check_dpm(&os, DEFAULT_EQ_TOL).map_err(|e| Failure::assertion(e.to_string()))?;
    println!("crossed-slope equalities hold: {crossed}");
    ensure(crossed, "crossed equalities should hold")?;

    let d = markov_derivative(&fun, &zero, &cfg).map_err(|e| Failure::assertion(e.to_string()))?;
    let expected = Interval::new(QuadNum::from_int(-1), QuadNum::from_int(1)).expect("ordered");
    println!("interval derivative: {} {}", d.verdict, d.value.as_ref().expect("exists"));
    ensure(d.value == Some(expected), "derivative should be [-1, 1]")?;

    let report = classify(&fun, &zero, &cfg).map_err(|e| Failure::assertion(e.to_string()))?;
    println!("classification: {}", report.case);
    ensure(report.case == Case::CrossedDerivatives, "should classify as crossed")?;
    println!("\nall claims verified");
    Ok(())
}

/// A jump in an endpoint makes the quotient blow up like 1/t, so the
/// derivative cannot exist: continuity of f and g is necessary.
fn lemcont() -> Result<(), Failure> {
    let fun = families::unit_jump();
    let mut cfg = LadderConfig::<f64>::for_function(&fun, &0.0)
        .map_err(|e| Failure::assertion(e.to_string()))?;
    cfg.depth = 45;

    println!("unit jump at 0 (f = 0 for t ≤ 0, 1 for t > 0; g = f + 1):");
    let fx = fun.eval_interval(&0.0).map_err(|e| Failure::assertion(e.to_string()))?;
    for k in [0, 10, 20, 30] {
        let t = 0.25 * 0.5f64.powi(k);
        let ft = fun.eval_interval(&t).map_err(|e| Failure::assertion(e.to_string()))?;
        let gap = ft.hausdorff_dist(&fx);
        let quotient = difference_quotient(&fun, &0.0, &t)
            .map_err(|e| Failure::assertion(e.to_string()))?;
        println!("  t = {t:.3e}: dist(F(t), F(0)) = {gap}, quotient = {quotient}");
        ensure(gap >= 1.0, "the jump keeps F(t) at distance ≥ 1")?;
    }

    let d = markov_derivative(&fun, &0.0, &cfg).map_err(|e| Failure::assertion(e.to_string()))?;
    println!("verdict: {}", d.verdict);
    ensure(d.verdict == Verdict::NotExistsDivergent, "the quotient should diverge")?;

    let report = classify(&fun, &0.0, &cfg).map_err(|e| Failure::assertion(e.to_string()))?;
    println!("classification: {}", report.case);
    ensure(report.case == Case::NotDifferentiable, "should classify as not differentiable")?;
    println!("\nall claims verified");
    Ok(())
}
