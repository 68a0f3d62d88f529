//! Human-readable rendering of reports.

use markov_deriv::{
    ClassificationReport, DerivativeReport, Interval, OneSidedDerivatives, Scalar, ScalarDeriv,
};

fn interval_line<S: Scalar>(name: &str, value: &Option<Interval<S>>) -> String {
    match value {
        Some(iv) => {
            let float = iv.map(|s| s.to_f64());
            format!("{name:8} {iv} ≈ {float}\n")
        }
        None => format!("{name:8} (none)\n"),
    }
}

fn scalar_deriv_line<S: Scalar>(name: &str, d: &ScalarDeriv<S>) -> String {
    match &d.value {
        Some(v) => format!("  {name}: {} = {v} ≈ {}\n", d.verdict, v.to_f64()),
        None => {
            let est = |o: Option<f64>| o.map_or("?".to_string(), |v| v.to_string());
            format!(
                "  {name}: {} (rational ladder → {}, irrational ladder → {})\n",
                d.verdict,
                est(d.rational_estimate),
                est(d.irrational_estimate)
            )
        }
    }
}

fn one_sided_table<S: Scalar>(one_sided: &OneSidedDerivatives<S>) -> String {
    let mut out = String::from("one-sided endpoint derivatives:\n");
    out.push_str(&scalar_deriv_line("f'-", &one_sided.f_minus));
    out.push_str(&scalar_deriv_line("f'+", &one_sided.f_plus));
    out.push_str(&scalar_deriv_line("g'-", &one_sided.g_minus));
    out.push_str(&scalar_deriv_line("g'+", &one_sided.g_plus));
    out
}

pub fn render_derivative<S: Scalar>(report: &DerivativeReport<S>) -> String {
    let mut out = String::new();
    out.push_str(&format!("verdict: {}\n", report.result.verdict));
    out.push_str(&interval_line("value:", &report.result.value));
    out.push_str(&interval_line("left:", &report.result.left));
    out.push_str(&interval_line("right:", &report.result.right));
    out.push_str(&one_sided_table(&report.one_sided));
    out.push_str("ladders:\n");
    for trace in &report.result.ladders {
        let summary = match trace.samples.last() {
            Some((t, q)) => format!("last t = {t}, quotient {q}"),
            None => "empty".to_string(),
        };
        out.push_str(&format!(
            "  {} {}: {} rungs, {}\n",
            trace.side,
            trace.flavor,
            trace.samples.len(),
            summary
        ));
    }
    if !report.result.notes.is_empty() {
        out.push_str(&format!("notes: {}\n", report.result.notes));
    }
    out
}

pub fn render_classification<S: Scalar>(report: &ClassificationReport<S>) -> String {
    let mut out = String::new();
    out.push_str(&format!("case: {}\n", report.case));
    out.push_str(&format!("derivative verdict: {}\n", report.markov.verdict));
    out.push_str(&interval_line("value:", &report.markov.value));
    out.push_str(&one_sided_table(&report.one_sided));
    match report.dpm_holds {
        Some(b) => out.push_str(&format!("crossed-slope equalities hold: {b}\n")),
        None => out.push_str("crossed-slope equalities: not applicable\n"),
    }
    match report.ufa_checked {
        Some(b) => out.push_str(&format!("continuity-witness corollary verified: {b}\n")),
        None => out.push_str("continuity-witness corollary: no witness applies\n"),
    }
    out.push_str(&format!("evidence: {}\n", report.evidence));
    out
}
