//! JSON serialization of results and reports.
//!
//! Scalars are rendered as strings in their textual form (`1/2`,
//! `1/2+3/4*sqrt2`, `0.5`), which keeps one schema across exact and float
//! modes. Field order is fixed by the struct definitions and all content
//! is deterministic, so identical inputs produce byte-identical output in
//! exact mode — the property golden-file tests rely on.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::classify::ClassificationReport;
use crate::deriv::{
    markov_derivative, one_sided_all, DerivativeResult, Flavor, LadderConfig, OneSidedDerivatives,
    QuotientTrace, ScalarDeriv, Side, Verdict,
};
use crate::error::EngineError;
use crate::expr::IntervalFunction;
use crate::interval::Interval;
use crate::scalar::Scalar;

impl<S: Scalar> Serialize for Interval<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &self.lo().to_string())?;
        st.serialize_field("hi", &self.hi().to_string())?;
        st.end()
    }
}

impl Serialize for Verdict {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(self.as_str())
    }
}

impl Serialize for Side {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Flavor {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<S: Scalar> Serialize for ScalarDeriv<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("ScalarDeriv", 4)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("value", &self.value.as_ref().map(|v| v.to_string()))?;
        st.serialize_field("rational_estimate", &self.rational_estimate)?;
        st.serialize_field("irrational_estimate", &self.irrational_estimate)?;
        st.end()
    }
}

impl<S: Scalar> Serialize for OneSidedDerivatives<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("OneSidedDerivatives", 4)?;
        st.serialize_field("f_minus", &self.f_minus)?;
        st.serialize_field("f_plus", &self.f_plus)?;
        st.serialize_field("g_minus", &self.g_minus)?;
        st.serialize_field("g_plus", &self.g_plus)?;
        st.end()
    }
}

struct Sample<'a, S: Scalar>(&'a (S, Interval<S>));

impl<S: Scalar> Serialize for Sample<'_, S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let (t, q) = self.0;
        let mut st = s.serialize_struct("Sample", 3)?;
        st.serialize_field("t", &t.to_string())?;
        st.serialize_field("lo", &q.lo().to_string())?;
        st.serialize_field("hi", &q.hi().to_string())?;
        st.end()
    }
}

impl<S: Scalar> Serialize for QuotientTrace<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("QuotientTrace", 3)?;
        st.serialize_field("side", &self.side)?;
        st.serialize_field("flavor", &self.flavor)?;
        let samples: Vec<Sample<'_, S>> = self.samples.iter().map(Sample).collect();
        st.serialize_field("samples", &samples)?;
        st.end()
    }
}

impl<S: Scalar> Serialize for DerivativeResult<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("DerivativeResult", 6)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("left", &self.left)?;
        st.serialize_field("right", &self.right)?;
        st.serialize_field("ladders", &self.ladders)?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

/// A derivative computation bundled with the four one-sided endpoint
/// derivatives — the full record behind `diff` output.
#[derive(Clone, Debug)]
pub struct DerivativeReport<S> {
    pub result: DerivativeResult<S>,
    pub one_sided: OneSidedDerivatives<S>,
}

impl<S: Scalar> Serialize for DerivativeReport<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("DerivativeReport", 7)?;
        st.serialize_field("verdict", &self.result.verdict)?;
        st.serialize_field("value", &self.result.value)?;
        st.serialize_field("left", &self.result.left)?;
        st.serialize_field("right", &self.result.right)?;
        st.serialize_field("one_sided", &self.one_sided)?;
        st.serialize_field("ladders", &self.result.ladders)?;
        st.serialize_field("notes", &self.result.notes)?;
        st.end()
    }
}

/// Computes the two-sided derivative together with the one-sided table.
pub fn derivative_report<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    cfg: &LadderConfig<S>,
) -> Result<DerivativeReport<S>, EngineError> {
    Ok(DerivativeReport {
        result: markov_derivative(fun, x, cfg)?,
        one_sided: one_sided_all(fun, x, cfg)?,
    })
}

impl<S: Scalar> Serialize for ClassificationReport<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("ClassificationReport", 6)?;
        st.serialize_field("case", self.case.as_str())?;
        st.serialize_field("markov", &self.markov)?;
        st.serialize_field("one_sided", &self.one_sided)?;
        st.serialize_field("dpm_holds", &self.dpm_holds)?;
        st.serialize_field("ufa_checked", &self.ufa_checked)?;
        st.serialize_field("evidence", &self.evidence)?;
        st.end()
    }
}

/// Pretty JSON with a trailing newline; deterministic field order.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, Case};
    use crate::families;
    use crate::quad::QuadNum;
    use num::Zero;

    #[test]
    fn derivative_report_json_shape() {
        let fun = families::dirichlet_pair();
        let zero = QuadNum::zero();
        let cfg = LadderConfig::for_function(&fun, &zero).unwrap();
        let report = derivative_report(&fun, &zero, &cfg).unwrap();
        let json: serde_json::Value = serde_json::from_str(&to_json_string(&report)).unwrap();

        assert_eq!(json["verdict"], "EXISTS");
        assert_eq!(json["value"]["lo"], "0");
        assert_eq!(json["value"]["hi"], "1");
        assert_eq!(json["one_sided"]["f_plus"]["verdict"], "NOT_EXISTS_OSCILLATING");
        assert_eq!(json["one_sided"]["f_plus"]["value"], serde_json::Value::Null);
        let ladders = json["ladders"].as_array().unwrap();
        assert_eq!(ladders.len(), 4);
        assert_eq!(ladders[0]["samples"][0]["lo"], "0");
        assert!(ladders[0]["samples"][0]["t"].is_string());
    }

    #[test]
    fn classification_report_json_field_names() {
        let fun = families::abs_pair();
        let zero = QuadNum::zero();
        let cfg = LadderConfig::for_function(&fun, &zero).unwrap();
        let report = classify(&fun, &zero, &cfg).unwrap();
        assert_eq!(report.case, Case::CrossedDerivatives);
        let json: serde_json::Value = serde_json::from_str(&to_json_string(&report)).unwrap();

        for key in ["case", "markov", "one_sided", "dpm_holds", "ufa_checked", "evidence"] {
            assert!(json.get(key).is_some(), "missing field {key}");
        }
        assert_eq!(json["case"], "CASE_B_CROSSED_DERIVATIVES");
        assert_eq!(json["dpm_holds"], true);
        assert_eq!(json["markov"]["value"]["lo"], "-1");
    }

    #[test]
    fn exact_mode_output_is_reproducible() {
        let fun = families::dirichlet_pair();
        let zero = QuadNum::zero();
        let cfg = LadderConfig::for_function(&fun, &zero).unwrap();
        let a = to_json_string(&derivative_report(&fun, &zero, &cfg).unwrap());
        let b = to_json_string(&derivative_report(&fun, &zero, &cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn float_mode_json_uses_float_strings() {
        let fun = families::smooth_pair();
        let cfg = LadderConfig::<f64>::for_function(&fun, &0.0).unwrap();
        let report = derivative_report(&fun, &0.0, &cfg).unwrap();
        let json: serde_json::Value = serde_json::from_str(&to_json_string(&report)).unwrap();
        assert_eq!(json["one_sided"]["f_plus"]["value"], "1");
        assert_eq!(json["verdict"], "EXISTS");
    }
}
