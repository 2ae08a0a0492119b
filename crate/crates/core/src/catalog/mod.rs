//! Catalog of summation theorems for `₃F₂` at unit argument.
//!
//! Every entry pairs a left-hand series with a closed form. Pochhammer-form
//! entries are checked with exact rational arithmetic; Gamma-form entries
//! are checked in double-double against a relative tolerance.

mod derivation;
mod theorems;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::real::RealHP;
use crate::series::{eval_exact, eval_nonterminating_float, HypergeometricSpec, DEFAULT_MAX_TERMS};

pub use derivation::{derivation_check, derivation_edges, DerivationEdge, DerivationReport};
pub use theorems::{
    conditions, dixon_plain, dixon_reflected, float_omega, gamma_ratio, lhs_spec, rhs_exact, rhs_float, Condition,
    ConditionKind, Family, Mode, TheoremId, Values, Var,
};

/// Default relative tolerance for float-mode verification.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-12;

/// Named parameter bindings. Only the free variables of an entry may be set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Rational>,
}

impl Params {
    fn is_set(&self, var: Var) -> bool {
        match var {
            Var::M => self.m.is_some(),
            Var::K => self.k.is_some(),
            Var::Alpha => self.alpha.is_some(),
            Var::Beta => self.beta.is_some(),
            Var::Gamma => self.gamma.is_some(),
            Var::Delta => self.delta.is_some(),
        }
    }

    /// Sets a variable from its textual value.
    pub fn set(&mut self, var: Var, text: &str) -> Result<()> {
        let bad = || Error::Domain(format!("cannot parse {} = {text:?}", var.name()));
        match var {
            Var::M => self.m = Some(text.trim().parse().map_err(|_| bad())?),
            Var::K => self.k = Some(text.trim().parse().map_err(|_| bad())?),
            _ => {
                let r: Rational = text.parse().map_err(|_| bad())?;
                match var {
                    Var::Alpha => self.alpha = Some(r),
                    Var::Beta => self.beta = Some(r),
                    Var::Gamma => self.gamma = Some(r),
                    _ => self.delta = Some(r),
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> Values {
        Values {
            m: self.m.unwrap_or(0) as i64,
            k: self.k.unwrap_or(0) as i64,
            a: self.alpha.clone().unwrap_or_default(),
            b: self.beta.clone().unwrap_or_default(),
            g: self.gamma.clone().unwrap_or_default(),
            d: self.delta.clone().unwrap_or_default(),
        }
    }

    pub fn from_values(id: TheoremId, v: &Values) -> Params {
        let pick = |var: Var, x: &Rational| id.uses(var).then(|| x.clone());
        Params {
            m: id.uses(Var::M).then_some(v.m.max(0) as u64),
            k: id.uses(Var::K).then_some(v.k.max(0) as u64),
            alpha: pick(Var::Alpha, &v.a),
            beta: pick(Var::Beta, &v.b),
            gamma: pick(Var::Gamma, &v.g),
            delta: pick(Var::Delta, &v.d),
        }
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        for (name, v) in [("alpha", &self.alpha), ("beta", &self.beta), ("gamma", &self.gamma), ("delta", &self.delta)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InstantiateOptions {
    /// Allow `m = 0` and `k = 0`, which the theorems do not cover but which
    /// often still hold.
    pub permissive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremInstance {
    pub id: TheoremId,
    pub params: Params,
    pub lhs: HypergeometricSpec,
    pub mode: Mode,
}

impl TheoremInstance {
    pub fn values(&self) -> Values {
        self.params.values()
    }
}

pub fn list_theorems() -> &'static [TheoremId] {
    TheoremId::ALL
}

/// Binds the free variables of `id` and checks its side conditions.
pub fn instantiate(id: TheoremId, params: &Params, opts: InstantiateOptions) -> Result<TheoremInstance> {
    for var in [Var::M, Var::K, Var::Alpha, Var::Beta, Var::Gamma, Var::Delta] {
        let used = id.uses(var);
        let set = params.is_set(var);
        if set && !used {
            return Err(Error::UnknownParameter(var.name()));
        }
        if used && !set {
            return Err(Error::MissingParameter(var.name()));
        }
    }
    for (var, value) in [(Var::M, params.m), (Var::K, params.k)] {
        if value == Some(0) && !opts.permissive {
            return Err(Error::SideConditionViolated {
                condition: format!("{} >= 1 (pass --permissive to allow 0)", var.name()),
                value: Rational::zero(),
            });
        }
        if value.is_some_and(|n| n > 10_000) {
            return Err(Error::Domain(format!("{} is too large", var.name())));
        }
    }
    let v = params.values();
    for c in conditions(id, &v) {
        if !c.holds() {
            return Err(Error::SideConditionViolated { condition: c.describe(), value: c.value });
        }
    }
    Ok(TheoremInstance { id, params: params.clone(), lhs: lhs_spec(id, &v), mode: id.mode() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Value {
    Exact(Rational),
    Float(RealHP),
}

impl Value {
    pub fn to_real(&self) -> RealHP {
        match self {
            Value::Exact(r) => RealHP::from_rational(r),
            Value::Float(x) => *x,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Float(x) => f.write_str(&x.to_string_sig(20)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Mismatch,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: TheoremId,
    pub params: Params,
    pub mode: Mode,
    pub lhs_spec: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    /// A second closed form, where the entry has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_rhs: Option<Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_diff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<u64>,
    /// Set when an evaluation error made the verdict inapplicable; true when
    /// the error lies in the instance (a pole) rather than in the numerics.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invalid_instance: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

/// `|l - r| / |r|`, or `|l|` when `r = 0`.
pub fn relative_difference(l: RealHP, r: RealHP) -> f64 {
    let diff = (l - r).abs();
    if r.is_zero() {
        diff.to_f64()
    } else {
        (diff / r.abs()).to_f64()
    }
}

fn is_pole(e: &Error) -> bool {
    matches!(e, Error::PoleInRange { .. } | Error::PoleInClosedForm(_) | Error::PoleAtNonpositiveInteger(_))
}

/// Evaluates both sides of an instance and compares them: exactly in exact
/// mode, to relative tolerance `float_tol` in float mode.
pub fn verify(inst: &TheoremInstance, float_tol: f64) -> VerificationReport {
    let mut report = VerificationReport {
        id: inst.id,
        params: inst.params.clone(),
        mode: inst.mode,
        lhs_spec: inst.lhs.to_string(),
        lhs: None,
        rhs: None,
        alt_rhs: None,
        verdict: Verdict::Inapplicable,
        rel_diff: None,
        tolerance: None,
        terms: None,
        invalid_instance: None,
        diagnostics: Vec::new(),
    };
    let outcome = match inst.mode {
        Mode::Exact => verify_exact(inst, &mut report),
        Mode::Float => verify_float(inst, float_tol, &mut report),
    };
    if let Err(e) = outcome {
        report.verdict = Verdict::Inapplicable;
        report.invalid_instance = Some(is_pole(&e) || e.is_invalid_instance());
        report.diagnostics.push(e.to_string());
    }
    report
}

fn verify_exact(inst: &TheoremInstance, report: &mut VerificationReport) -> Result<()> {
    let v = inst.values();
    let lhs = eval_exact(&inst.lhs)?;
    report.terms = inst.lhs.term_count();
    report.lhs = Some(Value::Exact(lhs.clone()));
    let rhs = rhs_exact(inst.id, &v)?;
    report.rhs = Some(Value::Exact(rhs.clone()));
    report.verdict = if lhs == rhs { Verdict::Equal } else { Verdict::Mismatch };
    if report.verdict == Verdict::Mismatch {
        report.diagnostics.push(format!("difference {}", &lhs - &rhs));
    }
    Ok(())
}

fn verify_float(inst: &TheoremInstance, tol: f64, report: &mut VerificationReport) -> Result<()> {
    let v = inst.values();
    report.tolerance = Some(tol);
    let inner_tol = (tol * 1e-3).max(1e-26);
    let sum = eval_nonterminating_float(&inst.lhs, inner_tol, DEFAULT_MAX_TERMS)?;
    report.terms = Some(sum.terms);
    report.lhs = Some(Value::Float(sum.value));
    if !sum.rigorous {
        report.diagnostics.push(format!("tail estimate {:e} (asymptotic)", sum.abs_error));
    }
    let (rhs, alt) = rhs_float(inst.id, &v, inner_tol)?;
    report.rhs = Some(Value::Float(rhs));
    let mut rel = relative_difference(sum.value, rhs);
    if let Some(alt) = alt {
        report.alt_rhs = Some(Value::Float(alt));
        rel = rel.max(relative_difference(alt, rhs));
    }
    report.rel_diff = Some(rel);
    report.verdict = if rel <= tol { Verdict::Equal } else { Verdict::Mismatch };
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn params(m: Option<u64>, k: Option<u64>, a: Option<Rational>, b: Option<Rational>, g: Option<Rational>) -> Params {
        Params { m, k, alpha: a, beta: b, gamma: g, delta: None }
    }

    #[test]
    fn exact_examples() {
        let cases = [
            (TheoremId::WatsonTruncM, params(Some(1), None, Some(q(1, 1)), Some(q(1, 1)), None), q(4, 3)),
            (TheoremId::SaalschutzTrunc, params(Some(1), Some(1), Some(q(1, 1)), Some(q(1, 1)), None), q(9, 8)),
            (TheoremId::DixonTruncB, params(Some(1), Some(1), None, None, None), q(10, 9)),
            (TheoremId::WhippleTruncM, params(Some(1), Some(1), Some(q(1, 2)), None, None), q(25, 24)),
        ];
        for (id, p, want) in cases {
            let inst = instantiate(id, &p, InstantiateOptions::default()).unwrap();
            let r = verify(&inst, DEFAULT_FLOAT_TOL);
            assert_eq!(r.verdict, Verdict::Equal, "{id}");
            assert_eq!(r.lhs, Some(Value::Exact(want)));
        }
    }

    #[test]
    fn parameter_validation() {
        let opts = InstantiateOptions::default();
        let p = params(Some(1), None, Some(q(1, 1)), None, None);
        assert_eq!(instantiate(TheoremId::WatsonTruncM, &p, opts), Err(Error::MissingParameter("beta")));
        let p = params(Some(1), Some(1), Some(q(1, 1)), Some(q(1, 1)), None);
        assert_eq!(instantiate(TheoremId::WatsonTruncM, &p, opts), Err(Error::UnknownParameter("k")));
        let p = params(Some(1), None, Some(q(-2, 1)), Some(q(1, 1)), None);
        assert!(matches!(
            instantiate(TheoremId::WatsonTruncM, &p, opts),
            Err(Error::SideConditionViolated { .. })
        ));
        let p = params(Some(1), Some(0), None, None, None);
        assert!(instantiate(TheoremId::DixonTruncB, &p, opts).is_err());
        let inst = instantiate(TheoremId::DixonTruncB, &p, InstantiateOptions { permissive: true }).unwrap();
        assert_eq!(verify(&inst, DEFAULT_FLOAT_TOL).verdict, Verdict::Equal);
    }

    #[test]
    fn float_examples() {
        let p = Params { alpha: Some(q(1, 2)), beta: Some(q(1, 2)), gamma: Some(q(1, 2)), ..Default::default() };
        let inst = instantiate(TheoremId::WatsonNt, &p, InstantiateOptions::default()).unwrap();
        let r = verify(&inst, 1e-12);
        assert_eq!(r.verdict, Verdict::Equal, "{r:?}");

        let p = Params {
            alpha: Some(q(1, 3)),
            beta: Some(q(1, 4)),
            gamma: Some(q(7, 5)),
            delta: Some(q(3, 2)),
            ..Default::default()
        };
        let inst = instantiate(TheoremId::SaalschutzNt, &p, InstantiateOptions::default()).unwrap();
        let r = verify(&inst, 1e-12);
        assert_eq!(r.verdict, Verdict::Equal, "{r:?}");

        let p = Params { m: Some(3), alpha: Some(q(2, 3)), beta: Some(q(1, 5)), ..Default::default() };
        let inst = instantiate(TheoremId::DixonTermGamma, &p, InstantiateOptions::default()).unwrap();
        let r = verify(&inst, 1e-20);
        assert_eq!(r.verdict, Verdict::Equal, "{r:?}");
    }

    #[test]
    fn every_entry_verifies_at_a_generic_point() {
        let opts = InstantiateOptions::default();
        for &id in TheoremId::ALL {
            let v = Values { m: 2, k: 1, a: q(2, 7), b: q(3, 11), g: q(-2, 13), d: q(5, 3) };
            let mut v = v;
            if matches!(id, TheoremId::SaalschutzNt | TheoremId::WhippleNt) {
                v.g = q(9, 7);
            }
            let p = Params::from_values(id, &v);
            let inst = instantiate(id, &p, opts).unwrap_or_else(|e| panic!("{id}: {e}"));
            let r = verify(&inst, 1e-11);
            assert_eq!(r.verdict, Verdict::Equal, "{id}: {r:?}");
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let p = Params { alpha: Some(q(1, 2)), beta: Some(q(1, 2)), gamma: Some(q(1, 2)), ..Default::default() };
        let inst = instantiate(TheoremId::WatsonNt, &p, InstantiateOptions::default()).unwrap();
        let r = verify(&inst, 1e-12);
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.verdict, r.verdict);
        assert_eq!(back.params, r.params);
    }
}
