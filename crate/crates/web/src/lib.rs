//! Browser bindings for a small slice of clausen-core: series evaluation,
//! theorem verification and Mellin transforms. Every function returns a
//! JSON string.

use clausen_core::catalog::{self, InstantiateOptions, Params, TheoremId, Var};
use clausen_core::mellin::{self, MellinCase, MellinInstance};
use clausen_core::series::{eval_exact, eval_nonterminating_float, DEFAULT_MAX_TERMS};
use clausen_core::{HypergeometricSpec, Rational};
use serde_json::json;
use wasm_bindgen::prelude::*;

const VARS: [Var; 6] = [Var::M, Var::K, Var::Alpha, Var::Beta, Var::Gamma, Var::Delta];

fn fail(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn rational(text: &str) -> Result<Rational, JsError> {
    text.trim().parse().map_err(fail)
}

fn rationals(text: &str) -> Result<Vec<Rational>, JsError> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(rational).collect()
}

/// Parses `name=value` pairs separated by commas or whitespace.
fn params(text: &str) -> Result<Params, JsError> {
    let mut p = Params::default();
    for pair in text.split([',', ' ', '\n']).filter(|s| !s.is_empty()) {
        let (name, value) = pair.split_once('=').ok_or_else(|| fail(format!("expected name=value, got {pair:?}")))?;
        let var = VARS
            .into_iter()
            .find(|v| v.name() == name.trim())
            .ok_or_else(|| fail(format!("unknown parameter {name:?}")))?;
        p.set(var, value.trim()).map_err(fail)?;
    }
    Ok(p)
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Sums `pFq[num; den; z]`: exactly when the series is finite, in
/// double-double otherwise.
#[wasm_bindgen]
pub fn evaluate(num: &str, den: &str, z: &str, truncate: Option<u32>) -> Result<String, JsError> {
    let mut spec = HypergeometricSpec::new(rationals(num)?, rationals(den)?, rational(z)?);
    spec.truncation = truncate.map(u64::from);
    let label = spec.to_string();
    if spec.term_count().is_some() {
        let value = eval_exact(&spec).map_err(fail)?;
        return Ok(to_json(&json!({ "spec": label, "exact": value })));
    }
    let sum = eval_nonterminating_float(&spec, 1e-25, DEFAULT_MAX_TERMS).map_err(fail)?;
    Ok(to_json(&json!({ "spec": label, "float": sum.value.to_string_sig(20), "terms": sum.terms, "rigorous": sum.rigorous })))
}

/// Checks one catalog entry at the given bindings, e.g.
/// `verify_theorem("watson.trunc-m", "m=1, alpha=1, beta=1")`.
#[wasm_bindgen]
pub fn verify_theorem(id: &str, bindings: &str) -> Result<String, JsError> {
    let id: TheoremId = id.parse().map_err(fail)?;
    let inst = catalog::instantiate(id, &params(bindings)?, InstantiateOptions::default()).map_err(fail)?;
    Ok(to_json(&catalog::verify(&inst, catalog::DEFAULT_FLOAT_TOL)))
}

/// Closed form, generic coefficient and quadrature for one Mellin case.
#[wasm_bindgen]
pub fn mellin_case(case: &str, bindings: &str, mu: &str) -> Result<String, JsError> {
    let case: MellinCase = case.parse().map_err(fail)?;
    let p = params(bindings)?;
    let mut inst = MellinInstance::new(case, rational(mu)?);
    inst.m = p.m;
    inst.k = p.k;
    inst.alpha = p.alpha;
    inst.beta = p.beta;
    inst.gamma = p.gamma;
    let opts = InstantiateOptions::default();
    mellin::resolve(&inst, opts).map_err(fail)?;
    Ok(to_json(&mellin::verify_mellin_case(&inst, 1e-8, opts)))
}

/// Theorem keys, tags and variables for populating the page.
#[wasm_bindgen]
pub fn catalog_entries() -> String {
    let rows: Vec<_> = TheoremId::ALL
        .iter()
        .map(|id| json!({ "key": id.key(), "tag": id.tag(), "vars": id.free_vars().iter().map(|v| v.name()).collect::<Vec<_>>() }))
        .collect();
    to_json(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_finite_series() {
        let out: serde_json::Value = serde_json::from_str(&evaluate("-1,2,3", "4,5", "1", None).unwrap()).unwrap();
        assert_eq!(out["exact"], "7/10");
        let out: serde_json::Value = serde_json::from_str(&evaluate("-1,1,1", "-2,1", "1", Some(1)).unwrap()).unwrap();
        assert_eq!(out["exact"], "3/2");
    }

    #[test]
    fn verifies_with_text_bindings() {
        let out: serde_json::Value =
            serde_json::from_str(&verify_theorem("whipple.trunc-m", "m=1 k=1 alpha=1/2").unwrap()).unwrap();
        assert_eq!(out["verdict"], "equal");
        assert_eq!(out["rhs"]["exact"], "25/24");
    }

    #[test]
    fn mellin_case_iv() {
        let out: serde_json::Value =
            serde_json::from_str(&mellin_case("IV", "m=1, k=1, alpha=1, beta=1", "1").unwrap()).unwrap();
        assert_eq!(out["closed_form"]["coefficient"], "9/8");
        assert_eq!(out["verdict"], "equal");
    }

    #[test]
    fn lists_catalog() {
        let rows: serde_json::Value = serde_json::from_str(&catalog_entries()).unwrap();
        assert_eq!(rows.as_array().unwrap().len(), TheoremId::ALL.len());
    }
}
