//! Specializations between catalog entries: substituting a value for one
//! parameter of a parent entry yields the child entry.

use serde::{Deserialize, Serialize};

use super::theorems::{dixon_reflected, lhs_spec, rhs_exact, rhs_float, Mode, TheoremId, Values};
use super::{instantiate, relative_difference, InstantiateOptions, Params, Value};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::HypergeometricSpec;

/// Relative tolerance for edges whose parent has a Gamma-form closed form.
pub const EDGE_FLOAT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct DerivationEdge {
    pub child: TheoremId,
    pub parent: TheoremId,
    pub substitution: &'static str,
    map: fn(&Values) -> Values,
}

impl DerivationEdge {
    pub fn parent_values(&self, child: &Values) -> Values {
        (self.map)(child)
    }
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

macro_rules! edge {
    ($child:ident <- $parent:ident, $text:literal, |$v:ident| $body:expr) => {
        DerivationEdge {
            child: TheoremId::$child,
            parent: TheoremId::$parent,
            substitution: $text,
            map: |$v: &Values| -> Values { $body },
        }
    };
}

/// Every documented specialization.
pub fn derivation_edges() -> Vec<DerivationEdge> {
    vec![
        edge!(WatsonTrunc2m <- WatsonTermEven, "gamma = -m-k-1/2",
            |v| Values { g: -(r(v.m + v.k) + Rational::new(1, 2)), ..v.clone() }),
        edge!(WatsonTrunc2m1 <- WatsonTermOdd, "gamma = -m-k-1/2",
            |v| Values { g: -(r(v.m + v.k) + Rational::new(1, 2)), ..v.clone() }),
        edge!(SaalschutzTrunc <- SaalschutzTerm, "gamma = -m-k",
            |v| Values { g: r(-v.m - v.k), ..v.clone() }),
        edge!(SaalschutzTruncB <- SaalschutzTermB, "alpha = beta-m-k-1",
            |v| Values { a: &v.b - (v.m + v.k + 1), ..v.clone() }),
        edge!(WhippleTruncM <- WhippleTermB, "gamma = -2m-k",
            |v| Values { g: r(-2 * v.m - v.k), ..v.clone() }),
        edge!(WhippleTrunc2mA <- WhippleTermEven, "gamma = -2m-2k",
            |v| Values { g: r(-2 * v.m - 2 * v.k), ..v.clone() }),
        edge!(WhippleTrunc2mB <- WhippleTermEven, "gamma = -2m-2k-1",
            |v| Values { g: r(-2 * v.m - 2 * v.k - 1), ..v.clone() }),
        edge!(WhippleTrunc2m1A <- WhippleTermOdd, "gamma = -2m-2k-1",
            |v| Values { g: r(-2 * v.m - 2 * v.k - 1), ..v.clone() }),
        edge!(WhippleTrunc2m1B <- WhippleTermOdd, "gamma = -2m-2k-2",
            |v| Values { g: r(-2 * v.m - 2 * v.k - 2), ..v.clone() }),
        edge!(DixonTermEven <- DixonNt, "alpha = -2m",
            |v| Values { a: r(-2 * v.m), ..v.clone() }),
        edge!(DixonTermOdd <- DixonNt, "alpha = -2m-1",
            |v| Values { a: r(-2 * v.m - 1), ..v.clone() }),
        edge!(DixonTruncA <- DixonTermEven, "beta = 1+k",
            |v| Values { b: r(1 + v.k), ..v.clone() }),
        edge!(DixonTruncC <- DixonTermOdd, "beta = 1+k",
            |v| Values { b: r(1 + v.k), ..v.clone() }),
        edge!(DixonTruncB <- DixonTruncA, "gamma = 1+k",
            |v| Values { g: r(1 + v.k), ..v.clone() }),
        edge!(DixonTruncD <- DixonTruncC, "gamma = 1+k",
            |v| Values { g: r(1 + v.k), ..v.clone() }),
        edge!(DixonTermAlphaEven <- DixonNt, "beta = -2m",
            |v| Values { b: r(-2 * v.m), ..v.clone() }),
        edge!(DixonTermAlphaOdd <- DixonNt, "beta = -2m-1",
            |v| Values { b: r(-2 * v.m - 1), ..v.clone() }),
        edge!(DixonTruncE <- DixonTermAlphaEven, "gamma = 1+alpha+2m+k",
            |v| Values { g: 1 + &v.a + (2 * v.m + v.k), ..v.clone() }),
        edge!(DixonTruncF <- DixonTermAlphaOdd, "gamma = 2+alpha+2m+k",
            |v| Values { g: 2 + &v.a + (2 * v.m + v.k), ..v.clone() }),
        edge!(DixonTermGamma <- DixonNt, "gamma = -m",
            |v| Values { g: r(-v.m), ..v.clone() }),
        edge!(DixonTermM <- DixonNt, "beta = -m",
            |v| Values { b: r(-v.m), ..v.clone() }),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub child: TheoremId,
    pub parent: TheoremId,
    pub substitution: String,
    pub params: Params,
    pub child_lhs: String,
    pub parent_lhs: String,
    /// Same parameter multisets and the same number of summed terms.
    pub lhs_match: bool,
    pub child_rhs: Value,
    pub parent_rhs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_diff: Option<f64>,
    pub holds: bool,
}

fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn same_series(a: &HypergeometricSpec, b: &HypergeometricSpec) -> bool {
    sorted(&a.numerator) == sorted(&b.numerator)
        && sorted(&a.denominator) == sorted(&b.denominator)
        && a.argument == b.argument
        && a.term_count() == b.term_count()
}

/// Checks that substituting into the parent reproduces the child's series
/// and closed form at the given child parameters. Parent side conditions are
/// not enforced; the substitution typically lands on their boundary.
pub fn derivation_check(
    child: TheoremId,
    parent: TheoremId,
    params: &Params,
    opts: InstantiateOptions,
) -> Result<DerivationReport> {
    let edge = derivation_edges()
        .into_iter()
        .find(|e| e.child == child && e.parent == parent)
        .ok_or_else(|| Error::UnknownEdge { child: child.key().into(), parent: parent.key().into() })?;
    let inst = instantiate(child, params, opts)?;
    let cv = inst.values();
    let pv = edge.parent_values(&cv);
    let parent_lhs = lhs_spec(parent, &pv);
    let lhs_match = same_series(&inst.lhs, &parent_lhs);

    let (child_rhs, parent_rhs, rel_diff, same_rhs) = if child.mode() == Mode::Exact && parent.mode() == Mode::Exact {
        let c = rhs_exact(child, &cv)?;
        let p = rhs_exact(parent, &pv)?;
        let eq = c == p;
        (Value::Exact(c), Value::Exact(p), None, eq)
    } else {
        let c = match child.mode() {
            Mode::Exact => Value::Exact(rhs_exact(child, &cv)?),
            Mode::Float => Value::Float(rhs_float(child, &cv, 1e-20)?.0),
        };
        let p = match rhs_float(parent, &pv, 1e-20) {
            Ok((x, _)) => x,
            // The plain Dixon form has Γ(1+α/2) upstairs, which has poles at
            // the even negative integers; the reflected form does not.
            Err(Error::PoleInClosedForm(_)) if parent == TheoremId::DixonNt => dixon_reflected(&pv.a, &pv.b, &pv.g)?.0,
            Err(e) => return Err(e),
        };
        let rel = relative_difference(c.to_real(), p);
        (c, Value::Float(p), Some(rel), rel <= EDGE_FLOAT_TOL)
    };

    Ok(DerivationReport {
        child,
        parent,
        substitution: edge.substitution.to_string(),
        params: inst.params,
        child_lhs: inst.lhs.to_string(),
        parent_lhs: parent_lhs.to_string(),
        lhs_match,
        child_rhs,
        parent_rhs,
        rel_diff,
        holds: lhs_match && same_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn every_edge_holds_at_a_generic_point() {
        let v = Values { m: 2, k: 3, a: q(2, 7), b: q(3, 11), g: q(-2, 13), d: Rational::zero() };
        for e in derivation_edges() {
            let p = Params::from_values(e.child, &v);
            let rep = derivation_check(e.child, e.parent, &p, InstantiateOptions::default())
                .unwrap_or_else(|err| panic!("{} <- {}: {err}", e.child, e.parent));
            assert!(rep.lhs_match, "{rep:?}");
            assert!(rep.holds, "{rep:?}");
        }
    }

    #[test]
    fn unknown_edge() {
        let p = Params { m: Some(1), k: Some(1), ..Default::default() };
        let err = derivation_check(TheoremId::DixonTruncB, TheoremId::WatsonNt, &p, InstantiateOptions::default());
        assert!(matches!(err, Err(Error::UnknownEdge { .. })));
    }
}
