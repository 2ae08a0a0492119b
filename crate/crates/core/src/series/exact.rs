use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pochhammer::{factorial_exact, rising};
use crate::rational::Rational;
use crate::series::spec::HypergeometricSpec;

/// Exact partial sum over `n = 0..=m`, ignoring `spec.truncation`.
pub fn eval_truncated(spec: &HypergeometricSpec, m: u64) -> Result<Rational> {
    Ok(spec.terms(m)?.into_iter().sum())
}

/// Exact value of a terminating series.
pub fn eval_terminating(spec: &HypergeometricSpec) -> Result<Rational> {
    let n = spec.terminating_order().ok_or(Error::NotTerminating)?;
    eval_truncated(spec, n)
}

/// Truncated when a truncation order is set, terminating otherwise.
pub fn eval_exact(spec: &HypergeometricSpec) -> Result<Rational> {
    match spec.truncation {
        Some(m) => eval_truncated(spec, m),
        None => eval_terminating(spec),
    }
}

/// `Σ Φ(m-n)`: the same terms summed in reverse order.
pub fn sum_reversed(terms: &[Rational]) -> Rational {
    terms.iter().rev().cloned().sum()
}

/// A reversed series together with the scalar that restores the original
/// value: `original = prefactor · reversed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reversed {
    pub prefactor: Rational,
    pub spec: HypergeometricSpec,
}

impl Reversed {
    pub fn value(&self) -> Result<Rational> {
        Ok(&self.prefactor * eval_exact(&self.spec)?)
    }
}

fn product_rising(params: &[Rational], m: u64) -> Rational {
    params.iter().map(|a| rising(a, m)).product()
}

fn shifted(params: &[Rational], m: u64) -> Vec<Rational> {
    let base = Rational::one() - Rational::from_int(m as i64);
    params.iter().map(|a| &base - a).collect()
}

fn sign(e: usize) -> Rational {
    Rational::from_int(if e.is_multiple_of(2) { 1 } else { -1 })
}

fn check_reversible(spec: &HypergeometricSpec, alphas: &[Rational], m: u64) -> Result<(Rational, Rational)> {
    if spec.argument.is_zero() {
        return Err(Error::ReversalInapplicable("argument is zero".into()));
    }
    let pa = product_rising(alphas, m);
    if pa.is_zero() {
        return Err(Error::ReversalInapplicable(format!(
            "a numerator Pochhammer vanishes at order {m}"
        )));
    }
    let pb = product_rising(&spec.denominator, m);
    if pb.is_zero() {
        return Err(Error::ReversalInapplicable(format!(
            "a denominator Pochhammer vanishes at order {m}"
        )));
    }
    Ok((pa, pb))
}

/// Reverses the order of the first `m+1` terms:
/// `pFq[(α);(β);z]_m = [(α)]_m z^m / ([(β)]_m m!) · q+2Fp[-m, 1-(β)-m, 1; 1-(α)-m; (-1)^{p+q+1}/z]_m`.
pub fn reverse_truncated(spec: &HypergeometricSpec, m: u64) -> Result<Reversed> {
    let (pa, pb) = check_reversible(spec, &spec.numerator, m)?;
    let z = &spec.argument;
    let prefactor = pa * z.pow(m as i32).expect("power") / (pb * factorial_exact(m));
    let mut numerator = vec![-Rational::from_int(m as i64)];
    numerator.extend(shifted(&spec.denominator, m));
    numerator.push(Rational::one());
    let arg = sign(spec.p() + spec.q() + 1) / z;
    let reversed =
        HypergeometricSpec::new(numerator, shifted(&spec.numerator, m), arg).truncated(m);
    Ok(Reversed { prefactor, spec: reversed })
}

/// Reverses a terminating series `p+1Fq[-m, (α); (β); z]`:
/// `= [(α)]_m (-z)^m / [(β)]_m · q+1Fp[-m, 1-(β)-m; 1-(α)-m; (-1)^{p+q}/z]`.
pub fn reverse_terminating(spec: &HypergeometricSpec) -> Result<Reversed> {
    let m = spec.terminating_order().ok_or(Error::NotTerminating)?;
    let minus_m = -Rational::from_int(m as i64);
    let pos = spec.numerator.iter().position(|a| *a == minus_m).expect("terminating parameter");
    let mut alphas = spec.numerator.clone();
    alphas.remove(pos);
    let (pa, pb) = check_reversible(spec, &alphas, m)?;
    let z = &spec.argument;
    let prefactor = pa * (-z).pow(m as i32).expect("power") / pb;
    let mut numerator = vec![minus_m];
    numerator.extend(shifted(&spec.denominator, m));
    let arg = sign(alphas.len() + spec.q()) / z;
    let reversed = HypergeometricSpec::new(numerator, shifted(&alphas, m), arg);
    Ok(Reversed { prefactor, spec: reversed })
}
