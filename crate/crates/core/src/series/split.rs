use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pochhammer::{factorial_exact, pochhammer_negint_ratio};
use crate::rational::Rational;
use crate::real::RealHP;
use crate::series::exact::eval_truncated;
use crate::series::numeric::{exact_rising_product, sum_ratio_series, RatioSeries, DEFAULT_MAX_TERMS};
use crate::series::spec::HypergeometricSpec;

/// A series with numerator `-m` and denominator `-ℓ`, `ℓ > m`, written as its
/// first `m+1` terms plus the tail that starts at `r = ℓ+1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitResult {
    pub m: u64,
    pub l: u64,
    pub truncated_part: Rational,
    pub tail_estimate: RealHP,
    pub tail_terms_used: u64,
    pub tail_error_bound: RealHP,
    /// Whether the error bound is rigorous (`|z| < 1`) or asymptotic (`z = 1`).
    pub rigorous: bool,
}

impl SplitResult {
    pub fn total(&self) -> RealHP {
        RealHP::from_rational(&self.truncated_part) + self.tail_estimate
    }
}

fn find_pair(spec: &HypergeometricSpec) -> Result<(usize, u64, usize, u64)> {
    let negint = |x: &Rational| x.is_nonpositive_integer().then(|| x.to_i64().map(i64::unsigned_abs)).flatten();
    let nums: Vec<(usize, u64)> = spec.numerator.iter().enumerate().filter_map(|(i, a)| negint(a).map(|v| (i, v))).collect();
    let dens: Vec<(usize, u64)> = spec.denominator.iter().enumerate().filter_map(|(i, b)| negint(b).map(|v| (i, v))).collect();
    match (nums.as_slice(), dens.as_slice()) {
        ([(i, m)], [(j, l)]) if l > m => Ok((*i, *m, *j, *l)),
        ([_], [_]) => Err(Error::InvalidSplit("the denominator -ℓ must satisfy ℓ > m".into())),
        _ => Err(Error::InvalidSplit(
            "expected exactly one nonpositive-integer numerator and one nonpositive-integer denominator".into(),
        )),
    }
}

/// Splits `spec` (ignoring any truncation order) at the negative-integer pair.
///
/// The tail terms carry `(-m)_r/(-ℓ)_r`, read as the limit of both bases
/// shifted by the same ε.
pub fn split_negative_denominator(spec: &HypergeometricSpec, rel_tol: f64) -> Result<SplitResult> {
    let (i, m, j, l) = find_pair(spec)?;
    let truncated_part = eval_truncated(spec, m)?;
    let mut others_a = spec.numerator.clone();
    others_a.remove(i);
    let mut others_b = spec.denominator.clone();
    others_b.remove(j);

    let r0 = l + 1;
    let z = &spec.argument;
    let first = pochhammer_negint_ratio(m, l, r0)? * exact_rising_product(&others_a, r0)
        / exact_rising_product(&others_b, r0)
        * z.pow(r0 as i32).expect("power")
        / factorial_exact(r0);
    if first.is_zero() {
        return Ok(SplitResult {
            m,
            l,
            truncated_part,
            tail_estimate: RealHP::ZERO,
            tail_terms_used: 0,
            tail_error_bound: RealHP::ZERO,
            rigorous: true,
        });
    }

    let mut num = vec![-Rational::from_int(m as i64)];
    num.extend(others_a);
    let mut den = vec![-Rational::from_int(l as i64)];
    den.extend(others_b);
    den.push(Rational::one());
    let series = RatioSeries { num, den, z: z.clone(), start: r0, first: RealHP::from_rational(&first) };
    let tail = sum_ratio_series(&series, rel_tol, DEFAULT_MAX_TERMS).map_err(|e| match e {
        Error::NotConvergent(msg) => Error::TailDivergent(msg),
        other => other,
    })?;
    Ok(SplitResult {
        m,
        l,
        truncated_part,
        tail_estimate: tail.value,
        tail_terms_used: tail.terms,
        tail_error_bound: RealHP::from_f64(tail.abs_error),
        rigorous: tail.rigorous,
    })
}
