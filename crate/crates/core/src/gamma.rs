//! Gamma function and relatives in [`RealHP`] precision.
//!
//! `ln Γ` uses the Stirling series with exact Bernoulli coefficients once the
//! argument has been shifted to `x >= 20` with the recurrence
//! `Γ(x+1) = xΓ(x)`; arguments below 1/2 go through the reflection formula.
//! At `x = 20` twenty Stirling terms bound the truncation error by about
//! `1e-34`, so accuracy is limited by the double-double arithmetic itself
//! (roughly 30 digits, less near the overflow threshold of `exp`).

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::real::RealHP;

const STIRLING_MIN: f64 = 20.0;
const STIRLING_TERMS: usize = 20;
/// Largest argument whose Gamma value fits in an `f64` exponent.
const GAMMA_MAX_ARG: f64 = 171.62;

/// Bernoulli numbers `B_0 ..= B_n` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::zero();
        let mut binom = Rational::one(); // C(m+1, 0)
        for (k, bk) in b.iter().enumerate() {
            acc += &binom * bk;
            binom = binom * Rational::from_int((m + 1 - k) as i64) / Rational::from_int(k as i64 + 1);
        }
        b.push(-acc / Rational::from_int(m as i64 + 1));
    }
    b
}

fn stirling_coefficients() -> &'static [RealHP] {
    static COEFFS: OnceLock<Vec<RealHP>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let b = bernoulli_numbers(2 * STIRLING_TERMS);
        (1..=STIRLING_TERMS)
            .map(|k| {
                let denom = Rational::from_int((2 * k * (2 * k - 1)) as i64);
                RealHP::from_rational(&(&b[2 * k] / denom))
            })
            .collect()
    })
}

fn half_ln_two_pi() -> RealHP {
    static V: OnceLock<RealHP> = OnceLock::new();
    *V.get_or_init(|| (RealHP::PI * 2.0).ln() * 0.5)
}

/// Stirling series, valid for `x >= STIRLING_MIN`.
fn ln_gamma_stirling(x: RealHP) -> RealHP {
    let inv = x.recip();
    let inv2 = inv.sqr();
    let mut pow = inv;
    let mut series = RealHP::ZERO;
    for c in stirling_coefficients() {
        series += *c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + half_ln_two_pi() + series
}

/// Number of unit shifts needed to bring `x` into the Stirling range.
fn shift_count(x: RealHP) -> u32 {
    if x.hi() >= STIRLING_MIN {
        0
    } else {
        (STIRLING_MIN - x.hi()).ceil() as u32
    }
}

fn rising_real(x: RealHP, n: u32) -> RealHP {
    let mut acc = RealHP::ONE;
    let mut t = x;
    for _ in 0..n {
        acc *= t;
        t += 1.0;
    }
    acc
}

fn check_finite(x: RealHP) -> Result<()> {
    if x.is_nan() {
        Err(Error::NotANumber("Gamma argument"))
    } else if !x.is_finite() {
        Err(Error::Domain("Gamma of an infinite argument".into()))
    } else {
        Ok(())
    }
}

fn nonpositive_integer(x: RealHP) -> Option<i64> {
    let h = x.hi();
    if h <= 0.0 && h.fract() == 0.0 && x.lo() == 0.0 {
        Some(h as i64)
    } else {
        None
    }
}

/// Γ(x) for real `x` away from the poles.
pub fn gamma_real(x: RealHP) -> Result<RealHP> {
    check_finite(x)?;
    if let Some(n) = nonpositive_integer(x) {
        return Err(Error::PoleAtNonpositiveInteger(n));
    }
    if x.hi() < 0.5 {
        let s = x.sin_pi();
        let g = gamma_positive(RealHP::ONE - x)?;
        let out = RealHP::PI / (s * g);
        if out.is_nan() {
            return Err(Error::NotANumber("Gamma reflection"));
        }
        return Ok(out);
    }
    gamma_positive(x)
}

fn gamma_positive(x: RealHP) -> Result<RealHP> {
    if x.hi() > GAMMA_MAX_ARG {
        return Err(Error::Overflow(x.to_f64()));
    }
    // Exact products for small integers.
    if x.hi().fract() == 0.0 && x.lo() == 0.0 && x.hi() <= 30.0 {
        return Ok(rising_real(RealHP::ONE, x.hi() as u32 - 1));
    }
    let n = shift_count(x);
    let shifted = x + n as f64;
    Ok(ln_gamma_stirling(shifted).exp() / rising_real(x, n))
}

/// ln Γ(x) for `x > 0`.
pub fn log_gamma(x: RealHP) -> Result<RealHP> {
    check_finite(x)?;
    if x.hi() <= 0.0 {
        return Err(Error::Domain(format!("log_gamma needs x > 0 (got {})", x.to_f64())));
    }
    if x == RealHP::ONE || x == RealHP::from_f64(2.0) {
        return Ok(RealHP::ZERO);
    }
    let n = shift_count(x);
    let shifted = x + n as f64;
    Ok(ln_gamma_stirling(shifted) - rising_real(x, n).ln())
}

/// 1/Γ(x), which is entire: zero at the nonpositive integers.
pub fn rgamma(x: RealHP) -> Result<RealHP> {
    check_finite(x)?;
    if nonpositive_integer(x).is_some() {
        return Ok(RealHP::ZERO);
    }
    if x.hi() < 0.5 {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let g = gamma_positive(RealHP::ONE - x)?;
        return Ok(x.sin_pi() * g / RealHP::PI);
    }
    if x.hi() > GAMMA_MAX_ARG {
        let lg = log_gamma(x)?;
        return Ok((-lg).exp());
    }
    Ok(gamma_positive(x)?.recip())
}

/// Γ(x) for a rational argument.
pub fn gamma_rational(x: &Rational) -> Result<RealHP> {
    if x.is_nonpositive_integer() {
        return Err(Error::PoleAtNonpositiveInteger(x.to_i64().unwrap_or(i64::MIN)));
    }
    gamma_real(RealHP::from_rational(x))
}

/// 1/Γ(x) for a rational argument.
pub fn rgamma_rational(x: &Rational) -> Result<RealHP> {
    if x.is_nonpositive_integer() {
        return Ok(RealHP::ZERO);
    }
    rgamma(RealHP::from_rational(x))
}

/// `α(α+1)…(α+n-1)` in extended precision.
pub fn pochhammer_float(alpha: RealHP, n: u64) -> RealHP {
    let mut acc = RealHP::ONE;
    let mut t = alpha;
    for _ in 0..n {
        if t.is_zero() {
            return RealHP::ZERO;
        }
        acc *= t;
        t += 1.0;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pochhammer::{factorial_exact, rising};
    use crate::rational::q;

    fn rel(a: RealHP, b: RealHP) -> f64 {
        ((a - b).abs() / b.abs()).to_f64()
    }

    fn g(x: f64) -> RealHP {
        gamma_real(RealHP::from_f64(x)).unwrap()
    }

    // Reference digits below were produced with an independent 40-digit
    // implementation and frozen here.
    #[test]
    fn reference_values() {
        assert_eq!(g(5.0).to_f64(), 24.0);
        let sqrt_pi = RealHP::PI.sqrt();
        assert!(rel(g(0.5), sqrt_pi) < 1e-28);
        let g34 = RealHP::parse_decimal("1.225416702465177645129098303362890526851").unwrap();
        assert!(rel(gamma_rational(&q(3, 4)).unwrap(), g34) < 1e-28);
        let gneg = RealHP::parse_decimal("-0.9453087204829418812256893244486107641587").unwrap();
        assert!(rel(g(-2.5), gneg) < 1e-28);
        let gsmall = RealHP::parse_decimal("999.4237724845954661149822012996440004652").unwrap();
        assert!(rel(gamma_rational(&q(1, 1000)).unwrap(), gsmall) < 1e-27);
        let gbig = RealHP::parse_decimal("5.562092414559999610705809659357742867669e305").unwrap();
        assert!(rel(g(170.5), gbig) < 1e-26);
        let gnbig = RealHP::parse_decimal("5.648220884223325471751312680983490245946e-306").unwrap();
        assert!(rel(g(-169.5), gnbig) < 1e-26);
    }

    #[test]
    fn poles_and_overflow() {
        assert_eq!(gamma_real(RealHP::from_f64(0.0)), Err(Error::PoleAtNonpositiveInteger(0)));
        assert_eq!(gamma_real(RealHP::from_f64(-7.0)), Err(Error::PoleAtNonpositiveInteger(-7)));
        assert!(matches!(gamma_real(RealHP::from_f64(180.0)), Err(Error::Overflow(_))));
        assert!(matches!(gamma_real(RealHP::from_f64(f64::NAN)), Err(Error::NotANumber(_))));
        assert_eq!(rgamma(RealHP::from_f64(-3.0)).unwrap(), RealHP::ZERO);
    }

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(RealHP::ONE).unwrap(), RealHP::ZERO);
        assert_eq!(log_gamma(RealHP::from_f64(2.0)).unwrap(), RealHP::ZERO);
        let l10 = RealHP::parse_decimal("12.80182748008146961120771787456670616428").unwrap();
        assert!(rel(log_gamma(RealHP::from_f64(10.0)).unwrap(), l10) < 1e-29);
        let lhalf = RealHP::parse_decimal("0.5723649429247000870717136756765293558236").unwrap();
        assert!(rel(log_gamma(RealHP::from_f64(0.5)).unwrap(), lhalf) < 1e-28);
        assert!(log_gamma(RealHP::from_f64(-1.5)).is_err());
    }

    #[test]
    fn functional_equation_grid() {
        for i in 1..=500 {
            let x = RealHP::from_rational(&q(i, 10));
            let lhs = gamma_real(x + 1.0).unwrap();
            let rhs = x * gamma_real(x).unwrap();
            assert!(rel(rhs, lhs) <= 1e-13, "x = {}", i as f64 / 10.0);
        }
    }

    #[test]
    fn reflection_grid() {
        for i in 1..100 {
            let x = RealHP::from_rational(&q(i, 100));
            let lhs = gamma_real(x).unwrap() * gamma_real(RealHP::ONE - x).unwrap();
            let rhs = RealHP::PI / x.sin_pi();
            assert!(rel(lhs, rhs) <= 1e-12, "x = {}", i as f64 / 100.0);
        }
    }

    #[test]
    fn factorial_agreement() {
        for n in 0..=20u64 {
            let exact = RealHP::from_rational(&factorial_exact(n));
            assert!(rel(gamma_real(RealHP::from_f64(n as f64 + 1.0)).unwrap(), exact) <= 1e-14);
        }
        // Non-integer path for comparison against the shifted product.
        let x = RealHP::from_f64(25.5);
        let via_shift = gamma_real(x).unwrap();
        let via_product = gamma_real(RealHP::from_f64(0.5)).unwrap() * pochhammer_float(RealHP::from_f64(0.5), 25);
        assert!(rel(via_shift, via_product) < 1e-28);
    }

    #[test]
    fn pochhammer_float_examples() {
        assert_eq!(pochhammer_float(RealHP::from_f64(0.5), 3).to_f64(), 1.875);
        assert_eq!(pochhammer_float(RealHP::from_f64(7.25), 0), RealHP::ONE);
        assert_eq!(pochhammer_float(RealHP::from_f64(-3.0), 5), RealHP::ZERO);
        let a = q(-7, 3);
        let exact = RealHP::from_rational(&rising(&a, 9));
        assert!(rel(pochhammer_float(RealHP::from_rational(&a), 9), exact) < 1e-29);
    }

    #[test]
    fn bernoulli_table() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[3], Rational::zero());
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[12], q(-691, 2730));
    }
}
