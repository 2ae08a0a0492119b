use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pochhammer::rising;
use crate::rational::Rational;

/// A `pFq` instance: parameters, argument and an optional truncation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergeometricSpec {
    pub numerator: Vec<Rational>,
    pub denominator: Vec<Rational>,
    pub argument: Rational,
    /// `Some(m)` sums exactly the terms `n = 0..=m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u64>,
}

impl HypergeometricSpec {
    pub fn new(numerator: Vec<Rational>, denominator: Vec<Rational>, argument: Rational) -> Self {
        HypergeometricSpec { numerator, denominator, argument, truncation: None }
    }

    pub fn truncated(mut self, m: u64) -> Self {
        self.truncation = Some(m);
        self
    }

    pub fn p(&self) -> usize {
        self.numerator.len()
    }

    pub fn q(&self) -> usize {
        self.denominator.len()
    }

    /// `N` when some numerator parameter equals `-N`; the smallest such `N`.
    pub fn terminating_order(&self) -> Option<u64> {
        self.numerator
            .iter()
            .filter(|a| a.is_nonpositive_integer())
            .filter_map(|a| a.to_i64())
            .map(|a| a.unsigned_abs())
            .min()
    }

    /// Number of terms an exact evaluation sums, if finite.
    pub fn term_count(&self) -> Option<u64> {
        match self.truncation {
            Some(m) => Some(m + 1),
            None => self.terminating_order().map(|n| n + 1),
        }
    }

    /// Fails with `PoleInRange` if some `(β_j)_n` vanishes for `n <= last`.
    pub fn check_denominators(&self, last: u64) -> Result<()> {
        for b in &self.denominator {
            if let Some(v) = b.to_i64() {
                if v <= 0 && v.unsigned_abs() < last {
                    return Err(Error::PoleInRange { param: b.clone(), index: v.unsigned_abs() + 1 });
                }
            }
        }
        Ok(())
    }

    /// The `n`-th term `[(α)]_n / [(β)]_n · zⁿ/n!`.
    pub fn term(&self, n: u64) -> Result<Rational> {
        self.check_denominators(n)?;
        let num: Rational = self.numerator.iter().map(|a| rising(a, n)).product();
        if num.is_zero() {
            return Ok(num);
        }
        let den: Rational = self.denominator.iter().map(|b| rising(b, n)).product();
        let zn = self.argument.pow(n as i32).expect("nonnegative power");
        Ok(num * zn / (den * rising(&Rational::one(), n)))
    }

    /// Terms `0..=m`, built with the term ratio.
    pub fn terms(&self, m: u64) -> Result<Vec<Rational>> {
        self.check_denominators(m)?;
        let mut out = Vec::with_capacity(m as usize + 1);
        let mut t = Rational::one();
        out.push(t.clone());
        for n in 0..m {
            if t.is_zero() {
                out.push(Rational::zero());
                continue;
            }
            let nn = Rational::from_int(n as i64);
            let mut num = self.argument.clone();
            for a in &self.numerator {
                num *= a + &nn;
            }
            let mut den = Rational::from_int(n as i64 + 1);
            for b in &self.denominator {
                den *= b + &nn;
            }
            t = t * num / den;
            out.push(t.clone());
        }
        Ok(out)
    }

    /// ω = Σβ − Σα.
    pub fn omega(&self) -> Rational {
        let sb: Rational = self.denominator.iter().cloned().sum();
        let sa: Rational = self.numerator.iter().cloned().sum();
        sb - sa
    }
}

fn join(list: &[Rational]) -> String {
    list.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for HypergeometricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}F{}[{}; {}; {}]",
            self.p(),
            self.q(),
            join(&self.numerator),
            join(&self.denominator),
            self.argument
        )?;
        if let Some(m) = self.truncation {
            write!(f, "_{m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Finitely many terms (terminating, truncated or `z = 0`).
    Polynomial,
    /// `p <= q`: converges for every `z`.
    Entire,
    /// `p = q+1`, `|z| < 1`.
    UnitDisc,
    /// `p = q+1`, `|z| = 1` and the ω condition holds.
    BoundaryConvergent,
    /// `p = q+1`, `|z| = 1` and the ω condition fails.
    BoundaryDivergent,
    /// `p > q+1`, or `|z| > 1` with `p = q+1`.
    Divergent,
}

impl Regime {
    pub fn converges(self) -> bool {
        !matches!(self, Regime::BoundaryDivergent | Regime::Divergent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceInfo {
    pub omega: Rational,
    pub regime: Regime,
}

pub fn convergence_info(spec: &HypergeometricSpec) -> ConvergenceInfo {
    let omega = spec.omega();
    let z = &spec.argument;
    let regime = if spec.term_count().is_some() || z.is_zero() {
        Regime::Polynomial
    } else if spec.p() <= spec.q() {
        Regime::Entire
    } else if spec.p() > spec.q() + 1 {
        Regime::Divergent
    } else {
        let az = z.abs();
        if az < Rational::one() {
            Regime::UnitDisc
        } else if az > Rational::one() {
            Regime::Divergent
        } else if omega.is_positive() || (z.is_negative() && omega > Rational::from_int(-1)) {
            Regime::BoundaryConvergent
        } else {
            Regime::BoundaryDivergent
        }
    };
    ConvergenceInfo { omega, regime }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn regimes() {
        let h = q(1, 2);
        let s = HypergeometricSpec::new(vec![h.clone(), h.clone(), h], ints(&[1, 1]), q(1, 1));
        let info = convergence_info(&s);
        assert_eq!(info.omega, q(1, 2));
        assert_eq!(info.regime, Regime::BoundaryConvergent);

        let s = HypergeometricSpec::new(vec![q(1, 3), q(2, 5)], vec![q(7, 2), q(1, 9)], q(30, 1));
        assert_eq!(convergence_info(&s).regime, Regime::Entire);

        let s = HypergeometricSpec::new(ints(&[1, 1]), ints(&[2]), q(1, 1));
        let info = convergence_info(&s);
        assert_eq!(info.omega, Rational::zero());
        assert_eq!(info.regime, Regime::BoundaryDivergent);

        // Alternating boundary: -1 < ω <= 0 still converges.
        let s = HypergeometricSpec::new(ints(&[1, 1]), ints(&[2]), q(-1, 1));
        assert_eq!(convergence_info(&s).regime, Regime::BoundaryConvergent);

        let s = HypergeometricSpec::new(ints(&[1, 1]), ints(&[2]), q(1, 2));
        assert_eq!(convergence_info(&s).regime, Regime::UnitDisc);
        let s = HypergeometricSpec::new(ints(&[1, 1]), ints(&[2]), q(3, 2));
        assert_eq!(convergence_info(&s).regime, Regime::Divergent);
        let s = HypergeometricSpec::new(ints(&[-3, 1]), ints(&[2]), q(3, 2));
        assert_eq!(convergence_info(&s).regime, Regime::Polynomial);
    }

    #[test]
    fn display_and_terms() {
        let s = HypergeometricSpec::new(ints(&[-1, 1, 1]), vec![q(-2, 1), q(3, 2)], q(1, 1)).truncated(1);
        assert_eq!(s.to_string(), "3F2[-1, 1, 1; -2, 3/2; 1]_1");
        assert_eq!(s.terms(1).unwrap(), vec![q(1, 1), q(1, 3)]);
        assert_eq!(s.term(1).unwrap(), q(1, 3));
        assert_eq!(s.term_count(), Some(2));
        assert!(matches!(s.terms(3), Err(Error::PoleInRange { index: 3, .. })));
    }
}
