//! Exact Pochhammer symbols.
//!
//! `(α)_p = Γ(α+p)/Γ(α)` with the usual conventions for nonpositive integer
//! bases: `(0)_0 = 1`, `(-k)_n = (-1)^n k!/(k-n)!` for `n <= k` and `0`
//! beyond, and `(α)_{-n} = (-1)^n/(1-α)_n`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum PochhammerResult {
    Value(Rational),
    Pole,
}

impl PochhammerResult {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            PochhammerResult::Value(v) => Some(v),
            PochhammerResult::Pole => None,
        }
    }

    pub fn into_value(self) -> Option<Rational> {
        match self {
            PochhammerResult::Value(v) => Some(v),
            PochhammerResult::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, PochhammerResult::Pole)
    }
}

/// Rising factorial `α(α+1)…(α+n-1)` for `n >= 0`.
///
/// For `α = -k` this is automatically `(-1)^n k!/(k-n)!` when `n <= k` and
/// zero when `n > k`.
pub fn rising(alpha: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = alpha.clone();
    for _ in 0..n {
        if x.is_zero() {
            return Rational::zero();
        }
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// `(α)_p` for any signed integer order.
///
/// Negative orders follow `(α)_{-n} = 1/(α-n)_n`. The quotient is reported as
/// a pole whenever `Γ(α-n)` is infinite, which covers both `α ∈ {1,…,n}` and
/// every nonpositive integer `α` (no limit convention is applied there).
pub fn pochhammer_exact(alpha: &Rational, p: i64) -> PochhammerResult {
    if p >= 0 {
        return PochhammerResult::Value(rising(alpha, p as u64));
    }
    let n = p.unsigned_abs();
    if alpha.is_integer() {
        // Γ(α-n) is finite only if α-n >= 1.
        let shifted = alpha - Rational::from_int(n as i64);
        if !shifted.is_positive() {
            return PochhammerResult::Pole;
        }
    }
    let denom = rising(&(Rational::one() - alpha), n);
    match denom.recip() {
        Some(inv) => {
            let sign = if n.is_multiple_of(2) { inv } else { -inv };
            PochhammerResult::Value(sign)
        }
        None => PochhammerResult::Pole,
    }
}

/// `lim_{ε→0} (-m+ε)_r / (-ℓ+ε)_r` for `ℓ >= m` and `r >= ℓ+1`.
///
/// Both symbols contain exactly one vanishing factor in that range; the limit
/// of their ratio is `(-1)^{m-ℓ} m! (r-1-m)! / (ℓ! (r-1-ℓ)!)`.
pub fn pochhammer_negint_ratio(m: u64, l: u64, r: u64) -> Result<Rational> {
    if l < m {
        return Err(Error::Domain(format!("ratio needs l >= m (got m = {m}, l = {l})")));
    }
    if r <= l {
        return Err(Error::Domain(format!(
            "limit ratio applies only for r >= l+1 (got l = {l}, r = {r}); use pochhammer_exact below that"
        )));
    }
    let num = factorial_big(m) * factorial_big(r - 1 - m);
    let den = factorial_big(l) * factorial_big(r - 1 - l);
    let value = Rational::from_bigints(num, den).expect("factorials are positive");
    Ok(if (l - m).is_multiple_of(2) { value } else { -value })
}

pub fn factorial_exact(n: u64) -> Rational {
    Rational::from(factorial_big(n))
}

fn factorial_big(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1u32), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn val(alpha: Rational, p: i64) -> Rational {
        pochhammer_exact(&alpha, p).into_value().expect("value")
    }

    #[test]
    fn five_cases() {
        assert_eq!(val(q(7, 3), 0), Rational::one());
        assert_eq!(val(Rational::zero(), 0), Rational::one());
        assert_eq!(val(q(-3, 1), 5), Rational::zero());
        assert_eq!(val(q(-3, 1), 2), q(6, 1));
        assert_eq!(val(q(1, 2), 3), q(15, 8));
        assert_eq!(val(q(3, 1), -1), q(1, 2));
        assert_eq!(val(q(1, 2), -2), q(4, 3));
    }

    #[test]
    fn negative_order_poles() {
        // Γ(α-n) infinite.
        assert!(pochhammer_exact(&q(1, 1), -1).is_pole());
        assert!(pochhammer_exact(&q(2, 1), -3).is_pole());
        // Both Gammas infinite: no limit convention.
        assert!(pochhammer_exact(&q(0, 1), -1).is_pole());
        assert!(pochhammer_exact(&q(-4, 1), -2).is_pole());
        // Integer base far enough from the poles.
        assert_eq!(val(q(5, 1), -2), q(1, 12));
    }

    #[test]
    fn negint_ratio_examples() {
        assert_eq!(pochhammer_negint_ratio(1, 2, 3).unwrap(), q(-1, 2));
        assert_eq!(pochhammer_negint_ratio(0, 1, 2).unwrap(), q(-1, 1));
        assert_eq!(pochhammer_negint_ratio(2, 2, 3).unwrap(), q(1, 1));
        assert!(pochhammer_negint_ratio(3, 2, 5).is_err());
        assert!(pochhammer_negint_ratio(1, 3, 3).is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial_exact(0), Rational::one());
        assert_eq!(factorial_exact(5), q(120, 1));
        let oracle: i64 = (1..=12).product();
        assert_eq!(factorial_exact(12), Rational::from_int(oracle));
        assert_eq!(factorial_exact(12), q(479001600, 1));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..8).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn recurrence(alpha in small_rational(), p in -6i64..8) {
            let here = pochhammer_exact(&alpha, p);
            let next = pochhammer_exact(&alpha, p + 1);
            if let (Some(a), Some(b)) = (here.value(), next.value()) {
                prop_assert_eq!(b, &(a * (&alpha + Rational::from_int(p))));
            }
        }

        #[test]
        fn splitting(alpha in small_rational(), p in -5i64..6, s in -5i64..6) {
            let whole = pochhammer_exact(&alpha, p + s);
            let left = pochhammer_exact(&alpha, p);
            let right = pochhammer_exact(&(&alpha + Rational::from_int(p)), s);
            if let (Some(w), Some(l), Some(r)) = (whole.value(), left.value(), right.value()) {
                prop_assert_eq!(w, &(l * r));
            }
        }

        #[test]
        fn negative_integer_cases_agree(k in 0u64..15, n in 0u64..15) {
            prop_assume!(n <= k);
            let direct = rising(&Rational::from_int(-(k as i64)), n);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let formula = Rational::from_int(sign) * factorial_exact(k) / factorial_exact(k - n);
            prop_assert_eq!(direct, formula);
        }

        #[test]
        fn ratio_is_zero_between_m_and_l(m in 0u64..6, extra in 0u64..6, r_off in 1u64..7) {
            let l = m + extra;
            let r = m + r_off;
            prop_assume!(r <= l);
            let top = rising(&Rational::from_int(-(m as i64)), r);
            let bottom = rising(&Rational::from_int(-(l as i64)), r);
            prop_assert!(top.is_zero());
            prop_assert!(!bottom.is_zero());
        }
    }
}
