//! Generalized Gauss–Laguerre rules for the weight `x^a e^{-x}` on `(0, ∞)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gamma::gamma_real;
use crate::rational::Rational;
use crate::real::RealHP;

#[derive(Debug, Clone)]
pub struct LaguerreRule {
    pub nodes: Vec<RealHP>,
    pub weights: Vec<RealHP>,
}

impl LaguerreRule {
    /// `Σ w_i f(x_i)`.
    pub fn apply(&self, f: impl Fn(RealHP) -> RealHP) -> RealHP {
        self.nodes.iter().zip(&self.weights).fold(RealHP::ZERO, |acc, (&x, &w)| acc + w * f(x))
    }
}

/// `(L_n^{(a)}(x), L_{n-1}^{(a)}(x))` by the three-term recurrence.
fn laguerre_pair(n: usize, a: RealHP, x: RealHP) -> (RealHP, RealHP) {
    let mut prev = RealHP::ONE;
    let mut cur = RealHP::ONE + a - x;
    if n == 0 {
        return (prev, RealHP::ZERO);
    }
    for k in 1..n {
        let kk = k as f64;
        let next = ((a - x + (2.0 * kk + 1.0)) * cur - (a + kk) * prev) / (kk + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Number of eigenvalues of the Jacobi matrix below `x` (Sturm count).
fn sturm_count(diag: &[f64], off2: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off2[i - 1] };
        q = diag[i] - x - if q != 0.0 { e2 / q } else { e2 / f64::EPSILON };
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn build(n: usize, a: &Rational) -> Result<LaguerreRule> {
    if *a <= Rational::from_int(-1) {
        return Err(Error::QuadratureFailure(format!("weight exponent {a} must exceed -1")));
    }
    let af = a.to_f64();
    let ahp = RealHP::from_rational(a);
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0 + af).collect();
    let off2: Vec<f64> = (1..n).map(|k| k as f64 * (k as f64 + af)).collect();
    let upper = (0..n)
        .map(|i| {
            let l = if i > 0 { off2[i - 1].sqrt() } else { 0.0 };
            let r = if i + 1 < n { off2[i].sqrt() } else { 0.0 };
            diag[i] + l + r
        })
        .fold(0.0, f64::max);

    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let (mut lo, mut hi) = (0.0, upper);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(&diag, &off2, mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut x = RealHP::from_f64(0.5 * (lo + hi));
        for _ in 0..4 {
            let (ln, lm) = laguerre_pair(n, ahp, x);
            let deriv = (ln * nf - lm * (ahp + nf)) / x;
            if deriv.is_zero() {
                break;
            }
            x -= ln / deriv;
        }
        if !x.is_finite() || x.hi() <= 0.0 {
            return Err(Error::QuadratureFailure(format!("node {i} of {n} did not converge")));
        }
        nodes.push(x);
    }

    // w_i = Γ(n+a+1) x_i / (n! (n+1)² L_{n+1}(x_i)²)
    let scale = gamma_real(ahp + (nf + 1.0))? / gamma_real(RealHP::from_f64(nf + 1.0))? / ((nf + 1.0) * (nf + 1.0));
    let weights = nodes
        .iter()
        .map(|&x| {
            let (l_next, _) = laguerre_pair(n + 1, ahp, x);
            scale * x / l_next.sqr()
        })
        .collect::<Vec<_>>();
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::QuadratureFailure("non-finite weight".into()));
    }
    Ok(LaguerreRule { nodes, weights })
}

type Cache = Mutex<HashMap<(usize, Rational), Arc<LaguerreRule>>>;

/// The `n`-node rule for weight `x^a e^{-x}`, built once per `(n, a)`.
pub fn laguerre_rule(n: usize, a: &Rational) -> Result<Arc<LaguerreRule>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, a.clone());
    if let Some(rule) = cache.lock().expect("rule cache").get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build(n, a)?);
    cache.lock().expect("rule cache").insert(key, rule.clone());
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_rational;
    use crate::rational::q;

    #[test]
    fn integrates_monomials_exactly() {
        for a in [q(0, 1), q(-1, 2), q(5, 3), q(17, 2)] {
            let rule = laguerre_rule(20, &a).unwrap();
            for p in [0u32, 1, 5, 17, 39] {
                let got = rule.apply(|x| x.powi(p as i64));
                let want = gamma_rational(&(&a + (p as i64 + 1))).unwrap();
                let rel = ((got - want) / want).abs().to_f64();
                assert!(rel < 1e-24, "a={a} p={p}: {rel:e}");
            }
        }
    }
}
