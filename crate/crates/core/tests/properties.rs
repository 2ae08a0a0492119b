use clausen_core::catalog::{conditions, relative_difference, rhs_exact, rhs_float, TheoremId, Values};
use clausen_core::gamma::pochhammer_float;
use clausen_core::series::{eval_terminating, eval_truncated};
use clausen_core::sweep::run_sweep;
use clausen_core::{pochhammer_exact, HypergeometricSpec, Rational, RealHP, ReportDocument, SweepConfig};
use proptest::prelude::*;

fn rational(mag: i64) -> impl Strategy<Value = Rational> {
    (-mag..=mag, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn values(m: i64, a: Rational, b: Rational, g: Rational) -> Values {
    Values { m, k: 0, a, b, g, d: Rational::zero() }
}

fn admissible(id: TheoremId, v: &Values) -> bool {
    conditions(id, v).iter().all(|c| c.holds())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // The Gamma form with β in place of γ reduces to the Pochhammer form.
    #[test]
    fn term_gamma_matches_term_m(m in 1i64..8, a in rational(15), b in rational(15)) {
        let gamma_form = values(m, a.clone(), b.clone(), Rational::zero());
        let pochhammer_form = values(m, a, Rational::zero(), b);
        prop_assume!(admissible(TheoremId::DixonTermGamma, &gamma_form));
        prop_assume!(admissible(TheoremId::DixonTermM, &pochhammer_form));
        let exact = rhs_exact(TheoremId::DixonTermM, &pochhammer_form);
        let float = rhs_float(TheoremId::DixonTermGamma, &gamma_form, 1e-20);
        if let (Ok(exact), Ok((float, _))) = (exact, float) {
            let exact = RealHP::from_rational(&exact);
            if exact.is_zero() {
                prop_assert!(float.abs().to_f64() < 1e-20);
            } else {
                prop_assert!(relative_difference(float, exact) < 1e-20);
            }
        }
    }

    #[test]
    fn partial_sums_differ_by_one_term(
        num in proptest::collection::vec(rational(10), 0..4),
        den in proptest::collection::vec(rational(10), 0..3),
        z in rational(4),
        m in 0u64..10,
    ) {
        let spec = HypergeometricSpec::new(num, den, z);
        prop_assume!(spec.check_denominators(m + 1).is_ok());
        let step = eval_truncated(&spec, m + 1).unwrap() - eval_truncated(&spec, m).unwrap();
        prop_assert_eq!(step, spec.term(m + 1).unwrap());
    }

    #[test]
    fn terminating_sum_ignores_later_terms(
        m in 0i64..8,
        extra in 1u64..5,
        a in rational(10),
        b in rational(10),
        z in rational(4),
    ) {
        prop_assume!(!b.is_nonpositive_integer());
        let spec = HypergeometricSpec::new(vec![Rational::from_int(-m), a], vec![b], z);
        let value = eval_terminating(&spec).unwrap();
        prop_assert_eq!(eval_truncated(&spec, m as u64 + extra).unwrap(), value);
    }

    #[test]
    fn float_pochhammer_tracks_exact(alpha in rational(30), n in 0u64..20) {
        let exact = pochhammer_exact(&alpha, n as i64).into_value().unwrap();
        let float = pochhammer_float(RealHP::from_rational(&alpha), n);
        let exact = RealHP::from_rational(&exact);
        if exact.is_zero() {
            prop_assert!(float.is_zero());
        } else {
            prop_assert!(relative_difference(float, exact) < 1e-28);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_round_trip(seed in any::<u64>()) {
        let cfg = SweepConfig {
            theorems: vec![TheoremId::WatsonTruncM, TheoremId::DixonTruncA, TheoremId::SaalschutzTermB],
            edges: true,
            trials: 2,
            seed,
            ..Default::default()
        };
        let doc = ReportDocument::new(cfg.clone(), run_sweep(&cfg, 1));
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        prop_assert!(back.is_consistent());
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.summary.mismatch, 0);
    }
}
