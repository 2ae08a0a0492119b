//! Exact and extended-precision verification of Clausen-series summation
//! theorems (Watson, Saalschütz, Whipple and Dixon families, including their
//! truncated forms with negative-integer parameters) and of the Mellin
//! transforms of `e^{-μt}` times a truncated Goursat `₂F₂` polynomial.
//!
//! - [`rational`] and [`pochhammer`]: exact scalars and Pochhammer symbols.
//! - [`real`] and [`gamma`]: double-double reals, Gamma and log-Gamma.
//! - [`series`]: truncated, terminating and convergent `pFq` evaluation,
//!   term-order reversal and the split of a `₃F₂` with a negative-integer
//!   denominator into a truncated part and a tail.
//! - [`catalog`]: the summation theorems, their side conditions,
//!   verification and derivation checks.
//! - [`mellin`]: the Mellin-transform cases and Gauss–Laguerre quadrature.
//! - [`sweep`] and [`report`]: seeded randomized sweeps and JSON reports.

pub mod error;
pub mod gamma;
pub mod mellin;
pub mod pochhammer;
pub mod rational;
pub mod catalog;
pub mod series;
pub mod real;
pub mod report;
pub mod sweep;

pub use error::{Error, ParseRationalError, Result};
pub use pochhammer::{factorial_exact, pochhammer_exact, pochhammer_negint_ratio, PochhammerResult};
pub use rational::Rational;
pub use real::RealHP;
pub use catalog::{
    derivation_check, instantiate, list_theorems, verify, InstantiateOptions, Params, TheoremId, Verdict,
    VerificationReport,
};
pub use mellin::{mellin_case_closed_form, mellin_quadrature, mellin_truncated_2f2, verify_mellin_case, MellinCase, MellinInstance, MellinReport};
pub use report::ReportDocument;
pub use series::HypergeometricSpec;
pub use sweep::{run_sweep, SweepConfig};
