//! `pFq` series: exact truncated and terminating sums, the reversal
//! identities, floating-point summation of infinite series, and the split of
//! a series with a negative-integer denominator into a truncated part and a
//! tail.

pub mod exact;
pub mod numeric;
pub mod spec;
pub mod split;

pub use exact::{
    eval_exact, eval_terminating, eval_truncated, reverse_terminating, reverse_truncated, sum_reversed, Reversed,
};
pub use numeric::{eval_nonterminating_float, sum_ratio_series, FloatSum, RatioSeries, DEFAULT_MAX_TERMS};
pub use spec::{convergence_info, ConvergenceInfo, HypergeometricSpec, Regime};
pub use split::{split_negative_denominator, SplitResult};
