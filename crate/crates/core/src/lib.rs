//! Spectral quantities, minimal errors, information complexity and
//! tractability verdicts for `L_2`/`L_∞` approximation in weighted Korobov
//! spaces of periodic functions.
//!
//! The eigenvalues of `W_d = APP_{d,2}^* APP_{d,2}` are the values of the
//! decay function `r(h) = Π_j ρ(h_j)` with `ρ(0) = 1` and
//! `ρ(h) = γ_j |h|^{-α}` otherwise. Everything else is built on enumerating
//! those values, either above a threshold or in non-increasing order.

pub mod complexity;
pub mod error;
pub mod harness;
pub mod numerics;
pub mod spectrum;
pub mod tractability;
pub mod weights;

pub use complexity::{
    head_sum, info_complexity, initial_error, minimal_error_all, nth_eigenvalue,
    optimize_spline_lambda, optimize_spline_log_m, qpt_lower_bound, spline_error_bound,
    spline_log_error_bound, spline_n_sufficient, ComplexityResult, SplineSufficient, Witness,
};
pub use error::{Error, Result};
pub use numerics::{fit_loglog_slope, is_prime, next_prime, riemann_zeta, ZetaValue};
pub use spectrum::{
    count_above, decay_value, head_above, log_total_sum, sum_above, total_sum, Criterion,
    EigenBlock, HeadStats, InfoClass, Norm, ProblemSpec, SpectrumCursor, DEFAULT_CAP,
};
pub use tractability::{
    classify, qpt_exponent_value, spt_exponent_value, Notion, TractabilityReport, Verdict,
};
pub use weights::{Exponent, ExponentValue, Provenance, TailRule, WeightFamily};
