//! Fixtures shared by the benchmarks.

use korobov_core::{Criterion, Norm, ProblemSpec, WeightFamily};

/// Polynomially decaying weights `γ_j = j^{-2}` with `α = 2`.
pub fn poly_spec(d: usize) -> ProblemSpec {
    let fam = WeightFamily::polynomial(1.0, 2.0).expect("valid family");
    ProblemSpec::new(d, 2.0, fam).expect("valid spec")
}

/// Same weights for `L_∞` under the normalized criterion.
pub fn linf_spec(d: usize) -> ProblemSpec {
    poly_spec(d)
        .with_norm(Norm::LInf)
        .expect("L_inf is supported")
        .with_criterion(Criterion::Norm)
}
