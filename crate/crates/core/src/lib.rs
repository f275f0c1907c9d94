//! Exact-arithmetic evaluation and machine verification of congruences for
//! generalized multiple harmonic sums.
//!
//! The library is organized in layers:
//! - [`arith`]: big-rational plumbing, canonical residues, factorizations,
//!   modular inverses, CRT.
//! - [`bernoulli`]: exact Bernoulli numbers/polynomials and their modular
//!   reductions guarded by von Staudt-Clausen denominators.
//! - [`harmonic`]: brute-force oracles for triple and k-fold harmonic sums,
//!   progression sums, and the fast inclusion-exclusion evaluators.
//! - [`congruence`]: closed-form right-hand sides and verifiers that compare
//!   them against the oracles, emitting structured reports.
//! - [`selftest`]: the canned verification grid behind `multiharmonic selftest`.
//! - [`cli`]: the command-line front end.
//!
//! See the crate examples for runnable tours of each capability.

pub mod arith;
pub mod bernoulli;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod harmonic;
pub mod selftest;

pub use arith::{
    crt_combine, factorize, mod_inverse, rational_mod, Factorization, InverseTable, Rational,
    Residue,
};
pub use bernoulli::{
    bernoulli, bernoulli_mod, bernoulli_numbers, bernoulli_poly_eval, half_value_identity,
    raabe_multiplication, staudt_clausen_denominator, BernoulliTable,
};
pub use congruence::{
    theorem1_rhs, theorem2_rhs, verify_corollary, verify_lemma, verify_literature, verify_theorem1,
    verify_theorem2, CongruenceReport, Corollary, Lemma, Literature, Method, ReportValue,
    SubsetTerm,
};
pub use error::{Error, Result};
pub use harmonic::{
    ap_power_sum_bernoulli, ap_power_sum_direct, doubling_check, half_cube_sum, kfold_sum_naive,
    progression_reciprocal_sum, progression_square_sum, signed_cube_sum,
    triple_sum_fast_alternating, triple_sum_fast_uniform, triple_sum_naive, CoprimalityFilter,
    SignPattern,
};
