use thiserror::Error;

/// Errors surfaced by the arithmetic and summation layers.
///
/// Verifiers in [`crate::congruence`] never propagate these past a report;
/// they record them in the report notes instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion target shares a factor with the modulus.
    #[error("not invertible modulo {modulus} (shared factor {shared})")]
    NotInvertible { shared: u64, modulus: u64 },

    /// CRT parts whose moduli are not pairwise coprime.
    #[error("moduli {a} and {b} are not coprime")]
    NonCoprimeModuli { a: u64, b: u64 },

    /// An admitted summation index is not a unit modulo the evaluation modulus.
    #[error("admitted index {index} is not invertible modulo {modulus}")]
    NonInvertibleTerm { index: u64, modulus: u64 },

    /// Progression residue shares a factor with the progression modulus.
    #[error("residue class {x} shares a factor with {radical}")]
    NonCoprimeResidue { x: u64, radical: u64 },

    /// A closed form with phi(P) - 2 = 0 in a denominator.
    #[error("degenerate denominator: phi({modulus}) - 2 = 0")]
    DegenerateDenominator { modulus: u64 },

    /// The mod-n^2 pair sum was not divisible by n as the lift requires.
    #[error("lift divisibility failure: {value} is not divisible by {modulus} in the square ring")]
    LiftDivisibilityFailure { value: u64, modulus: u64 },

    /// Input outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
