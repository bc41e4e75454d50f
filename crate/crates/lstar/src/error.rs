use thiserror::Error;

/// Errors produced by the exact and numeric pipelines.
///
/// Mathematical findings (a conjecture failing on a row, a vanishing twist)
/// are *data* for the scan layer; the variants here are preconditions and
/// genuine failures.
#[derive(Debug, Error)]
pub enum Error {
    /// Two lattices were expected to span the same rational subspace.
    #[error("lattice spans differ")]
    SpanMismatch,
    /// A lattice basis is not of full rank in its span.
    #[error("lattice basis is rank-deficient")]
    RankDeficient,
    /// `-d` is not the discriminant of an imaginary quadratic field
    /// (resp. `d` not a fundamental discriminant where signed input is taken).
    #[error("{0} is not a fundamental discriminant (up to the expected sign)")]
    NotFundamental(i64),
    /// The operation requires a nonzero input.
    #[error("input must be nonzero")]
    ZeroInput,
    /// A prime was required.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// Two quantities that must be coprime are not.
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    /// No Hecke factor matches the curve's eigenvalue system.
    #[error("no factor of this level matches the curve's Hecke eigenvalues")]
    NoMatch,
    /// The level must be prime for this normalization.
    #[error("level {0} is not prime")]
    NotPrimeLevel(u64),
    /// The twisted winding element projects to zero: the twisted L-value
    /// vanishes and no index is defined.
    #[error("twisted winding element projects to zero (vanishing twisted L-value)")]
    ZeroTwist,
    /// Fourier coefficient requested at a prime of bad reduction.
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    /// A numeric routine could not reach the requested accuracy.
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    /// `L(E,1)` vanishes numerically; the analytic-Sha formula needs rank 0.
    #[error("L(E,1) vanishes numerically (analytic rank is positive)")]
    RankPositive,
    /// The twisted L-value vanishes numerically; row skipped.
    #[error("twisted L-value vanishes numerically (positive-rank twist)")]
    RankPositiveTwist,
    /// A float did not round to a rational with the allowed denominator
    /// within the residual tolerance. Never guessed.
    #[error("value {value} does not round to a denominator-{denominator} rational (residual {residual})")]
    RoundingAmbiguous {
        value: String,
        denominator: String,
        residual: String,
    },
    /// Ideal-class enumeration exceeded the Eichler mass: internal error.
    #[error("ideal-class mass exceeded (N-1)/12: inconsistent enumeration")]
    MassOverflow,
    /// A vector required to be nonzero in the isotypic quotient is zero.
    #[error("vector projects to zero in the isotypic quotient")]
    ZeroVector,
    /// The Brandt and modular-symbol Hecke eigensystems failed to match.
    #[error("Brandt/modular-symbol eigenvalue systems do not match")]
    EigenvalueMismatch,
    /// A squareness check was requested where an L-value vanishes.
    #[error("an L-value in the identity vanishes; no squareness statement")]
    ZeroLValue,
    /// Database line could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A parsed record failed recomputation of its stated invariants.
    #[error("validation failed for {label}: {msg}")]
    Validation { label: String, msg: String },
    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
