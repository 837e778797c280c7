//! Error type shared by every module of the crate.
//!
//! Each variant name is part of the public contract: the CLI prints the
//! variant name verbatim and exits with code 1, so tests can grep for it.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Leading coefficient is not invertible in the coefficient ring.
    #[error("NotAUnit: leading coefficient {0} is not invertible")]
    NotAUnit(String),

    /// Binary series operation over incompatible variable tags.
    #[error("RingMismatch: cannot combine series in `{0}` with series in `{1}`")]
    RingMismatch(&'static str, &'static str),

    /// Inner series of a composition has a nonzero constant term.
    #[error("CompositionDomain: inner series has valuation {0}, need >= 1")]
    CompositionDomain(i64),

    /// Series reversion needs valuation exactly 1 and an invertible linear coefficient.
    #[error("NotReversible: valuation {val}, linear coefficient {linear}")]
    NotReversible { val: i64, linear: String },

    /// Integration hit a nonzero coefficient at exponent -1.
    #[error("LogarithmicTerm: coefficient {0} at exponent -1 cannot be integrated")]
    LogarithmicTerm(String),

    /// Weierstrass data with vanishing discriminant.
    #[error("SingularCurve: discriminant is zero for coefficients {0}")]
    SingularCurve(String),

    /// A point failed the exact on-curve check.
    #[error("NotOnCurve: ({x}, {y}) does not satisfy the curve equation")]
    NotOnCurve { x: String, y: String },

    /// No built-in eta-product expansion for the requested level.
    #[error("NoEtaProduct: no eta-product table for level {0}")]
    NoEtaProduct(u64),

    /// The eta-product exponent sum d*r_d is not divisible by 24.
    #[error("NoEtaProduct: exponent sum {0} is not a positive multiple of 24")]
    BadEtaExponent(i64),

    /// Hecke expansion is missing a_p for a needed prime.
    #[error("InsufficientPrimeData: missing a_p for prime {0}")]
    InsufficientPrimeData(u64),

    /// Coefficient file or config text failed to parse.
    #[error("ParseError: {0}")]
    ParseError(String),

    /// Coefficient list violates a_1 = 1, multiplicativity, or the Hecke recursion.
    #[error("InvalidEigenform: {0}")]
    InvalidEigenform(String),

    /// The X/Y solve produced an inconsistent or undersized system.
    #[error("NotParametrization: {0}")]
    NotParametrization(String),

    /// Not enough newform coefficients for the requested precision.
    #[error("InsufficientPrimeData: have {have} coefficients, need {need}")]
    InsufficientCoefficients { have: usize, need: usize },

    /// A group-law coefficient that must be integral is not.
    #[error("NonIntegralCoefficient: t1^{i} t2^{j} coefficient {value}")]
    NonIntegralCoefficient { i: usize, j: usize, value: String },

    /// Formal sum collapsed to the identity, so there is no x-coordinate to compare.
    #[error("DegenerateSum: formal point sum is the point at infinity")]
    DegenerateSum,

    /// Numeric series tail estimate is growing instead of shrinking.
    #[error("DivergenceSuspected: tail estimate {0:e} at evaluation point")]
    DivergenceSuspected(f64),

    /// Character is not primitive modulo its stated modulus.
    #[error("NotPrimitive: character mod {0} is induced from a smaller modulus")]
    NotPrimitive(u32),

    /// Unsupported twist request (bad modulus/order combination).
    #[error("BadTwist: {0}")]
    BadTwist(String),

    /// Numeric evaluation requested at (or too near) a lattice point.
    #[error("PoleAt: z = {0} is within {1:e} of a lattice point")]
    PoleAt(String, f64),

    /// Rational reconstruction succeeded but the point is not on the curve.
    #[error("SpuriousMatch: reconstructed ({x}, {y}) is off the curve")]
    SpuriousMatch { x: String, y: String },

    /// Value does not lie on the requested period line within tolerance.
    #[error("NotOnLine: residual {0:e} exceeds tolerance")]
    NotOnLine(f64),

    /// Rational reconstruction failed within the denominator bound.
    #[error("NoMatch: no rational with denominator <= {0} within tolerance")]
    NoMatch(u64),

    /// An example driver sub-check failed; names the first failing quantity.
    #[error("ExampleCheckFailed: {quantity} (got {got}, want {want})")]
    ExampleCheckFailed {
        quantity: String,
        got: String,
        want: String,
    },

    /// Cyclotomic division by an element whose norm is not a rational constant.
    #[error("NonConstantNorm: cannot invert {0} by conjugation")]
    NonConstantNorm(String),

    /// Unknown curve name passed to the registry.
    #[error("UnknownCurve: {0}")]
    UnknownCurve(String),
}

pub type Result<T> = std::result::Result<T, Error>;
