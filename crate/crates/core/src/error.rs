use thiserror::Error;

use crate::domain::Domain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("coefficient of term {index} is zero")]
    ZeroCoefficient { index: usize },
    #[error("an equation needs at least 2 terms, found {found}")]
    TooFewTerms { found: usize },
}

impl ParseError {
    pub(crate) fn at(column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line: 1,
            column,
            message: message.into(),
        }
    }
}

/// One of the three side conditions required by the Fourier construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Assumption {
    /// `m = |c|` strictly exceeds `|a|` and `|b|`.
    UniqueMax,
    /// `gcd(a, m) = 1` or `gcd(b, m) = 1`.
    LowGcd,
    /// `a + b` is not divisible by `m`.
    ZeroSum,
}

impl std::fmt::Display for Assumption {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Assumption::UniqueMax => write!(f, "(7) m > |a|, |b|"),
            Assumption::LowGcd => write!(f, "(8) gcd(a, m) = 1 or gcd(b, m) = 1"),
            Assumption::ZeroSum => write!(f, "(9) a + b != 0 mod m"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("equation has no solutions over {0}")]
    NoSolutions(Domain),
    #[error("coloring is over {found}, expected {expected}")]
    DomainMismatch { expected: Domain, found: Domain },
    #[error("equation is not reduced: gcd of coefficients is {0}")]
    Unreduced(i64),
    #[error("expected a {expected}-term equation, got {found} terms")]
    Arity { expected: usize, found: usize },
    #[error("assumption {0} fails")]
    AssumptionFailed(Assumption),
    #[error("spectrum is not Hermitian at frequency {0}")]
    NotHermitian(usize),
    #[error("inverse transform is not real at residue {index} (imaginary part {imag:e})")]
    NotReal { index: usize, imag: f64 },
    #[error("value {value} at residue {index} lies outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("domain of size {0} is too large for exhaustive search")]
    TooLarge(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
