use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero polynomial passed to {0}")]
    ZeroPolynomial(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("number field degree {0} is not supported (1..=4)")]
    FieldDegree(usize),
    #[error("modulus {0} is not irreducible over Q")]
    ReducibleModulus(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("power sums do not satisfy C1 = 0")]
    NonzeroFirstPowerSum,
    #[error("pencil parameter (0:0) is not a point of P^1")]
    ZeroParameter,
    #[error("alpha = 0 selects the degenerate member S2*S3 whose singular locus is S2 = S3 = 0")]
    DegenerateMember,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("dimension n = {0} is not supported (need n >= 2)")]
    Dimension(usize),
    #[error("residual factor {0} of degree >= 5 could not be factored")]
    Unfactorable(String),
    #[error("critical point count {found} does not match the expected {expected}")]
    CriticalCount { found: usize, expected: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
