use thiserror::Error;

/// Errors surfaced by field construction, algebra arithmetic and code analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible: {0}")]
    ReducibleModulus(String),
    #[error("order of the zero element is undefined")]
    ZeroElement,
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("gcd({q}, {n}) != 1")]
    NonCoprime { n: usize, q: u64 },
    #[error("gcd({r}, {n}) != 1")]
    NonCoprimeR { n: usize, r: usize },
    #[error("invalid group parameters (n={n}, m={m}, r={r}): {reason}")]
    BadGroupParams {
        n: usize,
        m: usize,
        r: usize,
        reason: String,
    },
    #[error("operands belong to different group algebras")]
    ParamMismatch,
    #[error("skew elements have different twist or coefficient field")]
    TwistMismatch,
    #[error("block elements belong to different orbits")]
    OrbitMismatch,
    #[error("block tuple shape does not match the decomposition")]
    ShapeMismatch,
    #[error("generating set does not span a left ideal")]
    NotAnIdeal,
    #[error("basis is not a left ideal of the subgroup algebra")]
    NotAnHCode,
    #[error("polynomial does not divide x^n - 1")]
    NotADivisor,
    #[error("subgroup pair does not factor the group (H1*H2 = G, H1 ∩ H2 = {{e}} required)")]
    BadSubgroupPair,
    #[error("theta is not injective on the stabilizer (order of q^k mod d is {got}, need {need})")]
    ThetaNotInjective { got: usize, need: usize },
    #[error("operation requires a nonzero code")]
    ZeroCode,
    #[error("enumeration budget exceeded (best found: {best_found:?})")]
    BudgetExceeded { best_found: Option<usize> },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::NotMonic => "NotMonic",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::ZeroElement => "ZeroElement",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::NonCoprime { .. } => "NonCoprime",
            Error::NonCoprimeR { .. } => "NonCoprimeR",
            Error::BadGroupParams { .. } => "BadGroupParams",
            Error::ParamMismatch => "ParamMismatch",
            Error::TwistMismatch => "TwistMismatch",
            Error::OrbitMismatch => "OrbitMismatch",
            Error::ShapeMismatch => "ShapeMismatch",
            Error::NotAnIdeal => "NotAnIdeal",
            Error::NotAnHCode => "NotAnHCode",
            Error::NotADivisor => "NotADivisor",
            Error::BadSubgroupPair => "BadSubgroupPair",
            Error::ThetaNotInjective { .. } => "ThetaNotInjective",
            Error::ZeroCode => "ZeroCode",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
