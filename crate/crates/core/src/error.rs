use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("Laurent polynomial in z is not symmetric under z <-> 1/z")]
    NotSymmetric,

    #[error("q-binomial [{n} choose {m}] requires m <= n")]
    BinomialRange { n: u32, m: u32 },

    #[error("q^(1/2) is not an integer power of v for q = v^{0}")]
    OddBase(i32),

    #[error("invalid Cartan datum: {}", .0.join("; "))]
    InvalidCartan(Vec<String>),

    #[error("unknown index label `{0}`")]
    UnknownIndex(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
