use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),
    #[error("subgroup order {t} does not divide p - 1 = {p_minus_1}")]
    NotDivisor { t: u64, p_minus_1: u64 },
    #[error("zero is not an element of the multiplicative group")]
    ZeroElement,
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("negative exponent at offset {offset}")]
    NegativeExponent { offset: usize },
    #[error("bad polynomial shape: {0}")]
    BadShape(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("resultant vanishes identically: P and dP/dy share a factor")]
    CommonFactor,
    #[error("matrix of {rows}x{cols} exceeds the entry limit {limit}")]
    Overflow { rows: usize, cols: usize, limit: usize },
    #[error("derivative order {k} is not below the characteristic {p}")]
    OrderTooLarge { k: u64, p: u64 },
    #[error("ParamsInfeasible: {0}")]
    ParamsInfeasible(String),
    #[error("linear system has a trivial kernel ({rows}x{cols})")]
    NoKernel { rows: usize, cols: usize },
    #[error("precondition violated: {0}")]
    PrecondViolated(String),
    #[error("dP/dy vanishes at non-excluded point ({0}, {1})")]
    SingularEvaluation(u64, u64),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("{0} has no n-th root relative to gamma")]
    RootMissing(u64),
    #[error("values {0} and {1} lie in the same coset")]
    CosetCollision(u64, u64),
    #[error("bad exponent q = {0}")]
    BadExponent(u32),
    #[error("config error at `{key}`: {msg}")]
    Config { key: String, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
