use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unsupported field GF({p}^{k})")]
    UnsupportedField { p: u32, k: u32 },
    #[error("field order {q} exceeds the cap {cap}")]
    FieldCapExceeded { q: u64, cap: usize },
    #[error("element encoding {value} out of range for a field of order {order}")]
    ElementOutOfRange { value: u32, order: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("frobenius involution needs an even extension degree, GF({0}) has odd degree")]
    OddDegreeFrobenius(usize),
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not Hermitian for the given involution")]
    NotHermitian,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("space would have {count} points, above the cap {cap}")]
    PointCapExceeded { count: u128, cap: usize },
    #[error("point is not in the space: {0}")]
    NotInSpace(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("map file: {0}")]
    MapFile(String),
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
