use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("N must be even (got N = {0})")]
    OddFermionicBlock(usize),
    #[error("theta0 must be +1 or -1 (got {0})")]
    InvalidTheta0(i64),
    #[error("M + N must be at least 1")]
    EmptySpace,
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("factor {factor} out of range 1..={factors}")]
    FactorOutOfRange { factor: usize, factors: usize },
    #[error("matrices are over different graded spaces")]
    SpaceMismatch,
    #[error("factor count mismatch: {left} vs {right}")]
    FactorMismatch { left: usize, right: usize },
    #[error("invalid factor set {set:?} for {total} factors")]
    InvalidFactorSet { set: Vec<usize>, total: usize },
    #[error("pole: {form} vanishes at {point}")]
    Pole { form: String, point: String },
    #[error("singular matrix: no pivot in column {column:?}")]
    Singular { column: Vec<usize> },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("truncation order {n_max} too small, need at least {needed}")]
    Truncation { needed: usize, n_max: usize },
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

pub type Result<T> = core::result::Result<T, Error>;
