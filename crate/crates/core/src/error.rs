use thiserror::Error;

use crate::transfer::TransferReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scalar {0:?}: expected \"p/q\" or \"p\" with q != 0")]
    InvalidScalar(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("basis index {index} out of range for a basis of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("product {left}*{right} is not homogeneous of degree {expected}")]
    NonHomogeneousProduct {
        left: String,
        right: String,
        expected: i64,
    },

    #[error("graded commutativity fails on pair ({left_index},{right_index}) = ({left}, {right})")]
    Commutativity {
        left: String,
        right: String,
        left_index: usize,
        right_index: usize,
    },

    #[error("associativity fails on triple ({0}, {1}, {2})")]
    Associativity(String, String, String),

    #[error("map entry for {generator:?} is not homogeneous of degree {expected}")]
    NonHomogeneousMap { generator: String, expected: i64 },

    #[error("value for {monomial} is not homogeneous of degree {expected}")]
    NonHomogeneousTaylor { monomial: String, expected: i64 },

    #[error("monomial {0} vanishes (repeated odd factor) and cannot carry a value")]
    VanishingMonomial(String),

    #[error("presentation mismatch: {0}")]
    Mismatch(String),

    #[error("malformed permutation {0:?}")]
    MalformedPermutation(Vec<usize>),

    #[error("{what} {value} out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },

    #[error("coalgebra maps must have operator degree 0, got {0}")]
    NonzeroComorphismDegree(i64),

    #[error("no solution for the transfer equations at weight {0}")]
    Unsolvable(usize),

    #[error("transfer hypotheses failed: {}", .0.summary())]
    TransferHypotheses(Box<TransferReport>),
}
