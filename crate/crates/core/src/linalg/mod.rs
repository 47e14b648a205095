//! Similarity, truncated SVD and vector concatenation.

mod dense;
mod svd;
mod vector;

use thiserror::Error;

pub use dense::DenseEmbeddingTable;
pub use svd::{densify, sparse_to_dense, truncated_svd, truncated_svd_with, SvdOptions, SvdResult, Weighting};
pub use vector::{binary_cosine, concat, cosine, dense_cosine, neighbors, ConcatVectors, SparseVector, WordVectors};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cosine similarity is undefined for a zero vector")]
    ZeroVector,
    #[error("rank {k} out of range 1..={max}")]
    RankOutOfRange { k: usize, max: usize },
    #[error("matrix has no non-zero entries")]
    EmptyMatrix,
    #[error("word {0:?} is in neither table")]
    UnknownWord(String),
    #[error("invalid embedding table: {0}")]
    InvalidTable(String),
}
