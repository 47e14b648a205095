//! Interpretable, binary, highly sparse word vectors built from lexical
//! resources.
//!
//! Each dimension of a vector is a named linguistic feature (a WordNet synset,
//! a supersense, a FrameNet frame, a polarity, a color, ...), and a word has a
//! 1 in that dimension when a resource asserts the feature for it. The crate
//! covers the whole pipeline:
//!
//! - [`ingest`]: resource adapters producing `(word, feature)` pairs
//! - [`matrix`] and [`feature`]: the frozen sparse binary matrix
//! - [`linalg`]: cosine similarity, randomized truncated SVD, concatenation
//! - [`eval`]: word similarity, sentiment and NP-bracketing protocols,
//!   logistic regression and McNemar's test
//! - [`io`]: text formats for sparse matrices and dense embeddings

pub mod eval;
pub mod feature;
pub mod ingest;
pub mod io;
pub mod linalg;
pub mod matrix;

pub use feature::{FeatureName, FeatureRegistry};
pub use linalg::{DenseEmbeddingTable, SparseVector, WordVectors};
pub use matrix::{build_matrix, MatrixBuilder, MatrixStats, SparseBinaryMatrix, WordFeaturePair};
