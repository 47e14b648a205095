//! Evaluation protocols: word similarity, sentence sentiment, noun-phrase
//! bracketing and McNemar's significance test.

mod classify;
mod datasets;
mod logreg;
mod mcnemar;
mod rank;
mod similarity;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use classify::{
    np_bracketing_eval, np_features, select_lambda, sentence_vector, sentiment_eval, NpReport, SentimentReport,
    LAMBDA_GRID,
};
pub use datasets::{
    load_np_triples, load_sentences, load_word_pairs, Bracketing, LabeledSentence, LabeledSentenceDataset, NpTriple,
    NpTripleDataset, WordPair, WordPairDataset, NP_FOLDS,
};
pub use logreg::{gradient, objective, train_logreg, train_logreg_traced, LogRegConfig, LogRegModel};
pub use mcnemar::{mcnemar, mcnemar_counts, McNemarResult, EXACT_THRESHOLD};
pub use rank::{average_ranks, pearson, spearman};
pub use similarity::{word_similarity_eval, OovPolicy, SimilarityReport};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least 2 values, got {0}")]
    TooShort(usize),
    #[error("correlation undefined for constant input")]
    ConstantInput,
    #[error("non-finite value")]
    NonFinite,
    #[error("fewer than 2 pairs retained ({retained})")]
    TooFewPairs { retained: usize },
    #[error("training labels contain a single class")]
    SingleClass,
    #[error("empty {0}")]
    Empty(String),
    #[error("fold {0} has no items")]
    MissingFold(u8),
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error("{file}: {err}")]
    Io { file: String, err: std::io::Error },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
