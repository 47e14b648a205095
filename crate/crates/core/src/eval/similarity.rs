use super::{spearman, EvalError, WordPairDataset};
use crate::linalg::WordVectors;

/// What to do with a pair whose words are not both in the vector table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OovPolicy {
    /// Drop the pair.
    #[default]
    Skip,
    /// Keep the pair with model score 0.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityReport {
    pub rho: f64,
    /// Retained pairs over all pairs.
    pub coverage: f64,
    pub retained: usize,
    pub total: usize,
}

/// Spearman correlation between cosine similarities and gold scores.
pub fn word_similarity_eval<V: WordVectors + ?Sized>(
    vectors: &V,
    ds: &WordPairDataset,
    policy: OovPolicy,
) -> Result<SimilarityReport, EvalError> {
    let mut model = Vec::with_capacity(ds.pairs.len());
    let mut gold = Vec::with_capacity(ds.pairs.len());
    for p in &ds.pairs {
        let score = match vectors.similarity(&p.first, &p.second) {
            Some(s) => s?,
            None => match policy {
                OovPolicy::Skip => continue,
                OovPolicy::Zero => 0.0,
            },
        };
        model.push(score);
        gold.push(p.gold);
    }
    if model.len() < 2 {
        return Err(EvalError::TooFewPairs { retained: model.len() });
    }
    let total = ds.pairs.len();
    Ok(SimilarityReport {
        rho: spearman(&model, &gold)?,
        coverage: model.len() as f64 / total as f64,
        retained: model.len(),
        total,
    })
}
