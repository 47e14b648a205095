//! Sentence sentiment and noun-phrase bracketing classifiers.

use std::collections::BTreeMap;

use super::{train_logreg, Bracketing, EvalError, LabeledSentence, LabeledSentenceDataset, NpTripleDataset, NP_FOLDS};
use crate::linalg::{SparseVector, WordVectors};

/// Regularization strengths tried during tuning, ascending.
pub const LAMBDA_GRID: [f64; 6] = [1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0];

/// Elementwise mean of the in-vocabulary token vectors; the zero vector if
/// no token is known.
pub fn sentence_vector<V: WordVectors + ?Sized>(vectors: &V, tokens: &[String]) -> SparseVector {
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    let mut known = 0usize;
    for t in tokens {
        if let Some(v) = vectors.vector(t) {
            known += 1;
            for (i, x) in v.iter() {
                *acc.entry(i).or_insert(0.0) += x;
            }
        }
    }
    if known == 0 {
        return SparseVector::zeros(vectors.dim());
    }
    let n = known as f64;
    SparseVector::from_sorted(vectors.dim(), acc.into_iter().map(|(i, x)| (i, x / n)))
}

/// Trains one model per grid value and keeps the one with the best
/// validation accuracy, preferring the larger lambda on ties.
/// Returns `(lambda, validation accuracy)`.
pub fn select_lambda(
    train_x: &[SparseVector],
    train_y: &[bool],
    val_x: &[SparseVector],
    val_y: &[bool],
) -> Result<(f64, f64), EvalError> {
    let mut best: Option<(f64, f64)> = None;
    for &lambda in &LAMBDA_GRID {
        let acc = train_logreg(train_x, train_y, lambda)?.accuracy(val_x, val_y);
        if best.is_none_or(|(_, b)| acc >= b) {
            best = Some((lambda, acc));
        }
    }
    Ok(best.expect("grid is non-empty"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentimentReport {
    pub accuracy: f64,
    pub lambda: f64,
    pub dev_accuracy: f64,
    /// Predicted label per test sentence.
    pub predictions: Vec<bool>,
}

fn featurize<V: WordVectors + ?Sized>(
    vectors: &V,
    split: &[LabeledSentence],
    name: &str,
) -> Result<(Vec<SparseVector>, Vec<bool>), EvalError> {
    if split.is_empty() {
        return Err(EvalError::Empty(format!("{name} split")));
    }
    Ok(split.iter().map(|s| (sentence_vector(vectors, &s.tokens), s.label)).unzip())
}

/// Tunes lambda on dev and reports test accuracy.
pub fn sentiment_eval<V: WordVectors + ?Sized>(
    vectors: &V,
    ds: &LabeledSentenceDataset,
) -> Result<SentimentReport, EvalError> {
    let (tx, ty) = featurize(vectors, &ds.train, "train")?;
    let (dx, dy) = featurize(vectors, &ds.dev, "dev")?;
    let (ex, ey) = featurize(vectors, &ds.test, "test")?;
    let (lambda, dev_accuracy) = select_lambda(&tx, &ty, &dx, &dy)?;
    let model = train_logreg(&tx, &ty, lambda)?;
    Ok(SentimentReport {
        accuracy: model.accuracy(&ex, &ey),
        lambda,
        dev_accuracy,
        predictions: ex.iter().map(|x| model.predict(x)).collect(),
    })
}

/// The three word vectors appended in order; unknown words contribute a zero block.
pub fn np_features<V: WordVectors + ?Sized>(vectors: &V, words: &[String; 3]) -> SparseVector {
    let dim = vectors.dim();
    words
        .iter()
        .map(|w| vectors.vector(w).unwrap_or_else(|| SparseVector::zeros(dim)))
        .reduce(|a, b| a.append(&b))
        .expect("three words")
}

#[derive(Debug, Clone, PartialEq)]
pub struct NpReport {
    /// Mean of the nine per-fold accuracies.
    pub accuracy: f64,
    pub lambda: f64,
    pub tuning_accuracy: f64,
    /// Accuracy on folds 1..=9, in fold order.
    pub fold_accuracies: Vec<f64>,
    /// `(item index, predicted bracketing)` for every item in folds 1..=9,
    /// in item order.
    pub predictions: Vec<(usize, Bracketing)>,
}

/// Tunes lambda on fold 0 (first 80% trains, last 20% validates, file
/// order), then runs 9-fold cross-validation over folds 1..=9.
pub fn np_bracketing_eval<V: WordVectors + ?Sized>(vectors: &V, ds: &NpTripleDataset) -> Result<NpReport, EvalError> {
    let folds = ds.folds();
    if let Some(f) = folds.iter().position(Vec::is_empty) {
        return Err(EvalError::MissingFold(f as u8));
    }
    let x: Vec<SparseVector> = ds.items.iter().map(|it| np_features(vectors, &it.words)).collect();
    let y: Vec<bool> = ds.items.iter().map(|it| it.label.as_label()).collect();
    let pick = |idx: &[usize]| -> (Vec<SparseVector>, Vec<bool>) { idx.iter().map(|&i| (x[i].clone(), y[i])).unzip() };

    let tuning = &folds[0];
    let cut = tuning.len() * 4 / 5;
    if cut == 0 || cut == tuning.len() {
        return Err(EvalError::Empty("tuning split of fold 0".into()));
    }
    let (tx, ty) = pick(&tuning[..cut]);
    let (vx, vy) = pick(&tuning[cut..]);
    let (lambda, tuning_accuracy) = select_lambda(&tx, &ty, &vx, &vy)?;

    let mut fold_accuracies = Vec::with_capacity(NP_FOLDS as usize - 1);
    let mut predictions = Vec::new();
    for (test_fold, test_idx) in folds.iter().enumerate().skip(1) {
        let train_idx: Vec<usize> = (0..ds.items.len())
            .filter(|&i| {
                let f = ds.items[i].fold as usize;
                f != 0 && f != test_fold
            })
            .collect();
        let (trx, try_) = pick(&train_idx);
        let model = train_logreg(&trx, &try_, lambda)?;
        let (ex, ey) = pick(test_idx);
        fold_accuracies.push(model.accuracy(&ex, &ey));
        predictions.extend(test_idx.iter().zip(&ex).map(|(&i, v)| (i, Bracketing::from_label(model.predict(v)))));
    }
    predictions.sort_by_key(|p| p.0);
    Ok(NpReport {
        accuracy: fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64,
        lambda,
        tuning_accuracy,
        fold_accuracies,
        predictions,
    })
}
