//! The sparse binary word-by-feature matrix.
//!
//! Rows are stored as strictly increasing lists of active column ids; a cell
//! is 1 exactly when its id is present. A [`MatrixBuilder`] collects
//! word/feature assertions and [`MatrixBuilder::freeze`] turns them into an
//! immutable [`SparseBinaryMatrix`] whose vocabulary and columns are both in
//! lexicographic order, so the result depends only on the multiset of pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::feature::{FeatureError, FeatureName, FeatureRegistry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word is empty")]
    Empty,
    #[error("multiword entry {0:?} is not allowed")]
    Multiword(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Lowercases `raw` and checks that it is a single non-empty token.
/// Whitespace and `_` (the usual phrase joiner in lexicons) mark multiword
/// entries.
pub fn normalize_word(raw: &str) -> Result<String, WordError> {
    let w = raw.trim();
    if w.is_empty() {
        return Err(WordError::Empty);
    }
    if w.chars().any(|c| c.is_whitespace() || c == '_') {
        return Err(WordError::Multiword(w.to_string()));
    }
    Ok(w.to_lowercase())
}

/// One `(word, feature)` assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordFeaturePair {
    word: String,
    feature: FeatureName,
}

impl WordFeaturePair {
    pub fn new(word: &str, feature: FeatureName) -> Result<Self, WordError> {
        Ok(WordFeaturePair { word: normalize_word(word)?, feature })
    }

    /// Parses both sides, canonicalizing the feature name.
    pub fn parse(word: &str, feature: &str) -> Result<Self, PairError> {
        Ok(Self::new(word, FeatureName::canonicalize(feature)?)?)
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn feature(&self) -> &FeatureName {
        &self.feature
    }
}

impl fmt::Display for WordFeaturePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.word, self.feature)
    }
}

/// Accumulates pairs before freezing. Duplicate pairs are absorbed.
#[derive(Debug, Default, Clone)]
pub struct MatrixBuilder {
    rows: BTreeMap<String, BTreeSet<FeatureName>>,
}

impl MatrixBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` if the pair was new.
    pub fn insert(&mut self, pair: WordFeaturePair) -> bool {
        self.rows.entry(pair.word).or_default().insert(pair.feature)
    }

    pub fn extend<I: IntoIterator<Item = WordFeaturePair>>(&mut self, pairs: I) {
        for p in pairs {
            self.insert(p);
        }
    }

    pub fn freeze(self) -> SparseBinaryMatrix {
        let names: BTreeSet<&FeatureName> = self.rows.values().flatten().collect();
        let registry = FeatureRegistry::from_sorted(names.into_iter().cloned().collect());
        let mut vocab = Vec::with_capacity(self.rows.len());
        let mut rows = Vec::with_capacity(self.rows.len());
        for (word, feats) in self.rows {
            // BTreeSet iteration order matches registry order, so ids come out sorted.
            let ids: Vec<u32> = feats.iter().map(|f| registry.id(f).expect("feature registered above")).collect();
            vocab.push(word);
            rows.push(ids);
        }
        SparseBinaryMatrix::assemble(vocab, rows, registry)
    }
}

/// Builds and freezes a matrix from a stream of pairs.
pub fn build_matrix<I: IntoIterator<Item = WordFeaturePair>>(pairs: I) -> SparseBinaryMatrix {
    let mut b = MatrixBuilder::new();
    b.extend(pairs);
    b.freeze()
}

/// The frozen linguistic matrix `L ∈ {0,1}^(N×D)`.
#[derive(Debug, Clone)]
pub struct SparseBinaryMatrix {
    vocab: Vec<String>,
    rows: Vec<Vec<u32>>,
    word_index: HashMap<String, u32>,
    registry: FeatureRegistry,
    nnz: usize,
    postings: OnceLock<Vec<Vec<u32>>>,
}

impl PartialEq for SparseBinaryMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.vocab == other.vocab && self.rows == other.rows && self.registry == other.registry
    }
}

impl Eq for SparseBinaryMatrix {}

impl SparseBinaryMatrix {
    /// Callers guarantee sorted unique vocab, strictly increasing in-range
    /// rows and a sorted registry.
    pub(crate) fn assemble(vocab: Vec<String>, rows: Vec<Vec<u32>>, registry: FeatureRegistry) -> Self {
        let word_index = vocab.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let nnz = rows.iter().map(Vec::len).sum();
        SparseBinaryMatrix { vocab, rows, word_index, registry, nnz, postings: OnceLock::new() }
    }

    /// Number of word types, `N`.
    pub fn n_words(&self) -> usize {
        self.vocab.len()
    }

    /// Number of feature columns, `D`.
    pub fn n_features(&self) -> usize {
        self.registry.len()
    }

    pub fn nnz(&self) -> usize {
        self.nnz
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn registry(&self) -> &FeatureRegistry {
        &self.registry
    }

    pub fn word_id(&self, word: &str) -> Option<usize> {
        self.word_index.get(word).map(|&i| i as usize)
    }

    /// Active columns of `word`, or `None` if it is out of vocabulary.
    pub fn get_vector(&self, word: &str) -> Option<&[u32]> {
        self.word_id(word).map(|i| self.rows[i].as_slice())
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Whether cell `(word, feature)` is 1. Unknown words or features read as 0.
    pub fn bit(&self, word: &str, feature: &str) -> bool {
        match (self.get_vector(word), self.registry.id_of(feature)) {
            (Some(row), Some(id)) => row.binary_search(&id).is_ok(),
            _ => false,
        }
    }

    /// Active feature names of `word`, in column order.
    pub fn feature_names(&self, word: &str) -> Option<Vec<&FeatureName>> {
        self.get_vector(word).map(|row| row.iter().map(|&id| self.registry.name(id).expect("id < D")).collect())
    }

    /// Dense 0/1 rendering of row `i`.
    pub fn dense_row(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.n_features()];
        for &id in &self.rows[i] {
            v[id as usize] = 1;
        }
        v
    }

    /// Column-major view: for each column, the ascending list of rows in
    /// which it is active. Computed on first use.
    pub fn postings(&self) -> &[Vec<u32>] {
        self.postings.get_or_init(|| {
            let mut cols = vec![Vec::new(); self.n_features()];
            for (i, row) in self.rows.iter().enumerate() {
                for &j in row {
                    cols[j as usize].push(i as u32);
                }
            }
            cols
        })
    }

    pub fn stats(&self) -> MatrixStats {
        let n = self.n_words();
        let d = self.n_features();
        let nnz = self.nnz;
        let active_cols = self.postings().iter().filter(|c| !c.is_empty()).count();
        let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        MatrixStats {
            n_words: n,
            n_features: d,
            nnz,
            active_features: active_cols,
            mean_row_nnz: ratio(nnz, n),
            mean_col_support: ratio(nnz, d),
            mean_active_col_support: ratio(nnz, active_cols),
            density: if n == 0 || d == 0 { 0.0 } else { nnz as f64 / (n as f64 * d as f64) },
        }
    }
}

/// Size and sparsity summary of a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixStats {
    pub n_words: usize,
    pub n_features: usize,
    pub nnz: usize,
    /// Columns with at least one active word.
    pub active_features: usize,
    pub mean_row_nnz: f64,
    /// `nnz / D` over all columns.
    pub mean_col_support: f64,
    /// `nnz / active_features`.
    pub mean_active_col_support: f64,
    /// `nnz / (N·D)`; 0 for an empty matrix.
    pub density: f64,
}

impl MatrixStats {
    pub fn sparsity(&self) -> f64 {
        if self.n_words == 0 || self.n_features == 0 {
            0.0
        } else {
            1.0 - self.density
        }
    }
}

impl fmt::Display for MatrixStats {
    /// Tab-separated `key value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_words\t{}", self.n_words)?;
        writeln!(f, "n_features\t{}", self.n_features)?;
        writeln!(f, "nnz\t{}", self.nnz)?;
        writeln!(f, "active_features\t{}", self.active_features)?;
        writeln!(f, "mean_row_nnz\t{:.9}", self.mean_row_nnz)?;
        writeln!(f, "mean_col_support\t{:.9}", self.mean_col_support)?;
        writeln!(f, "mean_active_col_support\t{:.9}", self.mean_active_col_support)?;
        writeln!(f, "density\t{:.9e}", self.density)?;
        write!(f, "sparsity\t{:.9}", self.sparsity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(w: &str, f: &str) -> WordFeaturePair {
        WordFeaturePair::parse(w, f).unwrap()
    }

    #[test]
    fn empty_stream() {
        let m = build_matrix(Vec::new());
        let s = m.stats();
        assert_eq!((s.n_words, s.n_features, s.nnz), (0, 0, 0));
        assert_eq!(s.density, 0.0);
        assert_eq!(s.mean_row_nnz, 0.0);
    }

    #[test]
    fn duplicate_pair_counts_once() {
        let once = build_matrix(vec![pair("love", "POL.POS")]);
        let twice = build_matrix(vec![pair("love", "POL.POS"), pair("Love", "pol.pos")]);
        assert_eq!(once.nnz(), 1);
        assert_eq!(twice.nnz(), 1);
        assert_eq!(once, twice);
    }

    #[test]
    fn words_are_validated() {
        assert_eq!(normalize_word("  "), Err(WordError::Empty));
        assert!(matches!(normalize_word("blood pressure"), Err(WordError::Multiword(_))));
        assert!(matches!(normalize_word("blood_pressure"), Err(WordError::Multiword(_))));
        assert_eq!(normalize_word("Film").unwrap(), "film");
        assert!(WordFeaturePair::parse("x", "bad-name").is_err());
    }

    #[test]
    fn oov_is_absent_not_empty() {
        let m = build_matrix(vec![pair("love", "POL.POS")]);
        assert!(m.get_vector("hate").is_none());
        assert_eq!(m.get_vector("love"), Some(&[0u32][..]));
        assert!(!m.bit("love", "NOPE.X"));
    }

    #[test]
    fn columns_and_vocab_sorted() {
        let m = build_matrix(vec![pair("b", "Z.Z"), pair("a", "A.A"), pair("b", "M.M")]);
        assert_eq!(m.vocab(), ["a", "b"]);
        let names: Vec<&str> = m.registry().names().iter().map(|n| n.as_str()).collect();
        assert_eq!(names, ["A.A", "M.M", "Z.Z"]);
        assert_eq!(m.get_vector("b"), Some(&[1u32, 2][..]));
        assert_eq!(m.postings()[2], vec![1]);
    }
}
