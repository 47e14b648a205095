use std::cmp::Ordering;

use super::{DenseEmbeddingTable, LinalgError};
use crate::matrix::SparseBinaryMatrix;

/// A real vector of length `dim` holding only its listed entries.
/// Indices are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    dim: usize,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseVector {
    /// Builds from `(index, value)` entries that are strictly increasing in
    /// index and below `dim`.
    pub fn from_sorted(dim: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let (indices, values): (Vec<usize>, Vec<f64>) = entries.into_iter().unzip();
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must be strictly increasing");
        assert!(indices.last().is_none_or(|&i| i < dim), "index out of range");
        SparseVector { dim, indices, values }
    }

    pub fn from_dense(values: &[f64]) -> Self {
        SparseVector { dim: values.len(), indices: (0..values.len()).collect(), values: values.to_vec() }
    }

    pub fn zeros(dim: usize) -> Self {
        SparseVector { dim, indices: Vec::new(), values: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.dim];
        for (i, x) in self.iter() {
            v[i] = x;
        }
        v
    }

    pub fn squared_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    acc += self.values[i] * other.values[j];
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Dot product with a dense weight vector of the same dimension.
    pub fn dot_dense(&self, w: &[f64]) -> f64 {
        self.iter().map(|(i, x)| x * w[i]).sum()
    }

    /// Appends `other` after `self`, shifting its indices by `self.dim()`.
    pub fn append(&self, other: &SparseVector) -> SparseVector {
        let mut indices = self.indices.clone();
        indices.extend(other.indices.iter().map(|i| i + self.dim));
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        SparseVector { dim: self.dim + other.dim, indices, values }
    }

    pub fn scale(&mut self, factor: f64) {
        self.values.iter_mut().for_each(|v| *v *= factor);
    }
}

fn ratio(dot: f64, na: f64, nb: f64) -> Result<f64, LinalgError> {
    if na == 0.0 || nb == 0.0 {
        return Err(LinalgError::ZeroVector);
    }
    Ok(dot / (na * nb).sqrt())
}

/// `a·b / (‖a‖‖b‖)`.
pub fn cosine(a: &SparseVector, b: &SparseVector) -> Result<f64, LinalgError> {
    if a.dim != b.dim {
        return Err(LinalgError::DimensionMismatch { left: a.dim, right: b.dim });
    }
    ratio(a.dot(b), a.squared_norm(), b.squared_norm())
}

pub fn dense_cosine(a: &[f64], b: &[f64]) -> Result<f64, LinalgError> {
    if a.len() != b.len() {
        return Err(LinalgError::DimensionMismatch { left: a.len(), right: b.len() });
    }
    let dot = a.iter().zip(b).map(|(x, y)| x * y).sum();
    ratio(dot, a.iter().map(|x| x * x).sum(), b.iter().map(|x| x * x).sum())
}

/// Cosine of two binary vectors given by their sorted active ids:
/// `|A∩B| / sqrt(|A|·|B|)`.
pub fn binary_cosine(a: &[u32], b: &[u32]) -> Result<f64, LinalgError> {
    let (mut i, mut j, mut inter) = (0, 0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                inter += 1;
                i += 1;
                j += 1;
            }
        }
    }
    ratio(inter as f64, a.len() as f64, b.len() as f64)
}

/// A word → vector lookup usable by the evaluation protocols.
pub trait WordVectors {
    /// Length of every vector.
    fn dim(&self) -> usize;

    fn vector(&self, word: &str) -> Option<SparseVector>;

    /// Every word with a vector, in ascending order.
    fn words(&self) -> Vec<&str>;

    fn contains(&self, word: &str) -> bool {
        self.vector(word).is_some()
    }

    /// Cosine similarity; `None` if either word is missing.
    fn similarity(&self, a: &str, b: &str) -> Option<Result<f64, LinalgError>> {
        let va = self.vector(a)?;
        let vb = self.vector(b)?;
        Some(cosine(&va, &vb))
    }
}

impl WordVectors for SparseBinaryMatrix {
    fn dim(&self) -> usize {
        self.n_features()
    }

    fn vector(&self, word: &str) -> Option<SparseVector> {
        self.get_vector(word)
            .map(|row| SparseVector::from_sorted(self.n_features(), row.iter().map(|&i| (i as usize, 1.0))))
    }

    fn words(&self) -> Vec<&str> {
        self.vocab().iter().map(String::as_str).collect()
    }

    fn contains(&self, word: &str) -> bool {
        self.get_vector(word).is_some()
    }

    fn similarity(&self, a: &str, b: &str) -> Option<Result<f64, LinalgError>> {
        Some(binary_cosine(self.get_vector(a)?, self.get_vector(b)?))
    }
}

impl WordVectors for DenseEmbeddingTable {
    fn dim(&self) -> usize {
        DenseEmbeddingTable::dim(self)
    }

    fn vector(&self, word: &str) -> Option<SparseVector> {
        self.get(word).map(SparseVector::from_dense)
    }

    fn words(&self) -> Vec<&str> {
        let mut w: Vec<&str> = self.vocab().iter().map(String::as_str).collect();
        w.sort_unstable();
        w
    }

    fn contains(&self, word: &str) -> bool {
        self.get(word).is_some()
    }

    fn similarity(&self, a: &str, b: &str) -> Option<Result<f64, LinalgError>> {
        Some(dense_cosine(self.get(a)?, self.get(b)?))
    }
}

/// A dense table followed by the sparse linguistic matrix, `K + D` long.
/// Words missing from one side get zeros in that block.
#[derive(Debug, Clone, Copy)]
pub struct ConcatVectors<'a> {
    pub dense: &'a DenseEmbeddingTable,
    pub sparse: &'a SparseBinaryMatrix,
    /// Scale each non-zero block to unit L2 norm before appending.
    pub normalize_blocks: bool,
}

impl<'a> ConcatVectors<'a> {
    pub fn new(dense: &'a DenseEmbeddingTable, sparse: &'a SparseBinaryMatrix) -> Self {
        ConcatVectors { dense, sparse, normalize_blocks: false }
    }

    pub fn normalized(mut self, on: bool) -> Self {
        self.normalize_blocks = on;
        self
    }
}

impl WordVectors for ConcatVectors<'_> {
    fn dim(&self) -> usize {
        self.dense.dim() + self.sparse.n_features()
    }

    fn vector(&self, word: &str) -> Option<SparseVector> {
        concat(self.dense, self.sparse, word, self.normalize_blocks).ok()
    }

    fn words(&self) -> Vec<&str> {
        let mut w: Vec<&str> = self.dense.vocab().iter().chain(self.sparse.vocab()).map(String::as_str).collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

/// The concatenated vector of `word`: dense block then sparse block.
pub fn concat(
    dense: &DenseEmbeddingTable,
    sparse: &SparseBinaryMatrix,
    word: &str,
    normalize_blocks: bool,
) -> Result<SparseVector, LinalgError> {
    let d = dense.get(word);
    let s = sparse.get_vector(word);
    if d.is_none() && s.is_none() {
        return Err(LinalgError::UnknownWord(word.to_string()));
    }
    let mut left = d.map(SparseVector::from_dense).unwrap_or_else(|| SparseVector::zeros(dense.dim()));
    let mut right = s
        .map(|row| SparseVector::from_sorted(sparse.n_features(), row.iter().map(|&i| (i as usize, 1.0))))
        .unwrap_or_else(|| SparseVector::zeros(sparse.n_features()));
    if normalize_blocks {
        for block in [&mut left, &mut right] {
            let n = block.squared_norm();
            if n > 0.0 {
                block.scale(1.0 / n.sqrt());
            }
        }
    }
    Ok(left.append(&right))
}

/// The `top` most similar other words to `word`, by descending cosine with
/// ties broken by ascending word. Words whose similarity is undefined are
/// skipped. Returns `None` if `word` has no vector.
pub fn neighbors<V: WordVectors + ?Sized>(vectors: &V, word: &str, top: usize) -> Option<Vec<(String, f64)>> {
    if !vectors.contains(word) {
        return None;
    }
    let mut scored: Vec<(&str, f64)> = vectors
        .words()
        .into_iter()
        .filter(|w| *w != word)
        .filter_map(|w| match vectors.similarity(word, w) {
            Some(Ok(s)) => Some((w, s)),
            _ => None,
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    scored.truncate(top);
    Some(scored.into_iter().map(|(w, s)| (w.to_string(), s)).collect())
}
