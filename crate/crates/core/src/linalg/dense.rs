use std::collections::HashMap;

use super::LinalgError;

/// `N×K` real-valued word vectors stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseEmbeddingTable {
    vocab: Vec<String>,
    dim: usize,
    data: Vec<f64>,
    index: HashMap<String, usize>,
}

impl DenseEmbeddingTable {
    /// Checks `dim >= 1`, `data.len() == vocab.len() * dim`, finite values and
    /// unique words.
    pub fn new(vocab: Vec<String>, dim: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::InvalidTable("dimension must be at least 1".into()));
        }
        if data.len() != vocab.len() * dim {
            return Err(LinalgError::InvalidTable(format!(
                "{} values for {} words of dimension {dim}",
                data.len(),
                vocab.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(LinalgError::InvalidTable(format!("non-finite value in row of {:?}", vocab[pos / dim])));
        }
        let mut index = HashMap::with_capacity(vocab.len());
        for (i, w) in vocab.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(LinalgError::InvalidTable(format!("duplicate word {w:?}")));
            }
        }
        Ok(DenseEmbeddingTable { vocab, dim, data, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.index.get(word).map(|&i| self.row(i))
    }

    pub fn rows(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.vocab.iter().map(String::as_str).zip(self.data.chunks_exact(self.dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let t = DenseEmbeddingTable::new(vec!["a".into(), "b".into()], 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(t.get("b"), Some(&[3.0, 4.0][..]));
        assert!(t.get("c").is_none());
        assert!(DenseEmbeddingTable::new(vec!["a".into()], 0, vec![]).is_err());
        assert!(DenseEmbeddingTable::new(vec!["a".into()], 2, vec![1.0]).is_err());
        assert!(DenseEmbeddingTable::new(vec!["a".into()], 1, vec![f64::NAN]).is_err());
        assert!(DenseEmbeddingTable::new(vec!["a".into(), "a".into()], 1, vec![1.0, 2.0]).is_err());
    }
}
