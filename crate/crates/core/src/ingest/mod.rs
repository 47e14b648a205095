//! Resource adapters that turn lexical resources into word/feature pairs.
//!
//! WordNet is read natively from its database files. Every other resource is
//! read from a normalized tab-separated export, one word per line.

mod lexicon;
mod wordnet;

use std::io::BufRead;

use thiserror::Error;

use crate::feature::FeatureError;
use crate::matrix::{PairError, WordError, WordFeaturePair};

pub use lexicon::{
    derive_connotation, derive_framenet, derive_ptb_pos, derive_thesaurus, parse_attribute_tsv, AttributeTemplate,
    ThesaurusRelation,
};
pub use wordnet::{
    derive_wordnet_features, parse_wordnet_db, DanglingPointer, Pointer, PointerKind, WnPos, WordNetDb,
    WordNetSynsetRecord,
};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("I/O error reading {file}: {err}")]
    Io { file: String, err: std::io::Error },
    #[error("{file}:{line}: {message}")]
    Malformed { file: String, line: usize, message: String },
    #[error("{file}:{line}: unknown synset type {ch:?}")]
    UnknownSynsetType { file: String, line: usize, ch: String },
    #[error("{file}:{line}: expected {expected} columns, found {found}")]
    ColumnCount { file: String, line: usize, expected: String, found: usize },
    #[error("{file}:{line}: {err}")]
    Word { file: String, line: usize, err: WordError },
    #[error("{file}:{line}: {err}")]
    Feature { file: String, line: usize, err: FeatureError },
}

impl IngestError {
    pub(crate) fn at(file: &str, line: usize, err: PairError) -> Self {
        match err {
            PairError::Word(err) => IngestError::Word { file: file.to_string(), line, err },
            PairError::Feature(err) => IngestError::Feature { file: file.to_string(), line, err },
        }
    }
}

/// Pairs produced by one adapter run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extraction {
    pub pairs: Vec<WordFeaturePair>,
    /// Tolerated irregularities: unknown Penn tags, dropped multiword
    /// thesaurus members, dangling WordNet pointers.
    pub warnings: usize,
}

/// Reads `src` as UTF-8 lines and yields `(line_number, columns)` for every
/// line that is neither blank nor a `#` comment.
pub(crate) fn tsv_rows<R: BufRead>(src: R, file: &str) -> Result<Vec<(usize, Vec<String>)>, IngestError> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.map_err(|err| IngestError::Io { file: file.to_string(), err })?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        out.push((i + 1, line.split('\t').map(|c| c.trim().to_string()).collect()));
    }
    Ok(out)
}

/// Reads a canonical `word<TAB>feature` pair stream.
pub fn read_pairs<R: BufRead>(src: R, file: &str) -> Result<Vec<WordFeaturePair>, IngestError> {
    tsv_rows(src, file)?
        .into_iter()
        .map(|(line, cols)| {
            if cols.len() != 2 {
                return Err(IngestError::ColumnCount {
                    file: file.to_string(),
                    line,
                    expected: "2".into(),
                    found: cols.len(),
                });
            }
            WordFeaturePair::parse(&cols[0], &cols[1]).map_err(|e| IngestError::at(file, line, e))
        })
        .collect()
}

/// Writes pairs as `word<TAB>feature` lines.
pub fn write_pairs<W: std::io::Write>(mut out: W, pairs: &[WordFeaturePair]) -> std::io::Result<()> {
    for p in pairs {
        writeln!(out, "{p}")?;
    }
    Ok(())
}
