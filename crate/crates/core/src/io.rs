//! Text formats for the sparse matrix and dense embedding tables.
//!
//! Sparse matrix:
//!
//! ```text
//! LEXVEC-SPARSE 1 <N> <D> <nnz>
//! F <col-id> <feature-name>        (D lines, ids 0..D in order)
//! W <word> <col-id> <col-id> ...   (N lines, ids ascending)
//! ```
//!
//! Dense table: an optional `<N> <K>` header, then `word v1 ... vK` per line
//! with shortest round-trip decimals (exponent form for very large or small
//! magnitudes). Both loaders reject malformed input instead of repairing it.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::feature::{FeatureName, FeatureRegistry};
use crate::linalg::{DenseEmbeddingTable, LinalgError};
use crate::matrix::{normalize_word, SparseBinaryMatrix};

pub const SPARSE_MAGIC: &str = "LEXVEC-SPARSE";
pub const SPARSE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("unsupported format version {0}")]
    Version(String),
    #[error("{what}: header says {expected}, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error(transparent)]
    Table(#[from] LinalgError),
}

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line { line, message: message.into() }
}

pub fn save_sparse<W: Write>(m: &SparseBinaryMatrix, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SPARSE_MAGIC} {SPARSE_VERSION} {} {} {}", m.n_words(), m.n_features(), m.nnz())?;
    for (i, name) in m.registry().names().iter().enumerate() {
        writeln!(out, "F {i} {name}")?;
    }
    for (word, row) in m.vocab().iter().zip(m.rows()) {
        write!(out, "W {word}")?;
        for id in row {
            write!(out, " {id}")?;
        }
        writeln!(out)?;
    }
    out.flush()
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, FormatError> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| line_err(line, format!("bad {what}")))
}

pub fn load_sparse<R: BufRead>(src: R) -> Result<SparseBinaryMatrix, FormatError> {
    let mut lines = src.lines().enumerate().map(|(i, l)| l.map(|l| (i + 1, l)));
    let (_, header) = lines.next().transpose()?.ok_or_else(|| line_err(1, "missing header"))?;
    let mut h = header.split_whitespace();
    if h.next() != Some(SPARSE_MAGIC) {
        return Err(line_err(1, format!("expected {SPARSE_MAGIC} header")));
    }
    match h.next() {
        Some(v) if v == SPARSE_VERSION.to_string() => {}
        other => return Err(FormatError::Version(other.unwrap_or("").to_string())),
    }
    let n = parse_count(h.next(), 1, "word count")?;
    let d = parse_count(h.next(), 1, "feature count")?;
    let nnz = parse_count(h.next(), 1, "nnz")?;
    if h.next().is_some() {
        return Err(line_err(1, "trailing fields in header"));
    }

    let mut names: Vec<FeatureName> = Vec::with_capacity(d);
    let mut vocab: Vec<String> = Vec::with_capacity(n);
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut support = vec![0usize; d];
    let mut seen_nnz = 0usize;

    for item in lines {
        let (ln, text) = item?;
        if text.trim().is_empty() {
            return Err(line_err(ln, "blank line"));
        }
        let mut f = text.split_whitespace();
        match f.next() {
            Some("F") => {
                if !vocab.is_empty() {
                    return Err(line_err(ln, "feature line after word lines"));
                }
                let id = parse_count(f.next(), ln, "column id")?;
                if id != names.len() {
                    return Err(line_err(ln, format!("expected column id {}, found {id}", names.len())));
                }
                if id >= d {
                    return Err(FormatError::Count { what: "features", expected: d, found: id + 1 });
                }
                let raw = f.next().ok_or_else(|| line_err(ln, "missing feature name"))?;
                if f.next().is_some() {
                    return Err(line_err(ln, "trailing fields"));
                }
                let name = FeatureName::canonicalize(raw).map_err(|e| line_err(ln, e.to_string()))?;
                if name.as_str() != raw {
                    return Err(line_err(ln, format!("feature name {raw:?} is not canonical")));
                }
                if names.last().is_some_and(|prev| *prev >= name) {
                    return Err(line_err(ln, "feature names not in ascending order"));
                }
                names.push(name);
            }
            Some("W") => {
                if names.len() != d {
                    return Err(FormatError::Count { what: "features", expected: d, found: names.len() });
                }
                if vocab.len() == n {
                    return Err(FormatError::Count { what: "words", expected: n, found: n + 1 });
                }
                let raw = f.next().ok_or_else(|| line_err(ln, "missing word"))?;
                let word = normalize_word(raw).map_err(|e| line_err(ln, e.to_string()))?;
                if word != raw {
                    return Err(line_err(ln, format!("word {raw:?} is not normalized")));
                }
                if vocab.last().is_some_and(|prev| *prev >= word) {
                    return Err(line_err(ln, "words not in ascending order"));
                }
                let mut row: Vec<u32> = Vec::new();
                for tok in f {
                    let id: u32 = tok.parse().map_err(|_| line_err(ln, format!("bad column id {tok:?}")))?;
                    if id as usize >= d {
                        return Err(line_err(ln, format!("column id {id} out of range")));
                    }
                    if row.last().is_some_and(|&prev| prev >= id) {
                        return Err(line_err(ln, "column ids not ascending"));
                    }
                    support[id as usize] += 1;
                    row.push(id);
                }
                if row.is_empty() {
                    return Err(line_err(ln, "word has no active features"));
                }
                seen_nnz += row.len();
                vocab.push(word);
                rows.push(row);
            }
            _ => return Err(line_err(ln, "expected an F or W line")),
        }
    }
    if names.len() != d {
        return Err(FormatError::Count { what: "features", expected: d, found: names.len() });
    }
    if vocab.len() != n {
        return Err(FormatError::Count { what: "words", expected: n, found: vocab.len() });
    }
    if seen_nnz != nnz {
        return Err(FormatError::Count { what: "nnz", expected: nnz, found: seen_nnz });
    }
    if let Some(col) = support.iter().position(|&s| s == 0) {
        return Err(line_err(col + 2, format!("feature {} has no active words", names[col])));
    }
    Ok(SparseBinaryMatrix::assemble(vocab, rows, FeatureRegistry::from_sorted(names)))
}

pub fn save_dense<W: Write>(t: &DenseEmbeddingTable, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", t.len(), t.dim())?;
    for (word, row) in t.rows() {
        write!(out, "{word}")?;
        for v in row {
            write!(out, " {v:?}")?;
        }
        writeln!(out)?;
    }
    out.flush()
}

/// A loaded dense table plus the number of duplicate rows that were ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLoad {
    pub table: DenseEmbeddingTable,
    /// Rows whose word had already appeared; the first occurrence is kept.
    pub duplicates: usize,
}

fn parse_header(text: &str) -> Option<(usize, usize)> {
    let mut it = text.split_whitespace();
    let n = it.next()?.parse().ok()?;
    let k = it.next()?.parse().ok()?;
    it.next().is_none().then_some((n, k))
}

pub fn load_dense<R: BufRead>(src: R) -> Result<DenseLoad, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut dim: Option<usize> = None;
    let mut vocab = Vec::new();
    let mut data = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut rows = 0usize;
    let mut duplicates = 0usize;
    let mut first = true;
    for (i, line) in src.lines().enumerate() {
        let ln = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if std::mem::take(&mut first) {
            if let Some((n, k)) = parse_header(&line) {
                if k == 0 {
                    return Err(line_err(ln, "dimension must be at least 1"));
                }
                header = Some((n, k));
                dim = Some(k);
                continue;
            }
        }
        let mut f = line.split_whitespace();
        let word = f.next().expect("non-blank line");
        let values = f
            .map(|tok| tok.parse::<f64>().map_err(|_| line_err(ln, format!("non-numeric field {tok:?}"))))
            .collect::<Result<Vec<f64>, _>>()?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(line_err(ln, "non-finite value"));
        }
        let k = *dim.get_or_insert(values.len());
        if values.len() != k || k == 0 {
            return Err(line_err(ln, format!("expected {k} values, found {}", values.len())));
        }
        rows += 1;
        if !seen.insert(word.to_string()) {
            duplicates += 1;
            continue;
        }
        vocab.push(word.to_string());
        data.extend(values);
    }
    if let Some((n, _)) = header {
        if n != rows {
            return Err(FormatError::Count { what: "rows", expected: n, found: rows });
        }
    }
    let dim = dim.ok_or_else(|| line_err(1, "empty embedding file"))?;
    Ok(DenseLoad { table: DenseEmbeddingTable::new(vocab, dim, data)?, duplicates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_matrix, WordFeaturePair};

    fn fixture() -> SparseBinaryMatrix {
        build_matrix(
            [("love", "POL.POS"), ("love", "PTB.VERB"), ("ugly", "ANTO.FAIR")]
                .into_iter()
                .map(|(w, f)| WordFeaturePair::parse(w, f).unwrap()),
        )
    }

    fn saved(m: &SparseBinaryMatrix) -> String {
        let mut buf = Vec::new();
        save_sparse(m, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn sparse_layout() {
        assert_eq!(
            saved(&fixture()),
            "LEXVEC-SPARSE 1 2 3 3\nF 0 ANTO.FAIR\nF 1 POL.POS\nF 2 PTB.VERB\nW love 1 2\nW ugly 0\n"
        );
        let m = load_sparse(saved(&fixture()).as_bytes()).unwrap();
        assert_eq!(m, fixture());
        assert_eq!(m.stats(), fixture().stats());
    }

    #[test]
    fn sparse_empty() {
        let m = build_matrix(Vec::new());
        let text = saved(&m);
        assert_eq!(text, "LEXVEC-SPARSE 1 0 0 0\n");
        let back = load_sparse(text.as_bytes()).unwrap();
        assert_eq!((back.n_words(), back.n_features()), (0, 0));
    }

    #[test]
    fn sparse_rejections() {
        let good = saved(&fixture());
        let cases = [
            good.replace("1 2 3 3", "1 2 3 4"),
            good.replace("LEXVEC-SPARSE 1", "LEXVEC-SPARSE 2"),
            good.replace("W love 1 2", "W love 2 1"),
            good.replace("F 0 ANTO.FAIR\nF 1 POL.POS", "F 0 POL.POS\nF 1 ANTO.FAIR"),
            good.replace("W love 1 2\nW ugly 0", "W ugly 0\nW love 1 2"),
            good.replace("1 2 3 3", "1 3 3 3"),
            good.replace("W ugly 0\n", ""),
            good.replace("W ugly 0", "W ugly 0\nW zzz 0"),
            good.replace("F 1 POL.POS", "F 1 pol.pos"),
            good.replace("W love", "W Love"),
            good.replace("W ugly 0", "W ugly 7"),
            good.replace("W ugly 0", "W ugly"),
        ];
        for bad in cases {
            assert!(load_sparse(bad.as_bytes()).is_err(), "accepted:\n{bad}");
        }
        assert!(matches!(load_sparse(good.replace("1 2 3 3", "1 2 3 4").as_bytes()), Err(FormatError::Count { .. })));
        assert!(matches!(
            load_sparse(good.replace("LEXVEC-SPARSE 1", "LEXVEC-SPARSE 9").as_bytes()),
            Err(FormatError::Version(_))
        ));
    }

    #[test]
    fn dense_echo_and_round_trip() {
        let text = "2 3\ncat 0.1 -2 3.5e-7\ndog 1 0 -0\n";
        let load = load_dense(text.as_bytes()).unwrap();
        assert_eq!(load.table.get("cat"), Some(&[0.1, -2.0, 3.5e-7][..]));
        let mut buf = Vec::new();
        save_dense(&load.table, &mut buf).unwrap();
        let again = load_dense(buf.as_slice()).unwrap();
        assert_eq!(again.table, load.table);
        for (a, b) in again.table.get("dog").unwrap().iter().zip(load.table.get("dog").unwrap()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn dense_headerless_and_duplicates() {
        let load = load_dense("the 0.5 0.25\nof 1 2\nthe 9 9\n".as_bytes()).unwrap();
        assert_eq!(load.table.dim(), 2);
        assert_eq!(load.duplicates, 1);
        assert_eq!(load.table.get("the"), Some(&[0.5, 0.25][..]));
    }

    #[test]
    fn dense_rejections() {
        assert!(matches!(load_dense("3 2\na 1 2\nb 3 4\n".as_bytes()), Err(FormatError::Count { .. })));
        assert!(load_dense("a 1 2\nb 3\n".as_bytes()).is_err());
        assert!(load_dense("a 1 x\n".as_bytes()).is_err());
        assert!(load_dense("a 1 nan\n".as_bytes()).is_err());
        assert!(load_dense("".as_bytes()).is_err());
        assert!(load_dense("a\n".as_bytes()).is_err());
    }
}
