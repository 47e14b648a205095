//! Evaluation dataset types and their text loaders.
//!
//! - word pairs: `word1<TAB>word2<TAB>score`
//! - sentences: `label<TAB>token token ...` with label `0` or `1`
//! - noun phrases: `w1 w2 w3<TAB>L|R<TAB>fold` with fold `0`..`9`
//!
//! All files are UTF-8; blank lines and `#` comments are skipped. Words are
//! lowercased.

use std::collections::HashSet;
use std::io::BufRead;

use super::EvalError;

pub const NP_FOLDS: u8 = 10;

fn rows<R: BufRead>(src: R, file: &str) -> Result<Vec<(usize, Vec<String>)>, EvalError> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.map_err(|err| EvalError::Io { file: file.to_string(), err })?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        out.push((i + 1, line.split('\t').map(|c| c.trim().to_string()).collect()));
    }
    Ok(out)
}

fn parse_err(file: &str, line: usize, message: impl Into<String>) -> EvalError {
    EvalError::Parse { file: file.to_string(), line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordPair {
    pub first: String,
    pub second: String,
    pub gold: f64,
}

/// Human-scored word pairs. No unordered pair appears twice.
#[derive(Debug, Clone, PartialEq)]
pub struct WordPairDataset {
    pub name: String,
    pub pairs: Vec<WordPair>,
}

impl WordPairDataset {
    pub fn new(name: impl Into<String>, pairs: Vec<WordPair>) -> Result<Self, EvalError> {
        let mut seen = HashSet::new();
        for (i, p) in pairs.iter().enumerate() {
            if !p.gold.is_finite() {
                return Err(EvalError::NonFinite);
            }
            let key = if p.first <= p.second { (&p.first, &p.second) } else { (&p.second, &p.first) };
            if !seen.insert(key) {
                return Err(parse_err("<pairs>", i + 1, format!("duplicate pair {} {}", p.first, p.second)));
            }
        }
        Ok(WordPairDataset { name: name.into(), pairs })
    }
}

pub fn load_word_pairs<R: BufRead>(src: R, file: &str) -> Result<WordPairDataset, EvalError> {
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    for (line, cols) in rows(src, file)? {
        if cols.len() != 3 {
            return Err(parse_err(file, line, format!("expected 3 columns, found {}", cols.len())));
        }
        let gold: f64 = cols[2].parse().map_err(|_| parse_err(file, line, format!("bad score {:?}", cols[2])))?;
        if !gold.is_finite() {
            return Err(parse_err(file, line, "non-finite score"));
        }
        let (a, b) = (cols[0].to_lowercase(), cols[1].to_lowercase());
        if a.is_empty() || b.is_empty() {
            return Err(parse_err(file, line, "empty word"));
        }
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if !seen.insert(key) {
            return Err(parse_err(file, line, format!("duplicate pair {a} {b}")));
        }
        pairs.push(WordPair { first: a, second: b, gold });
    }
    Ok(WordPairDataset { name: file.to_string(), pairs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSentence {
    pub tokens: Vec<String>,
    pub label: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledSentenceDataset {
    pub train: Vec<LabeledSentence>,
    pub dev: Vec<LabeledSentence>,
    pub test: Vec<LabeledSentence>,
}

pub fn load_sentences<R: BufRead>(src: R, file: &str) -> Result<Vec<LabeledSentence>, EvalError> {
    rows(src, file)?
        .into_iter()
        .map(|(line, cols)| {
            if cols.len() != 2 {
                return Err(parse_err(file, line, format!("expected 2 columns, found {}", cols.len())));
            }
            let label = match cols[0].as_str() {
                "0" => false,
                "1" => true,
                other => return Err(parse_err(file, line, format!("label must be 0 or 1, got {other:?}"))),
            };
            let tokens: Vec<String> = cols[1].split_whitespace().map(str::to_lowercase).collect();
            if tokens.is_empty() {
                return Err(parse_err(file, line, "sentence has no tokens"));
            }
            Ok(LabeledSentence { tokens, label })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bracketing {
    /// `(w1 w2) w3`
    Left,
    /// `w1 (w2 w3)`
    Right,
}

impl Bracketing {
    pub fn as_label(self) -> bool {
        self == Bracketing::Right
    }

    pub fn from_label(label: bool) -> Self {
        if label {
            Bracketing::Right
        } else {
            Bracketing::Left
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Bracketing::Left => "L",
            Bracketing::Right => "R",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpTriple {
    pub words: [String; 3],
    pub label: Bracketing,
    pub fold: u8,
}

/// Three-word noun phrases, each assigned to one of ten folds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NpTripleDataset {
    pub items: Vec<NpTriple>,
}

impl NpTripleDataset {
    /// Item indices per fold, in file order.
    pub fn folds(&self) -> Vec<Vec<usize>> {
        let mut folds = vec![Vec::new(); NP_FOLDS as usize];
        for (i, it) in self.items.iter().enumerate() {
            folds[it.fold as usize].push(i);
        }
        folds
    }
}

pub fn load_np_triples<R: BufRead>(src: R, file: &str) -> Result<NpTripleDataset, EvalError> {
    let items = rows(src, file)?
        .into_iter()
        .map(|(line, cols)| {
            if cols.len() != 3 {
                return Err(parse_err(file, line, format!("expected 3 columns, found {}", cols.len())));
            }
            let words: Vec<String> = cols[0].split_whitespace().map(str::to_lowercase).collect();
            let words: [String; 3] = words
                .try_into()
                .map_err(|w: Vec<String>| parse_err(file, line, format!("expected 3 words, found {}", w.len())))?;
            let label = match cols[1].as_str() {
                "L" | "l" => Bracketing::Left,
                "R" | "r" => Bracketing::Right,
                other => return Err(parse_err(file, line, format!("label must be L or R, got {other:?}"))),
            };
            let fold: u8 = cols[2]
                .parse()
                .ok()
                .filter(|f| *f < NP_FOLDS)
                .ok_or_else(|| parse_err(file, line, format!("fold must be 0-9, got {:?}", cols[2])))?;
            Ok(NpTriple { words, label, fold })
        })
        .collect::<Result<_, _>>()?;
    Ok(NpTripleDataset { items })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_pairs() {
        let ds = load_word_pairs("# ws\nTiger\tcat\t7.35\nbook\tpaper\t7.46\n".as_bytes(), "ws.tsv").unwrap();
        assert_eq!(ds.pairs[0], WordPair { first: "tiger".into(), second: "cat".into(), gold: 7.35 });
        let dup = load_word_pairs("a\tb\t1\nb\ta\t2\n".as_bytes(), "ws.tsv").unwrap_err();
        assert!(matches!(dup, EvalError::Parse { line: 2, .. }));
        assert!(load_word_pairs("a\tb\tx\n".as_bytes(), "ws.tsv").is_err());
        assert!(load_word_pairs("a\tb\n".as_bytes(), "ws.tsv").is_err());
        assert!(load_word_pairs("a\tb\tNaN\n".as_bytes(), "ws.tsv").is_err());
    }

    #[test]
    fn sentences() {
        let s = load_sentences("1\tA Great Film\n0\tdull\n".as_bytes(), "s").unwrap();
        assert_eq!(s[0].tokens, ["a", "great", "film"]);
        assert!(s[0].label && !s[1].label);
        assert!(load_sentences("2\tx\n".as_bytes(), "s").is_err());
        assert!(load_sentences("1\t  \n".as_bytes(), "s").is_err());
    }

    #[test]
    fn np_both_labels() {
        let ds =
            load_np_triples("local phone company\tR\t0\nblood pressure medicine\tL\t3\n".as_bytes(), "np").unwrap();
        assert_eq!(ds.items[0].label, Bracketing::Right);
        assert_eq!(ds.items[1].label, Bracketing::Left);
        assert_eq!(ds.items[1].words[2], "medicine");
        assert_eq!(ds.folds()[3], vec![1]);
        assert!(load_np_triples("a b\tL\t0\n".as_bytes(), "np").is_err());
        assert!(load_np_triples("a b c\tX\t0\n".as_bytes(), "np").is_err());
        assert!(load_np_triples("a b c\tL\t10\n".as_bytes(), "np").is_err());
    }
}
