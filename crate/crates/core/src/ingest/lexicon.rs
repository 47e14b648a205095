//! Adapters over normalized tab-separated lexicon exports.
//!
//! | resource     | row layout                                   | features                                      |
//! |--------------|----------------------------------------------|-----------------------------------------------|
//! | supersense   | `word  Noun.Animal ...`                      | `SS.NOUN.ANIMAL`                              |
//! | emotion      | `word  Pol.Neg  Emo.Fear ...`                | `POL.NEG`, `EMO.FEAR`                         |
//! | color        | `word  Red ...`                              | `COLOR.RED`                                   |
//! | connotation  | `word  noun  negative`                       | `CON.NOUN.NEG`                                |
//! | framenet     | `word  v  Regard  Evaluee  Cognizer ...`     | `FN.VERB.FRAME.REGARD`, `FN.VERB.FRAME.ROLE.*`|
//! | ptb          | `word  NN  VBZ ...`                          | `PTB.NOUN`, `PTB.VERB`                        |
//! | synonyms     | `headword  member  member ...`               | `SYNO.<HEADWORD>` on each member              |
//! | antonyms     | `word  antonym ...`                          | `ANTO.<OTHER>` on both words                  |

use std::io::BufRead;

use super::{tsv_rows, Extraction, IngestError};
use crate::feature::{family, name_segment, FeatureName};
use crate::matrix::{normalize_word, PairError, WordFeaturePair};

/// How an attribute column becomes a feature name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttributeTemplate {
    /// Attribute is prefixed with the given family (`Red` → `COLOR.RED`).
    Prefix(String),
    /// Attribute already names its family, which must be one of these
    /// (`Pol.Neg` → `POL.NEG`).
    Namespaced(Vec<String>),
}

impl AttributeTemplate {
    pub fn supersense() -> Self {
        AttributeTemplate::Prefix(family::SUPERSENSE.into())
    }

    pub fn emotion() -> Self {
        AttributeTemplate::Namespaced(vec![family::POLARITY.into(), family::EMOTION.into()])
    }

    pub fn color() -> Self {
        AttributeTemplate::Prefix(family::COLOR.into())
    }

    fn apply(&self, attr: &str, file: &str, line: usize) -> Result<FeatureName, IngestError> {
        let bad = |err| IngestError::Feature { file: file.to_string(), line, err };
        match self {
            AttributeTemplate::Prefix(fam) => FeatureName::with_family(fam, attr).map_err(bad),
            AttributeTemplate::Namespaced(fams) => {
                let name = FeatureName::canonicalize(attr).map_err(bad)?;
                if fams.iter().any(|f| f.eq_ignore_ascii_case(name.family())) && name.as_str().contains('.') {
                    Ok(name)
                } else {
                    Err(IngestError::Malformed {
                        file: file.to_string(),
                        line,
                        message: format!("attribute {attr:?} is not in families {fams:?}"),
                    })
                }
            }
        }
    }
}

fn word_at(raw: &str, file: &str, line: usize) -> Result<String, IngestError> {
    normalize_word(raw).map_err(|e| IngestError::at(file, line, PairError::Word(e)))
}

fn pair(word: &str, feature: FeatureName) -> WordFeaturePair {
    WordFeaturePair::new(word, feature).expect("word already normalized")
}

fn min_columns(cols: &[String], n: usize, file: &str, line: usize) -> Result<(), IngestError> {
    if cols.len() < n || cols.iter().any(String::is_empty) {
        return Err(IngestError::ColumnCount {
            file: file.to_string(),
            line,
            expected: format!("at least {n} non-empty"),
            found: cols.iter().filter(|c| !c.is_empty()).count(),
        });
    }
    Ok(())
}

/// Reads `word<TAB>attribute[<TAB>attribute...]` rows and emits one pair per
/// attribute, named through `template`.
pub fn parse_attribute_tsv<R: BufRead>(
    src: R,
    file: &str,
    template: &AttributeTemplate,
) -> Result<Extraction, IngestError> {
    let mut pairs = Vec::new();
    for (line, cols) in tsv_rows(src, file)? {
        min_columns(&cols, 2, file, line)?;
        let word = word_at(&cols[0], file, line)?;
        for attr in &cols[1..] {
            pairs.push(pair(&word, template.apply(attr, file, line)?));
        }
    }
    Ok(Extraction { pairs, warnings: 0 })
}

/// Coarse part of speech shared by connotation and FrameNet rows.
fn coarse_pos(text: &str) -> Option<&'static str> {
    match text.to_ascii_lowercase().as_str() {
        "n" | "noun" => Some("NOUN"),
        "v" | "verb" => Some("VERB"),
        "a" | "j" | "adj" | "adjective" => Some("ADJ"),
        "r" | "adv" | "adverb" => Some("ADV"),
        _ => None,
    }
}

fn polarity(text: &str) -> Option<&'static str> {
    match text.to_ascii_lowercase().as_str() {
        "pos" | "positive" | "+" => Some("POS"),
        "neg" | "negative" | "-" => Some("NEG"),
        "neut" | "neutral" | "0" => Some("NEUT"),
        _ => None,
    }
}

/// `word<TAB>pos<TAB>polarity` → `CON.<POS>.<POL>`.
pub fn derive_connotation<R: BufRead>(src: R, file: &str) -> Result<Extraction, IngestError> {
    let mut pairs = Vec::new();
    for (line, cols) in tsv_rows(src, file)? {
        if cols.len() != 3 {
            return Err(IngestError::ColumnCount {
                file: file.to_string(),
                line,
                expected: "3".into(),
                found: cols.len(),
            });
        }
        let word = word_at(&cols[0], file, line)?;
        let malformed = |message: String| IngestError::Malformed { file: file.to_string(), line, message };
        let pos = coarse_pos(&cols[1]).ok_or_else(|| malformed(format!("unknown part of speech {:?}", cols[1])))?;
        let pol = polarity(&cols[2]).ok_or_else(|| malformed(format!("unknown polarity {:?}", cols[2])))?;
        let name =
            FeatureName::canonicalize(&format!("{}.{pos}.{pol}", family::CONNOTATION)).expect("fixed vocabulary");
        pairs.push(pair(&word, name));
    }
    Ok(Extraction { pairs, warnings: 0 })
}

/// `word<TAB>pos<TAB>frame[<TAB>role...]` → `FN.<POS>.FRAME.<FRAME>` plus
/// `FN.<POS>.FRAME.ROLE.<ROLE>` per role. Parts of speech outside
/// noun/verb/adjective/adverb keep their own (uppercased) tag.
pub fn derive_framenet<R: BufRead>(src: R, file: &str) -> Result<Extraction, IngestError> {
    let mut pairs = Vec::new();
    for (line, cols) in tsv_rows(src, file)? {
        min_columns(&cols, 3, file, line)?;
        let word = word_at(&cols[0], file, line)?;
        let segment = |text: &str| {
            name_segment(text).ok_or_else(|| IngestError::Malformed {
                file: file.to_string(),
                line,
                message: format!("{text:?} has no usable characters"),
            })
        };
        let pos = match coarse_pos(&cols[1]) {
            Some(p) => p.to_string(),
            None => segment(&cols[1])?,
        };
        let frame = segment(&cols[2])?;
        let fname = |body: String| FeatureName::canonicalize(&format!("{}.{pos}.FRAME.{body}", family::FRAMENET));
        pairs.push(pair(&word, fname(frame).expect("segments are canonical")));
        for role in &cols[3..] {
            let role = segment(role)?;
            pairs.push(pair(&word, fname(format!("ROLE.{role}")).expect("segments are canonical")));
        }
    }
    Ok(Extraction { pairs, warnings: 0 })
}

const PENN_TAGS: &[&str] = &[
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNS", "NNP", "NNPS", "PDT", "POS",
    "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP",
    "WP$", "WRB",
];

/// Coarsens a Penn Treebank tag. Returns the feature suffix and whether the
/// tag was recognised.
fn ptb_class(tag: &str) -> (Option<String>, bool) {
    let coarse = match tag {
        "NN" | "NNS" | "NNP" | "NNPS" => Some("NOUN"),
        "VB" | "VBD" | "VBG" | "VBN" | "VBP" | "VBZ" => Some("VERB"),
        "JJ" | "JJR" | "JJS" => Some("ADJ"),
        "RB" | "RBR" | "RBS" => Some("ADV"),
        _ => None,
    };
    if let Some(c) = coarse {
        return (Some(c.to_string()), true);
    }
    let known = PENN_TAGS.contains(&tag);
    // `$` cannot appear in a feature name; PRP$ becomes PRPS.
    let verbatim: String = tag
        .chars()
        .filter_map(|c| match c {
            '$' => Some('S'),
            c if c.is_ascii_alphanumeric() => Some(c.to_ascii_uppercase()),
            _ => None,
        })
        .collect();
    ((!verbatim.is_empty()).then_some(verbatim), known)
}

/// `word<TAB>TAG[<TAB>TAG...]` → `PTB.<CLASS>` per tag.
///
/// Unrecognised tags are kept verbatim and counted in
/// [`Extraction::warnings`]; tags with no alphanumeric characters are counted
/// and dropped.
pub fn derive_ptb_pos<R: BufRead>(src: R, file: &str) -> Result<Extraction, IngestError> {
    let mut out = Extraction::default();
    for (line, cols) in tsv_rows(src, file)? {
        min_columns(&cols, 2, file, line)?;
        let word = word_at(&cols[0], file, line)?;
        for tag in &cols[1..] {
            let (class, known) = ptb_class(tag);
            if !known {
                out.warnings += 1;
            }
            if let Some(class) = class {
                let name = FeatureName::with_family(family::PTB, &class).expect("alphanumeric tag");
                out.pairs.push(pair(&word, name));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThesaurusRelation {
    /// `headword<TAB>member...`: every member gets `SYNO.<HEADWORD>`.
    Synonym,
    /// `word<TAB>antonym...`: both sides get `ANTO.<other>`.
    Antonym,
}

/// Thesaurus rows. Multiword entries are dropped and counted in
/// [`Extraction::warnings`] rather than rejected, since printed thesauri
/// list many phrases.
pub fn derive_thesaurus<R: BufRead>(
    src: R,
    file: &str,
    relation: ThesaurusRelation,
) -> Result<Extraction, IngestError> {
    let mut out = Extraction::default();
    let feature = |fam: &str, word: &str| {
        name_segment(word).map(|s| FeatureName::with_family(fam, &s).expect("alphanumeric segment"))
    };
    for (line, cols) in tsv_rows(src, file)? {
        min_columns(&cols, 2, file, line)?;
        let Ok(head) = normalize_word(&cols[0]) else {
            out.warnings += 1;
            continue;
        };
        for other in &cols[1..] {
            let Ok(other) = normalize_word(other) else {
                out.warnings += 1;
                continue;
            };
            match relation {
                ThesaurusRelation::Synonym => match feature(family::SYNONYM, &head) {
                    Some(f) => out.pairs.push(pair(&other, f)),
                    None => out.warnings += 1,
                },
                ThesaurusRelation::Antonym => {
                    match (feature(family::ANTONYM, &other), feature(family::ANTONYM, &head)) {
                        (Some(fwd), Some(back)) => {
                            out.pairs.push(pair(&head, fwd));
                            out.pairs.push(pair(&other, back));
                        }
                        _ => out.warnings += 1,
                    }
                }
            }
        }
    }
    Ok(out)
}
