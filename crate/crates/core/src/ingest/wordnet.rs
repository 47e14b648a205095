//! WordNet database (`data.*`) parsing and WordNet feature derivation.
//!
//! A data line looks like
//!
//! ```text
//! 06613686 10 n 01 film 0 003 @ 06613056 n 0000 ~ 06614628 n 0000 ~ 06614729 n 0000 | a form of ...
//! ```
//!
//! i.e. offset, lexicographer file, synset type, hex word count,
//! `(word, lex_id)` pairs, a three digit pointer count and
//! `(symbol, offset, pos, source/target)` pointers. Verb lines may carry
//! frame data after the pointers; everything after `|` is the gloss.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use super::{Extraction, IngestError};
use crate::feature::{compact_segment, family, FeatureName};
use crate::matrix::{normalize_word, WordFeaturePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WnPos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl WnPos {
    /// Maps a synset-type character; satellites (`s`) are adjectives.
    pub fn from_type_char(c: &str) -> Option<Self> {
        match c {
            "n" => Some(WnPos::Noun),
            "v" => Some(WnPos::Verb),
            "a" | "s" => Some(WnPos::Adj),
            "r" => Some(WnPos::Adv),
            _ => None,
        }
    }

    /// Letter used inside feature names.
    pub fn letter(self) -> &'static str {
        match self {
            WnPos::Noun => "N",
            WnPos::Verb => "V",
            WnPos::Adj => "A",
            WnPos::Adv => "R",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointerKind {
    Hypernym,
    Hyponym,
    Antonym,
    Pertainym,
    MemberHolonym,
    SubstanceHolonym,
    PartHolonym,
}

impl PointerKind {
    /// The closed set of pointer symbols we keep; other symbols are ignored.
    pub fn from_symbol(sym: &str) -> Option<Self> {
        match sym {
            "@" => Some(PointerKind::Hypernym),
            "~" => Some(PointerKind::Hyponym),
            "!" => Some(PointerKind::Antonym),
            "\\" => Some(PointerKind::Pertainym),
            "#m" => Some(PointerKind::MemberHolonym),
            "#s" => Some(PointerKind::SubstanceHolonym),
            "#p" => Some(PointerKind::PartHolonym),
            _ => None,
        }
    }

    fn feature_stem(self) -> &'static str {
        match self {
            PointerKind::Hypernym => "HYPER",
            PointerKind::Hyponym => "HYPO",
            PointerKind::Antonym => "ANTO",
            PointerKind::Pertainym => "PERT",
            PointerKind::MemberHolonym => "HOLO.MEMBER",
            PointerKind::SubstanceHolonym => "HOLO.SUBSTANCE",
            PointerKind::PartHolonym => "HOLO.PART",
        }
    }

    fn is_lexical(self) -> bool {
        matches!(self, PointerKind::Antonym | PointerKind::Pertainym)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pointer {
    pub kind: PointerKind,
    pub target_offset: u64,
    pub target_pos: WnPos,
    /// 1-based word index in the source synset, 0 for synset-level pointers.
    pub source_word: u8,
    /// 1-based word index in the target synset, 0 for synset-level pointers.
    pub target_word: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordNetSynsetRecord {
    pub offset: u64,
    pub pos: WnPos,
    /// Single-token member words, lowercased. Multiword members are excluded.
    pub lemmas: Vec<String>,
    /// Every member as written (lowercased, adjective markers stripped),
    /// including multiword ones; indexed by lexical pointers.
    pub words: Vec<String>,
    pub pointers: Vec<Pointer>,
    /// Ordinal of this synset among the same-POS synsets containing its
    /// first member, in file order.
    pub sense_number: u32,
}

impl WordNetSynsetRecord {
    /// Label used in feature names: the first member with separators removed.
    pub fn label(&self) -> String {
        self.words.first().and_then(|w| compact_segment(w)).unwrap_or_else(|| format!("S{}", self.offset))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DanglingPointer {
    pub from_offset: u64,
    pub from_pos: WnPos,
    pub target_offset: u64,
    pub target_pos: WnPos,
}

/// Parsed records from all supplied data files.
#[derive(Debug, Clone, Default)]
pub struct WordNetDb {
    pub records: Vec<WordNetSynsetRecord>,
    /// Pointers whose target synset was not found; they are removed from
    /// `records`.
    pub dangling: Vec<DanglingPointer>,
}

struct Cursor<'a> {
    fields: std::slice::Iter<'a, &'a str>,
    file: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str, IngestError> {
        self.fields.next().copied().ok_or_else(|| IngestError::Malformed {
            file: self.file.to_string(),
            line: self.line,
            message: format!("line ends before {what}"),
        })
    }

    fn err(&self, message: String) -> IngestError {
        IngestError::Malformed { file: self.file.to_string(), line: self.line, message }
    }
}

fn strip_adj_marker(word: &str) -> &str {
    match word.find('(') {
        Some(i) if word.ends_with(')') => &word[..i],
        _ => word,
    }
}

fn parse_line(text: &str, file: &str, line: usize) -> Result<WordNetSynsetRecord, IngestError> {
    let data = text.split_once(" | ").map(|(d, _)| d).unwrap_or(text);
    let data = data.strip_suffix(" |").unwrap_or(data);
    let fields: Vec<&str> = data.split_whitespace().collect();
    let mut cur = Cursor { fields: fields.iter(), file, line };

    let offset_txt = cur.next("synset offset")?;
    let offset: u64 = offset_txt.parse().map_err(|_| cur.err(format!("bad synset offset {offset_txt:?}")))?;
    let lex_file = cur.next("lexicographer file number")?;
    if lex_file.parse::<u32>().is_err() {
        return Err(cur.err(format!("bad lexicographer file number {lex_file:?}")));
    }
    let ss_type = cur.next("synset type")?;
    let pos = WnPos::from_type_char(ss_type).ok_or_else(|| IngestError::UnknownSynsetType {
        file: file.to_string(),
        line,
        ch: ss_type.to_string(),
    })?;
    let w_cnt_txt = cur.next("word count")?;
    let w_cnt = usize::from_str_radix(w_cnt_txt, 16).map_err(|_| cur.err(format!("bad word count {w_cnt_txt:?}")))?;
    if w_cnt == 0 {
        return Err(cur.err("synset has no words".into()));
    }
    let mut words = Vec::with_capacity(w_cnt);
    let mut lemmas = Vec::new();
    for _ in 0..w_cnt {
        let raw = cur.next("word")?;
        let lex_id = cur.next("lex_id")?;
        if u8::from_str_radix(lex_id, 16).is_err() {
            return Err(cur.err(format!("bad lex_id {lex_id:?}")));
        }
        let word = strip_adj_marker(raw).to_lowercase();
        if let Ok(w) = normalize_word(&word) {
            if !lemmas.contains(&w) {
                lemmas.push(w);
            }
        }
        words.push(word);
    }
    let p_cnt_txt = cur.next("pointer count")?;
    let p_cnt: usize = p_cnt_txt.parse().map_err(|_| cur.err(format!("bad pointer count {p_cnt_txt:?}")))?;
    let mut pointers = Vec::new();
    for _ in 0..p_cnt {
        let sym = cur.next("pointer symbol")?;
        let target = cur.next("pointer offset")?;
        let tpos = cur.next("pointer part of speech")?;
        let st = cur.next("pointer source/target")?;
        let target_offset: u64 = target.parse().map_err(|_| cur.err(format!("bad pointer offset {target:?}")))?;
        let target_pos =
            WnPos::from_type_char(tpos).ok_or_else(|| cur.err(format!("bad pointer part of speech {tpos:?}")))?;
        if st.len() != 4 || !st.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(cur.err(format!("bad pointer source/target {st:?}")));
        }
        let source_word = u8::from_str_radix(&st[..2], 16).expect("checked hex");
        let target_word = u8::from_str_radix(&st[2..], 16).expect("checked hex");
        if let Some(kind) = PointerKind::from_symbol(sym) {
            pointers.push(Pointer { kind, target_offset, target_pos, source_word, target_word });
        }
    }
    Ok(WordNetSynsetRecord { offset, pos, lemmas, words, pointers, sense_number: 0 })
}

/// Parses one or more WordNet `data.*` files.
///
/// `files` pairs a display name with a reader. Header lines (leading space)
/// and blank lines are skipped; every other line must be a synset. Sense
/// numbers are assigned per part of speech in file order. Pointers whose
/// target is not among the parsed synsets are dropped and listed in
/// [`WordNetDb::dangling`].
pub fn parse_wordnet_db<R: BufRead>(files: Vec<(String, R)>) -> Result<WordNetDb, IngestError> {
    let mut records = Vec::new();
    for (name, reader) in files {
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|err| IngestError::Io { file: name.clone(), err })?;
            if line.starts_with(' ') || line.trim().is_empty() {
                continue;
            }
            records.push(parse_line(line.trim_end(), &name, i + 1)?);
        }
    }

    let mut seen: HashMap<(WnPos, String), u32> = HashMap::new();
    for rec in &mut records {
        let key = (rec.pos, rec.words[0].clone());
        let n = seen.entry(key).or_insert(0);
        *n += 1;
        rec.sense_number = *n;
        for w in rec.words.iter().skip(1) {
            // Later members also consume a sense slot for their own lemma.
            *seen.entry((rec.pos, w.clone())).or_insert(0) += 1;
        }
    }

    let known: HashSet<(WnPos, u64)> = records.iter().map(|r| (r.pos, r.offset)).collect();
    let mut dangling = Vec::new();
    for rec in &mut records {
        let (from_offset, from_pos) = (rec.offset, rec.pos);
        rec.pointers.retain(|p| {
            let ok = known.contains(&(p.target_pos, p.target_offset));
            if !ok {
                dangling.push(DanglingPointer {
                    from_offset,
                    from_pos,
                    target_offset: p.target_offset,
                    target_pos: p.target_pos,
                });
            }
            ok
        });
    }
    Ok(WordNetDb { records, dangling })
}

fn wn_feature(body: String) -> FeatureName {
    FeatureName::with_family(family::WORDNET, &body).expect("labels are alphanumeric segments")
}

/// Derives WordNet features for every single-token member of every synset.
///
/// Each member of synset `S` receives `WN.SYNSET.<label>.<P>.<kk>` for `S`
/// itself, `WN.HYPER.*`, `WN.HYPO.*` and `WN.HOLO.<KIND>.*` for related
/// synsets (labelled with sense `01`), and `WN.ANTO.<word>` / `WN.PERT.<word>`
/// for the targets of lexical pointers from any member of `S`.
pub fn derive_wordnet_features(db: &WordNetDb) -> Extraction {
    let by_key: HashMap<(WnPos, u64), &WordNetSynsetRecord> =
        db.records.iter().map(|r| ((r.pos, r.offset), r)).collect();
    let mut pairs = Vec::new();
    for rec in &db.records {
        if rec.lemmas.is_empty() {
            continue;
        }
        let mut feats =
            vec![wn_feature(format!("SYNSET.{}.{}.{:02}", rec.label(), rec.pos.letter(), rec.sense_number))];
        for p in &rec.pointers {
            let Some(target) = by_key.get(&(p.target_pos, p.target_offset)) else {
                continue;
            };
            let body = if p.kind.is_lexical() {
                let word = match p.target_word {
                    0 => target.words.first(),
                    k => target.words.get(k as usize - 1),
                };
                match word.and_then(|w| compact_segment(w)) {
                    Some(w) => format!("{}.{}", p.kind.feature_stem(), w),
                    None => continue,
                }
            } else {
                format!("{}.{}.{}.01", p.kind.feature_stem(), target.label(), target.pos.letter())
            };
            feats.push(wn_feature(body));
        }
        for lemma in &rec.lemmas {
            for f in &feats {
                pairs.push(WordFeaturePair::new(lemma, f.clone()).expect("lemmas are normalized"));
            }
        }
    }
    Extraction { pairs, warnings: db.dangling.len() }
}
