//! Canonical feature names and the column registry.
//!
//! A feature name is an uppercase, dot-separated identifier such as
//! `WN.SYNSET.FILM.V.01` or `COLOR.PINK`. The first segment names the lexicon
//! family the feature came from, so identically spelled features from two
//! resources never share a column.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Family prefixes produced by the bundled adapters.
pub mod family {
    pub const WORDNET: &str = "WN";
    pub const SUPERSENSE: &str = "SS";
    pub const FRAMENET: &str = "FN";
    pub const POLARITY: &str = "POL";
    pub const EMOTION: &str = "EMO";
    pub const CONNOTATION: &str = "CON";
    pub const COLOR: &str = "COLOR";
    pub const PTB: &str = "PTB";
    pub const SYNONYM: &str = "SYNO";
    pub const ANTONYM: &str = "ANTO";
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeatureError {
    #[error("feature name is empty")]
    Empty,
    #[error("feature name {name:?} contains invalid character {ch:?}")]
    InvalidChar { name: String, ch: char },
    #[error("feature name {0:?} has an empty segment")]
    EmptySegment(String),
}

/// A validated, canonical feature identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureName(String);

impl FeatureName {
    /// Canonicalizes `raw`: trims, uppercases, turns whitespace runs into `_`,
    /// then checks the result against `[A-Z0-9_.]+` with non-empty segments.
    pub fn canonicalize(raw: &str) -> Result<Self, FeatureError> {
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            return Err(FeatureError::Empty);
        }
        let mut out = String::with_capacity(trimmed.len());
        let mut in_space = false;
        for ch in trimmed.chars() {
            if ch.is_whitespace() {
                if !in_space {
                    out.push('_');
                }
                in_space = true;
                continue;
            }
            in_space = false;
            for up in ch.to_uppercase() {
                if !(up.is_ascii_uppercase() || up.is_ascii_digit() || up == '_' || up == '.') {
                    return Err(FeatureError::InvalidChar { name: raw.to_string(), ch });
                }
                out.push(up);
            }
        }
        if out.split('.').any(str::is_empty) {
            return Err(FeatureError::EmptySegment(raw.to_string()));
        }
        Ok(FeatureName(out))
    }

    /// Joins a family prefix with `rest`, unless `rest` already starts with
    /// that family, then canonicalizes.
    pub fn with_family(family: &str, rest: &str) -> Result<Self, FeatureError> {
        let body = Self::canonicalize(rest)?;
        let fam = Self::canonicalize(family)?;
        if body.family() == fam.as_str() {
            Ok(body)
        } else {
            Ok(FeatureName(format!("{}.{}", fam.0, body.0)))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// First dot-separated segment.
    pub fn family(&self) -> &str {
        self.0.split('.').next().unwrap_or("")
    }
}

impl fmt::Display for FeatureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for FeatureName {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::canonicalize(s)
    }
}

/// Turns arbitrary text into a single name segment: ASCII alphanumerics are
/// uppercased, every run of other characters becomes one `_`, and leading or
/// trailing `_` are dropped. Returns `None` if nothing survives.
pub fn name_segment(text: &str) -> Option<String> {
    let mut out = String::new();
    let mut pending = false;
    for ch in text.chars() {
        if ch.is_ascii_alphanumeric() {
            if pending && !out.is_empty() {
                out.push('_');
            }
            pending = false;
            out.push(ch.to_ascii_uppercase());
        } else {
            pending = true;
        }
    }
    (!out.is_empty()).then_some(out)
}

/// Like [`name_segment`] but drops separators entirely, so `collage_film`
/// becomes `COLLAGEFILM`.
pub fn compact_segment(text: &str) -> Option<String> {
    let out: String = text.chars().filter(char::is_ascii_alphanumeric).map(|c| c.to_ascii_uppercase()).collect();
    (!out.is_empty()).then_some(out)
}

/// Bijection between feature names and dense column ids `0..D`, ordered
/// lexicographically by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureRegistry {
    names: Vec<FeatureName>,
    index: HashMap<FeatureName, u32>,
}

impl FeatureRegistry {
    /// Builds a registry from names that are already sorted and unique.
    pub(crate) fn from_sorted(names: Vec<FeatureName>) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i as u32)).collect();
        FeatureRegistry { names, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &FeatureName) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Looks up a name after canonicalizing it.
    pub fn id_of(&self, raw: &str) -> Option<u32> {
        FeatureName::canonicalize(raw).ok().and_then(|n| self.id(&n))
    }

    pub fn name(&self, id: u32) -> Option<&FeatureName> {
        self.names.get(id as usize)
    }

    pub fn names(&self) -> &[FeatureName] {
        &self.names
    }
}
