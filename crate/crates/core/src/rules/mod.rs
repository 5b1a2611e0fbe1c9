//! Feature rules: the countable-feature engine plus the two per-chunk
//! real-valued measures.

mod engine;
mod wordlists;

#[cfg(test)]
mod fixtures;

pub use engine::{Engine, WINDOW};
pub use wordlists::{parse_list, WordListError, WordLists, LIST_NAMES};

use std::collections::HashSet;

use thiserror::Error;

use crate::types::{FeatureId, FeatureKind, PennTag, Token};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("chunk contains no word tokens")]
    EmptyChunk,
}

/// Mean word length and type-token ratio of one chunk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealValues {
    pub awl: f64,
    pub ttr: f64,
}

/// Tokens counted as words by the real-valued measures: everything not
/// tagged as punctuation.
pub fn is_word(t: &Token) -> bool {
    t.pos != PennTag::Punct
}

pub fn real_valued(chunk: &[Token]) -> Result<RealValues, RuleError> {
    let mut n = 0usize;
    let mut chars = 0usize;
    let mut types: HashSet<&str> = HashSet::new();
    for t in chunk.iter().filter(|t| is_word(t)) {
        n += 1;
        chars += t.surface.chars().count();
        types.insert(t.lower.as_str());
    }
    if n == 0 {
        return Err(RuleError::EmptyChunk);
    }
    Ok(RealValues {
        awl: chars as f64 / n as f64,
        ttr: types.len() as f64 / n as f64,
    })
}

/// The feature inventory in canonical order.
pub fn list_features() -> Vec<(FeatureId, FeatureKind, &'static str)> {
    FeatureId::ALL
        .iter()
        .map(|f| (*f, f.kind(), f.description()))
        .collect()
}
