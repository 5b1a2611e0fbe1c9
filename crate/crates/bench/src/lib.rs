//! Shared inputs for the benchmarks.

use biberkit_core::pos::PosProvider;
use biberkit_core::synthetic::corpus;
use biberkit_core::Token;

/// Raw texts totalling at least `tokens` tokens, in 500-token documents.
pub fn texts(tokens: usize, seed: u64) -> Vec<String> {
    corpus(tokens.div_ceil(500), 500, seed).into_iter().map(|d| d.text).collect()
}

/// The same texts, tokenized and tagged.
pub fn tagged(tokens: usize, seed: u64) -> Vec<Vec<Token>> {
    let p = PosProvider::builtin();
    texts(tokens, seed).iter().map(|t| p.tag_text(t)).collect()
}

pub fn token_count(docs: &[Vec<Token>]) -> u64 {
    docs.iter().map(|d| d.len() as u64).sum()
}
