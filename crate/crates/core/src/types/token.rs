use serde::{Deserialize, Serialize};

use super::PennTag;

/// One text unit: surface form, POS tag and position in its document.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub pos: PennTag,
    /// Lowercased surface with typographic apostrophes folded to `'`.
    pub lower: String,
    pub index: usize,
}

impl Token {
    /// # Panics
    /// If `surface` is empty.
    pub fn new(surface: impl Into<String>, pos: PennTag, index: usize) -> Token {
        let surface = surface.into();
        assert!(!surface.is_empty(), "token surface must be non-empty");
        let lower = fold_lower(&surface);
        Token {
            surface,
            pos,
            lower,
            index,
        }
    }

    /// Build a tagged sequence from `(surface, tag)` pairs, indexing from 0.
    pub fn sequence<'a, I>(pairs: I) -> Vec<Token>
    where
        I: IntoIterator<Item = (&'a str, PennTag)>,
    {
        pairs
            .into_iter()
            .enumerate()
            .map(|(i, (s, t))| Token::new(s, t, i))
            .collect()
    }
}

/// Lowercase and map `’`/`‘` to ASCII `'` so clitics match one form.
pub fn fold_lower(surface: &str) -> String {
    if surface.is_ascii() {
        return surface.to_ascii_lowercase();
    }
    surface
        .chars()
        .map(|c| if c == '\u{2019}' || c == '\u{2018}' { '\'' } else { c })
        .flat_map(char::to_lowercase)
        .collect()
}

/// True when `tokens` are indexed 0..n without gaps.
pub fn is_well_indexed(tokens: &[Token]) -> bool {
    tokens.iter().enumerate().all(|(i, t)| t.index == i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_folds_apostrophes() {
        let t = Token::new("Doesn\u{2019}t", PennTag::Other, 0);
        assert_eq!(t.lower, "doesn't");
    }

    #[test]
    #[should_panic]
    fn empty_surface_rejected() {
        Token::new("", PennTag::Other, 0);
    }

    #[test]
    fn sequence_indexes_from_zero() {
        let toks = Token::sequence([("The", PennTag::Dt), ("dog", PennTag::Nn)]);
        assert!(is_well_indexed(&toks));
        assert_eq!(toks[1].index, 1);
    }
}
