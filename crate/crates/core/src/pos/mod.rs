//! Tokenization and part-of-speech tagging.

mod lexicon;
pub mod morph;
mod tagger;
mod tokenize;

pub use lexicon::Lexicon;
pub use tagger::BuiltinTagger;
pub use tokenize::{is_emoji, is_url, tokenize};

use thiserror::Error;

use crate::types::{PennTag, Token};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosError {
    #[error("lexicon {path}:{line}: {message}")]
    Lexicon {
        path: String,
        line: usize,
        message: String,
    },
    #[error("line {line}: gold record `{surface}` has no tag column")]
    GoldTagMissing { line: usize, surface: String },
}

/// One pre-tagged input record; `line` is used for error reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldRecord {
    pub surface: String,
    pub tag: Option<String>,
    pub line: usize,
}

/// Copy externally supplied tags onto tokens. Unknown tag codes map to
/// `OTHER`; a missing tag is an error.
pub fn tag_gold(records: &[GoldRecord]) -> Result<Vec<Token>, PosError> {
    records
        .iter()
        .enumerate()
        .map(|(i, r)| match &r.tag {
            Some(t) if !t.trim().is_empty() => {
                Ok(Token::new(r.surface.clone(), PennTag::parse(t.trim()), i))
            }
            _ => Err(PosError::GoldTagMissing {
                line: r.line,
                surface: r.surface.clone(),
            }),
        })
        .collect()
}

/// Parse whitespace-separated `surface/TAG` items. The tag is taken after
/// the last `/`; an item without one is tagged `OTHER`.
pub fn parse_tagged(text: &str) -> Vec<Token> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, item)| match item.rsplit_once('/') {
            Some((s, t)) if !s.is_empty() => Token::new(s, PennTag::parse(t), i),
            _ => Token::new(item, PennTag::Other, i),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub enum PosProvider {
    Builtin(BuiltinTagger),
    Gold,
}

impl PosProvider {
    pub fn builtin() -> PosProvider {
        PosProvider::Builtin(BuiltinTagger::default())
    }

    pub fn is_gold(&self) -> bool {
        matches!(self, PosProvider::Gold)
    }

    /// Tokenize and tag raw text. The gold provider has no tagger, so raw
    /// text passed to it comes back tagged `OTHER`.
    pub fn tag_text(&self, text: &str) -> Vec<Token> {
        let tokens = tokenize(text);
        match self {
            PosProvider::Builtin(t) => t.tag(tokens),
            PosProvider::Gold => tokens,
        }
    }

    pub fn tag(&self, tokens: Vec<Token>) -> Vec<Token> {
        match self {
            PosProvider::Builtin(t) => t.tag(tokens),
            PosProvider::Gold => tokens,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tags(text: &str) -> Vec<(String, PennTag)> {
        PosProvider::builtin()
            .tag_text(text)
            .into_iter()
            .map(|t| (t.surface, t.pos))
            .collect()
    }

    fn tag_seq(text: &str) -> Vec<PennTag> {
        tags(text).into_iter().map(|(_, t)| t).collect()
    }

    #[test]
    fn slash_tagged_input() {
        let t = parse_tagged("It/PRP n't/RB :/)/SYM https://x.y/OTHER her/PRP$ odd");
        assert_eq!(t[0].pos, PennTag::Prp);
        assert_eq!(t[2].surface, ":/)");
        assert_eq!(t[3].surface, "https://x.y");
        assert_eq!(t[4].pos, PennTag::PrpS);
        assert_eq!(t[5].pos, PennTag::Other);
    }

    #[test]
    fn the_dog_barked() {
        assert_eq!(tag_seq("The dog barked"), [PennTag::Dt, PennTag::Nn, PennTag::Vbd]);
    }

    #[test]
    fn punctuation() {
        assert_eq!(tag_seq("."), [PennTag::Punct]);
        assert_eq!(tag_seq(", ; !"), [PennTag::Punct; 3]);
    }

    #[test]
    fn gold_passthrough() {
        let recs = vec![GoldRecord { surface: "dog".into(), tag: Some("NN".into()), line: 1 }];
        let toks = tag_gold(&recs).unwrap();
        assert_eq!(toks[0].surface, "dog");
        assert_eq!(toks[0].pos, PennTag::Nn);
        let bad = vec![GoldRecord { surface: "dog".into(), tag: None, line: 7 }];
        assert_eq!(
            tag_gold(&bad).unwrap_err(),
            PosError::GoldTagMissing { line: 7, surface: "dog".into() }
        );
        let odd = vec![GoldRecord { surface: "x".into(), tag: Some("ZZZ".into()), line: 1 }];
        assert_eq!(tag_gold(&odd).unwrap()[0].pos, PennTag::Other);
    }

    #[test]
    fn contextual_choices() {
        let t = tags("It doesn't seem likely.");
        assert_eq!(t[0].1, PennTag::Prp);
        assert_eq!(t[1].1, PennTag::Vbz);
        assert_eq!(t[2].1, PennTag::Rb);
        assert_eq!(t[3].1, PennTag::Vb);
        assert_eq!(t[4].1, PennTag::Jj);
        let t = tag_seq("the house which was built by them");
        assert_eq!(t[4], PennTag::Vbn);
        let t = tag_seq("I have written a letter");
        assert_eq!(t[2], PennTag::Vbn);
        let t = tag_seq("I think that we should go");
        assert_eq!(t[1], PennTag::Vbp);
        assert_eq!(t[2], PennTag::In);
        assert_eq!(t[5], PennTag::Vb);
        let t = tag_seq("She gave her book to him");
        assert_eq!(t[2], PennTag::PrpS);
        let t = tag_seq("I saw her.");
        assert_eq!(t[2], PennTag::Prp);
        let t = tag_seq("There is a cat");
        assert_eq!(t[0], PennTag::Ex);
    }

    #[test]
    fn unknown_words_by_suffix() {
        let t = tags("the frobnication was glorpingly blurfed by Zanzibar");
        assert_eq!(t[1].1, PennTag::Nn);
        assert_eq!(t[3].1, PennTag::Rb);
        assert_eq!(t[4].1, PennTag::Vbn);
        assert_eq!(t[6].1, PennTag::Nnp);
    }

    #[test]
    fn social_tokens() {
        let t = tag_seq("@bob #tbt https://x.y :) 42");
        assert_eq!(t, [PennTag::Nnp, PennTag::Other, PennTag::Other, PennTag::Sym, PennTag::Cd]);
    }

    proptest! {
        #[test]
        fn tagging_is_total_deterministic_and_surface_preserving(text in "[a-zA-Z,.!?' ]{0,80}") {
            let p = PosProvider::builtin();
            let toks = tokenize(&text);
            let a = p.tag(toks.clone());
            let b = p.tag(toks.clone());
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.len(), toks.len());
            for (x, y) in a.iter().zip(&toks) {
                prop_assert_eq!(&x.surface, &y.surface);
                prop_assert_eq!(x.index, y.index);
            }
        }
    }
}
