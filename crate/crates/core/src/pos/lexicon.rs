use std::collections::HashMap;
use std::path::Path;

use super::morph::{add_s, verb_forms};
use super::PosError;
use crate::types::PennTag;

const BUILTIN: &str = include_str!("../../data/lexicon.tsv");

/// Word → candidate tags, most likely first.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, Vec<PennTag>>,
}

impl Lexicon {
    pub fn builtin() -> Lexicon {
        Lexicon::parse(BUILTIN).expect("builtin lexicon is well-formed")
    }

    pub fn from_path(path: &Path) -> Result<Lexicon, PosError> {
        let text = std::fs::read_to_string(path).map_err(|source| PosError::Lexicon {
            path: path.display().to_string(),
            line: 0,
            message: source.to_string(),
        })?;
        Lexicon::parse(&text).map_err(|e| match e {
            PosError::Lexicon { line, message, .. } => PosError::Lexicon {
                path: path.display().to_string(),
                line,
                message,
            },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Lexicon, PosError> {
        let mut lex = Lexicon::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| PosError::Lexicon {
                path: "<builtin>".into(),
                line: n + 1,
                message: message.to_string(),
            };
            let (head, rest) = line
                .split_once('\t')
                .ok_or_else(|| err("expected `word<TAB>tags`"))?;
            let rest: Vec<&str> = rest.split_whitespace().collect();
            if rest.is_empty() {
                return Err(err("missing tags"));
            }
            match head {
                "@noun" => {
                    let plural = rest.get(1).map_or_else(|| add_s(rest[0]), |p| p.to_string());
                    lex.add(rest[0], PennTag::Nn);
                    lex.add(&plural, PennTag::Nns);
                }
                "@verb" => {
                    for lemma in &rest {
                        let f = verb_forms(lemma);
                        lex.add(&f.base, PennTag::Vb);
                        lex.add(&f.base, PennTag::Vbp);
                        lex.add(&f.third_singular, PennTag::Vbz);
                        lex.add(&f.present_participle, PennTag::Vbg);
                        for p in &f.past {
                            lex.add(p, PennTag::Vbd);
                        }
                        for p in &f.past_participle {
                            lex.add(p, PennTag::Vbn);
                        }
                    }
                }
                "@adj" => {
                    lex.add(rest[0], PennTag::Jj);
                    if let Some(c) = rest.get(1) {
                        lex.add(c, PennTag::Jjr);
                    }
                    if let Some(s) = rest.get(2) {
                        lex.add(s, PennTag::Jjs);
                    }
                }
                "@adv" => {
                    for w in &rest {
                        lex.add(w, PennTag::Rb);
                    }
                }
                word if word.starts_with('@') => return Err(err("unknown directive")),
                word => {
                    for t in &rest {
                        let tag = PennTag::parse(t);
                        if tag == PennTag::Other && *t != "OTHER" {
                            return Err(err(&format!("unknown tag `{t}`")));
                        }
                        lex.add(word, tag);
                    }
                }
            }
        }
        Ok(lex)
    }

    fn add(&mut self, word: &str, tag: PennTag) {
        let tags = self.entries.entry(word.to_lowercase()).or_default();
        if !tags.contains(&tag) {
            tags.push(tag);
        }
    }

    pub fn get(&self, lower: &str) -> Option<&[PennTag]> {
        self.entries.get(lower).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
