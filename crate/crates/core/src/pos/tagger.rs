//! Lexicon + suffix tagger with a single left-to-right disambiguation pass.
//!
//! It is small on purpose: accurate enough for the bundled fixtures and
//! synthetic corpora, and a fallback when no external tagger is available.
//! Production tags should come through the gold passthrough.

#![allow(clippy::if_same_then_else)]

use crate::types::{PennTag, Token};

use super::lexicon::Lexicon;
use super::tokenize::{is_emoji, is_url};

#[derive(Debug, Clone)]
pub struct BuiltinTagger {
    lexicon: Lexicon,
}

impl Default for BuiltinTagger {
    fn default() -> Self {
        BuiltinTagger::new(Lexicon::builtin())
    }
}

fn is_be(w: &str) -> bool {
    matches!(
        w,
        "be" | "am" | "is" | "are" | "was" | "were" | "been" | "being" | "'m" | "'re"
    )
}

fn is_have(w: &str) -> bool {
    matches!(w, "have" | "has" | "had" | "having" | "'ve")
}

fn is_do(w: &str) -> bool {
    matches!(w, "do" | "does" | "did")
}

fn is_get(w: &str) -> bool {
    matches!(w, "get" | "gets" | "got" | "getting" | "gotten")
}

fn is_clause_break(surface: &str) -> bool {
    matches!(
        surface,
        "." | "!" | "?" | ":" | ";" | "\"" | "\u{201C}" | "\u{201D}" | "..." | "\u{2026}" | "(" | "-"
    )
}

fn is_noun_tag(t: PennTag) -> bool {
    t.is_noun()
}

fn first_noun(c: &[PennTag]) -> Option<PennTag> {
    c.iter().copied().find(|t| t.is_common_noun())
}

impl BuiltinTagger {
    pub fn new(lexicon: Lexicon) -> BuiltinTagger {
        BuiltinTagger { lexicon }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// Assign a tag to every token; surfaces and order are untouched.
    pub fn tag(&self, mut tokens: Vec<Token>) -> Vec<Token> {
        self.tag_in_place(&mut tokens);
        tokens
    }

    pub fn tag_in_place(&self, tokens: &mut [Token]) {
        let cands: Vec<Vec<PennTag>> = (0..tokens.len())
            .map(|i| self.candidates(tokens, i))
            .collect();
        for i in 0..tokens.len() {
            let tag = if cands[i].len() == 1 {
                cands[i][0]
            } else {
                self.choose(tokens, &cands, i)
            };
            tokens[i].pos = tag;
        }
    }

    fn candidates(&self, tokens: &[Token], i: usize) -> Vec<PennTag> {
        let tok = &tokens[i];
        let s = tok.surface.as_str();
        let first = s.chars().next().unwrap_or(' ');
        if is_emoji(first) {
            return vec![PennTag::Sym];
        }
        if !s.chars().any(char::is_alphanumeric) {
            // emoticons carry letters only rarely (":D"); bare symbols are punctuation
            return if s.chars().count() > 1 && !s.chars().all(|c| c == '.') {
                vec![PennTag::Sym]
            } else if matches!(first, '$' | '%' | '&' | '+' | '=' | '<' | '>' | '*' | '^' | '~' | '|') {
                vec![PennTag::Sym]
            } else {
                vec![PennTag::Punct]
            };
        }
        if is_url(s) || s.contains('@') && !s.starts_with('@') {
            return vec![PennTag::Other];
        }
        if s.starts_with('@') {
            return vec![PennTag::Nnp];
        }
        if s.starts_with('#') {
            return vec![PennTag::Other];
        }
        if first.is_ascii_digit()
            && s
                .chars()
                .all(|c| c.is_ascii_digit() || matches!(c, ',' | '.' | ':' | '/' | '-' | '%'))
        {
            return vec![PennTag::Cd];
        }
        if let Some(tags) = self.lexicon.get(&tok.lower) {
            let proper = first.is_uppercase()
                && !sentence_initial(tokens, i)
                && tok.lower != "i"
                && tags.iter().all(|t| t.is_common_noun() || t.is_adjective());
            if proper {
                // "Bill", "Reading" mid-sentence
                return vec![PennTag::Nnp];
            }
            return tags.to_vec();
        }
        guess(tok, sentence_initial(tokens, i))
    }

    /// Index of the nearest preceding token that is not an adverb, looking
    /// back over at most two adverbs.
    fn head_before(tokens: &[Token], i: usize) -> Option<usize> {
        let mut j = i;
        for _ in 0..3 {
            if j == 0 {
                return None;
            }
            j -= 1;
            if !tokens[j].pos.is_adverb() {
                return Some(j);
            }
        }
        None
    }

    fn choose(&self, tokens: &[Token], cands: &[Vec<PennTag>], i: usize) -> PennTag {
        let c = &cands[i];
        let has = |t: PennTag| c.contains(&t);
        let w = tokens[i].lower.as_str();
        let prev = if i > 0 { Some(&tokens[i - 1]) } else { None };
        let next_c = cands.get(i + 1).map(|v| v[0]);
        let next_w = tokens.get(i + 1).map(|t| t.lower.as_str());
        let next_is = |f: fn(PennTag) -> bool| next_c.is_some_and(f);
        let clause_start =
            prev.is_none_or(|p| p.pos.is_punct() && (is_clause_break(&p.surface) || p.surface == ","));

        match w {
            "that" => {
                let p = prev.map(|p| p.pos);
                return if next_c.is_none() || next_is(|t| t == PennTag::Punct) {
                    PennTag::Dt
                } else if p.is_some_and(is_noun_tag) {
                    PennTag::Wdt
                } else if p.is_some_and(|t| t.is_verb() || t.is_adjective()) {
                    PennTag::In
                } else if next_is(|t| t.is_common_noun() || t.is_adjective())
                    || next_is(|t| t.is_verb() || t == PennTag::Md)
                {
                    PennTag::Dt
                } else {
                    PennTag::In
                };
            }
            "her" => {
                return if next_is(|t| t.is_noun() || t.is_adjective() || t == PennTag::Cd) {
                    PennTag::PrpS
                } else {
                    PennTag::Prp
                };
            }
            "'s" => {
                let p = prev.map(|p| p.lower.as_str()).unwrap_or("");
                return if p == "let" {
                    PennTag::Prp
                } else if matches!(
                    p,
                    "it" | "he" | "she" | "that" | "this" | "what" | "there" | "here" | "who"
                        | "where" | "how" | "everything" | "nothing" | "something"
                ) || next_is(|t| {
                    matches!(
                        t,
                        PennTag::Vbg | PennTag::Vbn | PennTag::Rb | PennTag::Dt | PennTag::In
                    )
                }) {
                    PennTag::Vbz
                } else {
                    PennTag::Pos
                };
            }
            "'d" => {
                return if next_is(|t| t == PennTag::Vbn || t == PennTag::Vbd) {
                    PennTag::Vbd
                } else {
                    PennTag::Md
                };
            }
            "there" => {
                return if next_w.is_some_and(|n| {
                    is_be(n) || n == "'s" || matches!(n, "seems" | "seem" | "appears" | "appear")
                }) || next_is(|t| t == PennTag::Md)
                {
                    PennTag::Ex
                } else {
                    PennTag::Rb
                };
            }
            "so" => {
                return if next_w == Some("that") {
                    PennTag::In
                } else {
                    PennTag::Rb
                };
            }
            "well" => {
                return if clause_start && next_is(|t| t == PennTag::Punct) {
                    PennTag::Uh
                } else {
                    PennTag::Rb
                };
            }
            "no" => {
                return if next_c.is_none() || next_is(|t| t == PennTag::Punct) {
                    PennTag::Uh
                } else {
                    PennTag::Dt
                };
            }
            _ => {}
        }

        // particles and preposition/adverb pairs
        if has(PennTag::In) && (has(PennTag::Rb) || has(PennTag::Rp)) {
            let np_follows = next_is(|t| {
                matches!(
                    t,
                    PennTag::Dt | PennTag::PrpS | PennTag::Cd | PennTag::Nnp | PennTag::Nn
                        | PennTag::Nns | PennTag::Jj | PennTag::Prp | PennTag::Pdt
                )
            });
            if np_follows {
                return PennTag::In;
            }
            return c.iter().copied().find(|t| *t != PennTag::In).unwrap();
        }

        let head = Self::head_before(tokens, i);
        let head_w = head.map(|h| tokens[h].lower.as_str()).unwrap_or("");
        let head_t = head.map(|h| tokens[h].pos);

        // auxiliary contexts
        let aux_head = matches!(head_t, Some(PennTag::To | PennTag::Md))
            || (is_do(head_w) && head_t.is_some_and(PennTag::is_verb));
        if aux_head && has(PennTag::Vb) {
            return PennTag::Vb;
        }
        // inverted questions: MD/DO + pronoun + VB
        if has(PennTag::Vb) && i >= 2 {
            let pp = &tokens[i - 2];
            if prev.is_some_and(|p| p.pos == PennTag::Prp)
                && (pp.pos == PennTag::Md || is_do(&pp.lower))
            {
                return PennTag::Vb;
            }
        }
        if is_have(head_w) && has(PennTag::Vbn) {
            return PennTag::Vbn;
        }
        if (is_be(head_w) || is_get(head_w)) && head_t.is_some_and(PennTag::is_verb) {
            if has(PennTag::Vbn) {
                return PennTag::Vbn;
            }
            if has(PennTag::Vbg) {
                return PennTag::Vbg;
            }
        }

        let p = prev.map(|p| p.pos);
        let nominal_slot = p.is_some_and(|t| {
            matches!(
                t,
                PennTag::Dt | PennTag::Pdt | PennTag::PrpS | PennTag::Pos | PennTag::Cd
                    | PennTag::WpS | PennTag::In
            ) || t.is_adjective()
        });
        if nominal_slot {
            if let Some(n) = first_noun(c) {
                return n;
            }
            if has(PennTag::Jj) {
                return PennTag::Jj;
            }
            if has(PennTag::Vbn) && next_is(PennTag::is_noun) {
                return PennTag::Vbn;
            }
        }

        if clause_start {
            if has(PennTag::Vb)
                && next_is(|t| {
                    matches!(
                        t,
                        PennTag::Dt | PennTag::Prp | PennTag::PrpS | PennTag::In | PennTag::Rp
                            | PennTag::To | PennTag::Cd | PennTag::Nnp | PennTag::Rb
                    )
                })
            {
                return PennTag::Vb;
            }
            if has(PennTag::Vbn) && next_is(|t| t == PennTag::In) {
                return PennTag::Vbn;
            }
        }

        // subject-verb agreement with the nearest non-adverb to the left
        let plural_subject = matches!(head_w, "i" | "you" | "we" | "they")
            || head_t.is_some_and(|t| matches!(t, PennTag::Nns | PennTag::Nnps));
        let singular_subject = matches!(
            head_w,
            "he" | "she" | "it" | "this" | "that" | "what" | "who" | "which" | "there"
        ) || head_t.is_some_and(|t| matches!(t, PennTag::Nn | PennTag::Nnp));
        let relative = head_t.is_some_and(|t| matches!(t, PennTag::Wdt | PennTag::Wp));
        if has(PennTag::Vbn) && has(PennTag::Vbd) && next_w == Some("by") {
            return PennTag::Vbn;
        }
        if plural_subject || relative {
            for t in [PennTag::Vbp, PennTag::Vbd] {
                if has(t) {
                    return t;
                }
            }
        }
        if singular_subject || relative {
            for t in [PennTag::Vbz, PennTag::Vbd] {
                if has(t) {
                    return t;
                }
            }
        }

        let first = c[0];
        if first == PennTag::Vb && has(PennTag::Vbp) && !clause_start {
            return PennTag::Vbp;
        }
        if first == PennTag::Vbg && has(PennTag::Nn) && nominal_slot {
            return PennTag::Nn;
        }
        first
    }
}

fn sentence_initial(tokens: &[Token], i: usize) -> bool {
    if i == 0 {
        return true;
    }
    let p = &tokens[i - 1];
    p.surface.chars().all(|c| !c.is_alphanumeric()) && is_clause_break(&p.surface)
}

const NOUN_SUFFIXES: [&str; 16] = [
    "tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship", "hood", "ist", "er",
    "or", "ure", "age", "dom",
];
const ADJ_SUFFIXES: [&str; 14] = [
    "ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ish", "ary", "ical", "ian", "ant",
    "ent",
];

fn guess(tok: &Token, initial: bool) -> Vec<PennTag> {
    let s = tok.surface.as_str();
    let w = tok.lower.as_str();
    let n = w.chars().count();
    let capital = s.chars().next().is_some_and(char::is_uppercase);
    if capital && !initial {
        return vec![if w.ends_with('s') && s.chars().all(|c| c.is_uppercase() || c == 's') && n > 2 {
            PennTag::Nnps
        } else {
            PennTag::Nnp
        }];
    }
    if n > 1 && s.chars().all(|c| c.is_uppercase() || c.is_ascii_digit()) {
        return vec![PennTag::Nnp];
    }
    if n > 4 && w.ends_with("ly") {
        return vec![PennTag::Rb];
    }
    if n > 4 && w.ends_with("ing") {
        return vec![PennTag::Vbg, PennTag::Nn];
    }
    if n > 4 && w.ends_with("ed") {
        return vec![PennTag::Vbd, PennTag::Vbn, PennTag::Jj];
    }
    for suf in NOUN_SUFFIXES {
        if n >= suf.len() + 2 {
            if w.ends_with(suf) {
                return vec![PennTag::Nn];
            }
            if w.strip_suffix('s').is_some_and(|stem| stem.ends_with(suf))
                || w.strip_suffix("es").is_some_and(|stem| stem.ends_with(suf))
                || (suf == "ity" && w.ends_with("ities"))
            {
                return vec![PennTag::Nns];
            }
        }
    }
    if n > 5 && w.ends_with("est") {
        return vec![PennTag::Jjs];
    }
    for suf in ADJ_SUFFIXES {
        if n >= suf.len() + 2 && w.ends_with(suf) {
            return vec![PennTag::Jj];
        }
    }
    for suf in ["ize", "ise", "ify", "ate"] {
        if n >= suf.len() + 2 && w.ends_with(suf) {
            return vec![PennTag::Vb, PennTag::Vbp];
        }
    }
    if n > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is") {
        return vec![PennTag::Nns, PennTag::Vbz];
    }
    if !w.chars().any(char::is_alphabetic) {
        return vec![PennTag::Cd];
    }
    if !w.is_ascii() && !w.chars().any(|c| c.is_alphabetic() && c.is_lowercase()) {
        return vec![PennTag::Other];
    }
    if capital {
        return vec![PennTag::Nnp];
    }
    vec![PennTag::Nn]
}
