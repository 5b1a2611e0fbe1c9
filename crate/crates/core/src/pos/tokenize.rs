//! Whitespace- and punctuation-aware tokenizer.
//!
//! Conventions:
//! - punctuation marks are standalone tokens, one per character, except that
//!   runs of `.` form a single ellipsis token;
//! - URLs, `@mentions`, `#hashtags`, emoticons and emoji clusters are single
//!   tokens;
//! - contractions split Penn-style: `doesn't` → `does` `n't`, `can't` →
//!   `ca` `n't`, `I'm` → `I` `'m`, `John's` → `John` `'s`; `cannot` →
//!   `can` `not`;
//! - word-internal hyphens, apostrophes, slashes, ampersands and dots stay
//!   inside the word (`well-known`, `o'clock`, `3.14`, `e.g.`).

#![allow(clippy::if_same_then_else)]

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::types::{PennTag, Token};

const DEFAULT_EMOTICONS: &str = include_str!("../../data/wordlists/emoticons.txt");

fn emoticons() -> &'static HashSet<String> {
    static SET: OnceLock<HashSet<String>> = OnceLock::new();
    SET.get_or_init(|| {
        DEFAULT_EMOTICONS
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect()
    })
}

/// Whether `c` starts or continues an emoji cluster.
pub fn is_emoji(c: char) -> bool {
    matches!(c as u32,
        0x1F000..=0x1FAFF
        | 0x2600..=0x27BF
        | 0x2B00..=0x2BFF
        | 0x2300..=0x23FF)
}

fn is_emoji_modifier(c: char) -> bool {
    matches!(c as u32, 0xFE0E | 0xFE0F | 0x200D | 0x20E3 | 0x1F3FB..=0x1F3FF | 0xE0020..=0xE007F)
}

/// Characters allowed inside a word when followed by an alphanumeric.
fn is_connector(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-' | '.' | '/' | '&' | '_')
}

const CLITICS: [&str; 6] = ["'s", "'re", "'ve", "'ll", "'d", "'m"];
const ABBREVIATIONS: [&str; 12] = [
    "mr", "mrs", "ms", "dr", "prof", "st", "vs", "etc", "jr", "sr", "inc", "ltd",
];

pub fn is_url(s: &str) -> bool {
    let l = s.to_ascii_lowercase();
    (l.starts_with("http://") || l.starts_with("https://") || l.starts_with("www."))
        && l.len() > 7
}

fn is_trailing_punct(c: char) -> bool {
    matches!(
        c,
        '.' | ',' | '!' | '?' | ';' | ':' | ')' | ']' | '}' | '"' | '\'' | '\u{201D}' | '\u{2019}'
    )
}

/// Split raw text into tokens. Tags are left as `OTHER`.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out: Vec<String> = Vec::new();
    for chunk in text.split_whitespace() {
        split_chunk(chunk, &mut out);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, s)| Token::new(s, PennTag::Other, i))
        .collect()
}

fn split_chunk(chunk: &str, out: &mut Vec<String>) {
    if emoticons().contains(&chunk.to_lowercase()) {
        out.push(chunk.to_string());
        return;
    }
    let chars: Vec<char> = chunk.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        // a URL runs to the end of the chunk, minus trailing punctuation
        if matches!(c, 'h' | 'H' | 'w' | 'W')
            && (i == 0 || !chars[i - 1].is_alphanumeric())
            && is_url(&chars[i..].iter().collect::<String>())
        {
            let mut end = chars.len();
            while end > i + 1 && is_trailing_punct(chars[end - 1]) {
                end -= 1;
            }
            out.push(chars[i..end].iter().collect());
            for c in &chars[end..] {
                out.push(c.to_string());
            }
            return;
        }
        // trailing emoticon glued to a word, e.g. "great:)"
        if i > 0 && !c.is_alphanumeric() && chars.len() - i >= 2 {
            let rest: String = chars[i..].iter().collect();
            if emoticons().contains(&rest.to_lowercase()) {
                out.push(rest);
                return;
            }
        }
        if is_emoji(c) {
            let start = i;
            i += 1;
            while i < chars.len() {
                if is_emoji_modifier(chars[i]) {
                    i += 1;
                } else if chars[i - 1] == '\u{200D}' && is_emoji(chars[i]) {
                    i += 1;
                } else if (0x1F1E6..=0x1F1FF).contains(&(chars[i] as u32))
                    && i - start == 1
                    && (0x1F1E6..=0x1F1FF).contains(&(chars[start] as u32))
                {
                    // regional indicator pair (flag)
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(chars[start..i].iter().collect());
            continue;
        }
        if c.is_alphanumeric()
            || ((c == '@' || c == '#') && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric()))
        {
            let start = i;
            i += 1;
            while i < chars.len() {
                let d = chars[i];
                if d.is_alphanumeric() {
                    i += 1;
                } else if is_connector(d) && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric()) {
                    i += 1;
                } else if d == ','
                    && chars[i - 1].is_ascii_digit()
                    && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit())
                {
                    i += 1;
                } else {
                    break;
                }
            }
            let mut word: String = chars[start..i].iter().collect();
            // abbreviation keeps its final period: "e.g.", "U.S.", "Mr."
            if chars.get(i) == Some(&'.') && chars.get(i + 1) != Some(&'.') && is_abbreviation(&word) {
                word.push('.');
                i += 1;
            }
            push_word(word, out);
            continue;
        }
        if c == '.' {
            let start = i;
            while i < chars.len() && chars[i] == '.' {
                i += 1;
            }
            out.push(chars[start..i].iter().collect());
            continue;
        }
        // leading clitic as its own chunk, e.g. "John 's"
        if c == '\'' || c == '\u{2019}' {
            let word_end = chars[i + 1..]
                .iter()
                .position(|ch| !ch.is_alphabetic())
                .map_or(chars.len(), |p| i + 1 + p);
            let cand: String = chars[i..word_end].iter().collect();
            if word_end > i + 1 && CLITICS.contains(&crate::types::fold_lower(&cand).as_str()) && i == 0
            {
                out.push(cand);
                i = word_end;
                continue;
            }
        }
        out.push(c.to_string());
        i += 1;
    }
}

fn is_abbreviation(word: &str) -> bool {
    let lower = word.to_lowercase();
    if ABBREVIATIONS.contains(&lower.as_str()) {
        return true;
    }
    // dotted initials: "U.S", "e.g", "i.e"
    let parts: Vec<&str> = lower.split('.').collect();
    parts.len() >= 2 && parts.iter().all(|p| p.chars().count() == 1 && p.chars().all(char::is_alphabetic))
}

fn push_word(word: String, out: &mut Vec<String>) {
    let lower = crate::types::fold_lower(&word);
    if lower == "cannot" {
        out.push(word[..3].to_string());
        out.push(word[3..].to_string());
        return;
    }
    if lower.len() > 3 && lower.ends_with("n't") {
        // byte offset of the "n" in the original surface
        let n_pos = word
            .char_indices()
            .rev()
            .nth(2)
            .map(|(p, _)| p)
            .unwrap_or(0);
        if n_pos > 0 {
            out.push(word[..n_pos].to_string());
            out.push(word[n_pos..].to_string());
            return;
        }
    }
    for clitic in CLITICS {
        if lower.ends_with(clitic) && lower.len() > clitic.len() {
            let clitic_chars = clitic.chars().count();
            let split = word
                .char_indices()
                .rev()
                .nth(clitic_chars - 1)
                .map(|(p, _)| p)
                .unwrap_or(0);
            if split > 0 {
                out.push(word[..split].to_string());
                out.push(word[split..].to_string());
                return;
            }
        }
    }
    out.push(word);
}
