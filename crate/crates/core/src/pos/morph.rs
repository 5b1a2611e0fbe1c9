//! Small English inflection helper used to expand lemma lists.

use std::collections::HashMap;
use std::sync::OnceLock;

const IRREGULAR_VERBS: &str = include_str!("../../data/irregular_verbs.tsv");

/// Surface forms of one verb lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbForms {
    pub base: String,
    pub third_singular: String,
    pub present_participle: String,
    pub past: Vec<String>,
    pub past_participle: Vec<String>,
}

impl VerbForms {
    /// Every distinct form, base first.
    pub fn all(&self) -> Vec<String> {
        let mut out = vec![
            self.base.clone(),
            self.third_singular.clone(),
            self.present_participle.clone(),
        ];
        out.extend(self.past.iter().cloned());
        out.extend(self.past_participle.iter().cloned());
        let mut seen = std::collections::HashSet::new();
        out.retain(|f| seen.insert(f.clone()));
        out
    }
}

type Irregulars = HashMap<String, (Vec<String>, Vec<String>)>;

fn irregulars() -> &'static Irregulars {
    static TABLE: OnceLock<Irregulars> = OnceLock::new();
    TABLE.get_or_init(|| {
        IRREGULAR_VERBS
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .filter_map(|l| {
                let mut cols = l.split_whitespace();
                let lemma = cols.next()?;
                let split = |s: &str| s.split('/').map(str::to_string).collect::<Vec<_>>();
                let past = split(cols.next()?);
                let pp = split(cols.next()?);
                Some((lemma.to_string(), (past, pp)))
            })
            .collect()
    })
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

// Two-syllable verbs with final stress double their consonant.
const DOUBLING: &[&str] = &[
    "admit", "commit", "omit", "permit", "submit", "transmit", "regret", "refer", "prefer",
    "occur", "recur", "transfer", "confer", "infer", "deter", "compel", "propel", "control",
    "patrol", "forbid", "begin", "forget", "upset", "equip",
];

fn doubles_final_consonant(word: &str) -> bool {
    if DOUBLING.contains(&word) {
        return true;
    }
    let b = word.as_bytes();
    let n = b.len();
    if !(3..=4).contains(&n) {
        return false;
    }
    let (c1, v, c2) = (b[n - 3], b[n - 2], b[n - 1]);
    if is_vowel(c1) || !is_vowel(v) || is_vowel(c2) || matches!(c2, b'w' | b'x' | b'y') {
        return false;
    }
    // single-syllable CVC or CCVC ("stop", "chat"); "open", "edit" stay undoubled
    n == 3 || !is_vowel(b[0])
}

fn ends_consonant_y(word: &str) -> bool {
    let b = word.as_bytes();
    b.len() >= 2 && b[b.len() - 1] == b'y' && !is_vowel(b[b.len() - 2])
}

/// Third person singular present / regular noun plural.
pub fn add_s(word: &str) -> String {
    if ends_consonant_y(word) {
        format!("{}ies", &word[..word.len() - 1])
    } else if ["s", "sh", "ch", "x", "z", "o"]
        .iter()
        .any(|suf| word.ends_with(suf))
        && !word.ends_with("oo")
    {
        format!("{word}es")
    } else {
        format!("{word}s")
    }
}

fn add_ing(word: &str) -> String {
    if let Some(stem) = word.strip_suffix("ie") {
        format!("{stem}ying")
    } else if word.ends_with('e') && !word.ends_with("ee") && !word.ends_with("ye") && word.len() > 2
    {
        format!("{}ing", &word[..word.len() - 1])
    } else if doubles_final_consonant(word) {
        format!("{word}{}ing", &word[word.len() - 1..])
    } else {
        format!("{word}ing")
    }
}

fn add_ed(word: &str) -> String {
    if word.ends_with('e') {
        format!("{word}d")
    } else if ends_consonant_y(word) {
        format!("{}ied", &word[..word.len() - 1])
    } else if doubles_final_consonant(word) {
        format!("{word}{}ed", &word[word.len() - 1..])
    } else {
        format!("{word}ed")
    }
}

/// Inflect a verb lemma, consulting the irregular table.
pub fn verb_forms(lemma: &str) -> VerbForms {
    let lemma = lemma.trim().to_lowercase();
    let third = match lemma.as_str() {
        "be" => "is".to_string(),
        "have" => "has".to_string(),
        "do" => "does".to_string(),
        "go" => "goes".to_string(),
        _ => add_s(&lemma),
    };
    let ing = match lemma.as_str() {
        "be" => "being".to_string(),
        "see" => "seeing".to_string(),
        _ => add_ing(&lemma),
    };
    let (past, pp) = match irregulars().get(&lemma) {
        Some((p, pp)) => (p.clone(), pp.clone()),
        None => {
            let ed = add_ed(&lemma);
            (vec![ed.clone()], vec![ed])
        }
    };
    VerbForms {
        base: lemma,
        third_singular: third,
        present_participle: ing,
        past,
        past_participle: pp,
    }
}
