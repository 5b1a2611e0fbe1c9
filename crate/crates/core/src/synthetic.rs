//! Seeded generators for two contrasting text styles: "involved"
//! (pronouns, contractions, private verbs, discourse particles) and
//! "informational" (nouns, prepositional phrases, attributive adjectives).
//! Used to exercise PCA, verification and throughput end to end.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pos::tokenize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    Involved,
    Informational,
}

impl Style {
    pub fn label(self) -> &'static str {
        match self {
            Style::Involved => "involved",
            Style::Informational => "informational",
        }
    }
}

const INVOLVED: &[&str] = &[
    "I think {it} 's {adj} , you know .",
    "I don't know what you mean lol .",
    "Well , we can't really say that I 'm {sure} .",
    "You 're so {adj} and I love it !",
    "I guess it 's just me but I feel like it doesn't matter .",
    "Do you think we should go ?",
    "I 'm not {sure} what I 'd do .",
    "Oh I can't believe you said that !",
    "We 've got to see it , I mean it 's {adj} .",
    "Honestly I didn't think you 'd like it .",
    "Why don't you tell me what you want ?",
    "It 's like I said , we 'll see .",
    "I just feel you 're right about that .",
    "Yeah , I know , it 's {adj} haha .",
    "Maybe I 'm wrong but I don't think so .",
];

const INFORMATIONAL: &[&str] = &[
    "The {n} of the {n} in the {n} indicates an increase in the {n} of {n} .",
    "Members of the {n} on {adj2} {n} reviewed the {n} of the {n} .",
    "The {adj2} {n} of {n} is a {n} of the {n} in the {n} .",
    "Analysis of the {n} from the {n} shows a {adj2} {n} in {n} .",
    "The {n} for the {n} of {n} depends on the {n} of the {n} .",
    "A {adj2} {n} of {n} with {n} in the {n} was observed .",
    "The {n} in {n} and the {n} of {n} affect the {n} of the {n} .",
    "Data on the {n} of {adj2} {n} in the {n} are available .",
    "The {n} of {n} at the {n} level remains a {adj2} {n} .",
    "Changes in the {n} of the {n} reflect {adj2} {n} in the {n} .",
];

const NOUNS: &[&str] = &[
    "analysis", "data", "report", "committee", "policy", "region", "rate", "growth", "market",
    "government", "evidence", "system", "study", "population", "structure", "pattern", "factor",
    "value", "effect", "sector", "budget", "income", "price", "supply", "capacity", "framework",
    "distribution", "frequency", "variation", "institution", "industry", "energy", "climate",
    "agency", "department", "network", "process", "method", "sample", "model", "outcome",
];

const ADJ_INVOLVED: &[&str] = &["awesome", "crazy", "funny", "weird", "cool", "amazing", "silly", "nice"];
const ADJ_INFO: &[&str] = &[
    "economic", "political", "national", "regional", "significant", "substantial", "considerable",
    "statistical", "empirical", "structural", "industrial", "agricultural", "environmental",
];
const SURE: &[&str] = &["sure", "certain"];
const IT: &[&str] = &["it", "that", "this"];

/// Per-author habits: how often the author slips into the other style and
/// which slice of each vocabulary they favour.
#[derive(Debug, Clone, PartialEq)]
pub struct Author {
    pub id: usize,
    pub style: Style,
    /// Probability of drawing a sentence from the other style.
    pub leak: f64,
    templates: Vec<usize>,
    nouns: Vec<usize>,
}

impl Author {
    pub fn new(id: usize, style: Style, rng: &mut impl Rng) -> Author {
        let pool = match style {
            Style::Involved => INVOLVED.len(),
            Style::Informational => INFORMATIONAL.len(),
        };
        let templates = rand::seq::index::sample(rng, pool, pool.min(6)).into_vec();
        let nouns = rand::seq::index::sample(rng, NOUNS.len(), 12).into_vec();
        Author { id, style, leak: rng.random_range(0.0..0.15), templates, nouns }
    }

    fn sentence(&self, rng: &mut impl Rng) -> String {
        let own = !rng.random_bool(self.leak);
        let style = if own { self.style } else { other(self.style) };
        let template = match (style, own) {
            (Style::Involved, true) => INVOLVED[*self.templates.choose(rng).unwrap()],
            (Style::Informational, true) => INFORMATIONAL[*self.templates.choose(rng).unwrap()],
            (Style::Involved, false) => INVOLVED.choose(rng).unwrap(),
            (Style::Informational, false) => INFORMATIONAL.choose(rng).unwrap(),
        };
        fill(template, &self.nouns, rng)
    }

    /// A document of roughly `tokens` tokens (never fewer).
    pub fn document(&self, tokens: usize, rng: &mut impl Rng) -> String {
        let mut out = String::new();
        let mut n = 0;
        while n < tokens {
            let s = self.sentence(rng);
            n += tokenize(&s).len();
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&s);
        }
        out
    }
}

fn other(s: Style) -> Style {
    match s {
        Style::Involved => Style::Informational,
        Style::Informational => Style::Involved,
    }
}

fn fill(template: &str, nouns: &[usize], rng: &mut impl Rng) -> String {
    let mut out = Vec::new();
    for w in template.split(' ') {
        let word = match w {
            "{n}" => NOUNS[*nouns.choose(rng).unwrap()],
            "{adj}" => ADJ_INVOLVED.choose(rng).unwrap(),
            "{adj2}" => ADJ_INFO.choose(rng).unwrap(),
            "{sure}" => SURE.choose(rng).unwrap(),
            "{it}" => IT.choose(rng).unwrap(),
            other => other,
        };
        out.push(word);
    }
    // re-attach clitics and punctuation the way people type them
    let mut text = out.join(" ");
    for (from, to) in [(" 's", "'s"), (" 're", "'re"), (" 'm", "'m"), (" 'd", "'d"), (" 've", "'ve"), (" 'll", "'ll"), (" .", "."), (" ,", ","), (" !", "!"), (" ?", "?")] {
        text = text.replace(from, to);
    }
    text
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDoc {
    pub id: String,
    pub label: String,
    pub author: usize,
    pub text: String,
}

/// `n_authors` authors alternating between the two styles.
pub fn authors(n_authors: usize, rng: &mut impl Rng) -> Vec<Author> {
    (0..n_authors)
        .map(|i| Author::new(i, if i % 2 == 0 { Style::Involved } else { Style::Informational }, rng))
        .collect()
}

/// Documents alternating between the styles, each from a fresh author.
pub fn corpus(n_docs: usize, tokens_per_doc: usize, seed: u64) -> Vec<SyntheticDoc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_docs)
        .map(|i| {
            let style = if i % 2 == 0 { Style::Involved } else { Style::Informational };
            let a = Author::new(i, style, &mut rng);
            SyntheticDoc {
                id: format!("doc{i:05}"),
                label: style.label().to_string(),
                author: i,
                text: a.document(tokens_per_doc, &mut rng),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticPair {
    pub id: String,
    pub texts: [String; 2],
    pub same: bool,
}

/// Balanced verification pairs. Same-author pairs are two documents by one
/// author; different-author pairs take one author from each style.
pub fn pairs(n_pairs: usize, tokens_per_doc: usize, seed: u64) -> Vec<SyntheticPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = authors(40, &mut rng);
    let (inv, info): (Vec<&Author>, Vec<&Author>) = pool.iter().partition(|a| a.style == Style::Involved);
    (0..n_pairs)
        .map(|i| {
            let same = i % 2 == 0;
            let (a, b) = if same {
                let a = *pool.iter().collect::<Vec<_>>().choose(&mut rng).unwrap();
                (a, a)
            } else {
                let x = *inv.choose(&mut rng).unwrap();
                let y = *info.choose(&mut rng).unwrap();
                if rng.random_bool(0.5) { (x, y) } else { (y, x) }
            };
            SyntheticPair {
                id: format!("pair{i:05}"),
                texts: [a.document(tokens_per_doc, &mut rng), b.document(tokens_per_doc, &mut rng)],
                same,
            }
        })
        .collect()
}
