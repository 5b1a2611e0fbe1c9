use std::collections::HashSet;
use std::path::Path;

use thiserror::Error;

use crate::pos::morph::verb_forms;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordListError {
    #[error("word list `{list}` line {line}: {message}")]
    Invalid {
        list: String,
        line: usize,
        message: String,
    },
    #[error("word list `{list}`: {message}")]
    Io { list: String, message: String },
}

macro_rules! lists {
    ($($field:ident),* $(,)?) => {
        /// Names of every list file, in struct-field order.
        pub const LIST_NAMES: &[&str] = &[$(stringify!($field)),*];

        const BUILTIN: &[(&str, &str)] = &[
            $((stringify!($field), include_str!(concat!("../../data/wordlists/", stringify!($field), ".txt")))),*
        ];

        /// Raw list contents, one entry per element. Multi-word entries keep
        /// their single-space separators.
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct WordLists {
            $(pub $field: Vec<String>,)*
        }

        impl WordLists {
            fn from_sources(mut load: impl FnMut(&str) -> Result<Vec<String>, WordListError>) -> Result<WordLists, WordListError> {
                Ok(WordLists { $($field: load(stringify!($field))?,)* })
            }

            /// `(name, entries)` for every list.
            pub fn iter(&self) -> impl Iterator<Item = (&'static str, &[String])> {
                [$((stringify!($field), self.$field.as_slice())),*].into_iter()
            }
        }
    };
}

lists!(
    place_adverbials,
    time_adverbials,
    indefinite_pronouns,
    downtoners,
    amplifiers,
    hedges,
    emphatics,
    discourse_particles,
    public_verbs,
    private_verbs,
    suasive_verbs,
    seem_appear,
    conjuncts,
    other_subordinators,
    quantifiers,
    quantifier_pronouns,
    laughter_acronyms,
    emoticons,
    wh_words,
    necessity_modals,
    possibility_modals,
    predictive_modals,
    prepositions,
    subordinators,
);

/// Parse one list file: `#` comments, blank lines ignored, entries must be
/// lowercase and unique.
pub fn parse_list(name: &str, text: &str) -> Result<Vec<String>, WordListError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| WordListError::Invalid {
            list: name.to_string(),
            line: n + 1,
            message: message.to_string(),
        };
        if line != line.to_lowercase() {
            return Err(err(&format!("entry `{line}` is not lowercase")));
        }
        let entry = line.split_whitespace().collect::<Vec<_>>().join(" ");
        if !seen.insert(entry.clone()) {
            return Err(err(&format!("duplicate entry `{entry}`")));
        }
        out.push(entry);
    }
    Ok(out)
}

impl Default for WordLists {
    fn default() -> Self {
        WordLists::builtin()
    }
}

impl WordLists {
    pub fn builtin() -> WordLists {
        WordLists::from_sources(|name| {
            let text = BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).unwrap();
            parse_list(name, text)
        })
        .expect("builtin word lists are valid")
    }

    /// Load `<name>.txt` files from `dir`; lists missing from the directory
    /// fall back to the builtin copy.
    pub fn from_dir(dir: &Path) -> Result<WordLists, WordListError> {
        if !dir.is_dir() {
            return Err(WordListError::Io {
                list: dir.display().to_string(),
                message: "not a directory".into(),
            });
        }
        WordLists::from_sources(|name| {
            let path = dir.join(format!("{name}.txt"));
            if path.is_file() {
                let text = std::fs::read_to_string(&path).map_err(|e| WordListError::Io {
                    list: name.to_string(),
                    message: e.to_string(),
                })?;
                parse_list(name, &text)
            } else {
                log::info!("word list {name}: {} not found, using builtin", path.display());
                let text = BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).unwrap();
                parse_list(name, text)
            }
        })
    }

    /// All inflected forms of the lemmas in a verb list.
    pub fn verb_forms_of(lemmas: &[String]) -> HashSet<String> {
        lemmas
            .iter()
            .flat_map(|l| {
                // multi-word verbs are not used; the head word is inflected
                let head = l.split(' ').next().unwrap_or(l);
                verb_forms(head).all()
            })
            .collect()
    }
}
