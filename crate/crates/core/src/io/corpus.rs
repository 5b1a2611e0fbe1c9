use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Lines};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use super::IoError;
use crate::pos::GoldRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// One JSON object per line: `id`, then `text` (raw) or `tokens`
    /// (`[[surface, tag], ...]`), optional `label`.
    Jsonl,
    /// One `surface<TAB>tag` per line, blank line between documents,
    /// optional `# id = ...` / `# label = ...` header lines per document.
    Conll,
    /// A directory of UTF-8 text files, one document each. Files inside a
    /// subdirectory take its name as their label.
    PlainDir,
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::Jsonl => "jsonl",
            CorpusFormat::Conll => "conll",
            CorpusFormat::PlainDir => "plain-dir",
        })
    }
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "conll" | "conll-like" => Ok(CorpusFormat::Conll),
            "plain-dir" | "dir" => Ok(CorpusFormat::PlainDir),
            other => Err(format!("unknown corpus format `{other}`")),
        }
    }
}

/// What a reader does with a malformed record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OnError {
    /// Log it, remember it and continue.
    #[default]
    Skip,
    /// Yield the error and end the stream.
    Abort,
}

impl FromStr for OnError {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skip" => Ok(OnError::Skip),
            "abort" => Ok(OnError::Abort),
            other => Err(format!("unknown error policy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RecordText {
    Raw(String),
    Tagged(Vec<GoldRecord>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRecord {
    pub id: String,
    pub text: RecordText,
    pub label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRecord {
    id: String,
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    tokens: Option<Vec<Vec<String>>>,
    #[serde(default)]
    label: Option<String>,
}

enum Source {
    Jsonl(Lines<BufReader<File>>),
    Conll(Lines<BufReader<File>>),
    Dir(std::vec::IntoIter<(PathBuf, Option<String>)>),
}

/// Lazy record stream. In skip mode the errors it stepped over are kept in
/// [`CorpusReader::skipped`].
pub struct CorpusReader {
    path: PathBuf,
    source: Source,
    policy: OnError,
    line: usize,
    seen: HashSet<String>,
    skipped: Vec<IoError>,
    done: bool,
    doc_ordinal: usize,
}

pub fn read_corpus(path: &Path, format: CorpusFormat, policy: OnError) -> Result<CorpusReader, IoError> {
    let source = match format {
        CorpusFormat::Jsonl | CorpusFormat::Conll => {
            let f = File::open(path).map_err(|e| IoError::io(path, e))?;
            let lines = BufReader::new(f).lines();
            if format == CorpusFormat::Jsonl {
                Source::Jsonl(lines)
            } else {
                Source::Conll(lines)
            }
        }
        CorpusFormat::PlainDir => {
            if !path.is_dir() {
                return Err(IoError::FileNotFound(path.to_path_buf()));
            }
            let mut files = Vec::new();
            for entry in walkdir::WalkDir::new(path).min_depth(1).max_depth(2).sort_by_file_name() {
                let entry = entry.map_err(|e| IoError::format(path, e))?;
                if !entry.file_type().is_file() {
                    continue;
                }
                let label = (entry.depth() == 2)
                    .then(|| entry.path().parent().and_then(|p| p.file_name()))
                    .flatten()
                    .map(|s| s.to_string_lossy().into_owned());
                files.push((entry.into_path(), label));
            }
            Source::Dir(files.into_iter())
        }
    };
    Ok(CorpusReader {
        path: path.to_path_buf(),
        source,
        policy,
        line: 0,
        seen: HashSet::new(),
        skipped: Vec::new(),
        done: false,
        doc_ordinal: 0,
    })
}

impl CorpusReader {
    pub fn skipped(&self) -> &[IoError] {
        &self.skipped
    }

    fn next_line(&mut self) -> Option<Result<String, IoError>> {
        let lines = match &mut self.source {
            Source::Jsonl(l) | Source::Conll(l) => l,
            Source::Dir(_) => unreachable!(),
        };
        let next = lines.next()?;
        self.line += 1;
        Some(next.map_err(|e| IoError::io(&self.path, e)))
    }

    fn next_jsonl(&mut self) -> Option<Result<(usize, CorpusRecord), IoError>> {
        loop {
            let line = match self.next_line()? {
                Ok(l) => l,
                Err(e) => return Some(Err(e)),
            };
            if line.trim().is_empty() {
                continue;
            }
            let at = self.line;
            let parsed = serde_json::from_str::<JsonRecord>(&line)
                .map_err(|e| IoError::malformed(&self.path, at, e.to_string()))
                .and_then(|r| {
                    let text = match (r.text, r.tokens) {
                        (Some(t), None) => RecordText::Raw(t),
                        (None, Some(toks)) => RecordText::Tagged(
                            toks.into_iter()
                                .map(|pair| match pair.as_slice() {
                                    [s, t] => Ok(GoldRecord { surface: s.clone(), tag: Some(t.clone()), line: at }),
                                    [s] => Ok(GoldRecord { surface: s.clone(), tag: None, line: at }),
                                    _ => Err(IoError::malformed(&self.path, at, "token must be [surface, tag]")),
                                })
                                .collect::<Result<_, _>>()?,
                        ),
                        _ => return Err(IoError::malformed(&self.path, at, "exactly one of `text` or `tokens` required")),
                    };
                    Ok(CorpusRecord { id: r.id, text, label: r.label })
                });
            return Some(parsed.map(|r| (at, r)));
        }
    }

    fn next_conll(&mut self) -> Option<Result<(usize, CorpusRecord), IoError>> {
        let mut start = 0;
        let mut id = None;
        let mut label = None;
        let mut toks: Vec<GoldRecord> = Vec::new();
        let mut error = None;
        loop {
            let line = match self.next_line() {
                None => break,
                Some(Err(e)) => return Some(Err(e)),
                Some(Ok(l)) => l,
            };
            let at = self.line;
            if line.trim().is_empty() {
                if start == 0 {
                    continue;
                }
                break;
            }
            if start == 0 {
                start = at;
            }
            if !line.contains('\t') {
                if let Some((key, value)) = line.strip_prefix('#').and_then(|d| d.split_once('=')) {
                    match key.trim() {
                        "id" => id = Some(value.trim().to_string()),
                        "label" => label = Some(value.trim().to_string()),
                        other => {
                            error.get_or_insert_with(|| IoError::malformed(&self.path, at, format!("unknown directive `{other}`")));
                        }
                    }
                    continue;
                }
            }
            let cols: Vec<&str> = line.split('\t').collect();
            match cols.as_slice() {
                [s] if !s.is_empty() => toks.push(GoldRecord { surface: s.to_string(), tag: None, line: at }),
                [s, t] if !s.is_empty() => toks.push(GoldRecord {
                    surface: s.to_string(),
                    tag: (!t.trim().is_empty()).then(|| t.trim().to_string()),
                    line: at,
                }),
                _ => {
                    error.get_or_insert_with(|| IoError::malformed(&self.path, at, format!("expected `surface<TAB>tag`, got {} columns", cols.len())));
                }
            }
        }
        if start == 0 {
            return None;
        }
        self.doc_ordinal += 1;
        if let Some(e) = error {
            return Some(Err(e));
        }
        let id = id.unwrap_or_else(|| format!("doc{}", self.doc_ordinal));
        Some(Ok((start, CorpusRecord { id, text: RecordText::Tagged(toks), label })))
    }

    fn next_file(&mut self) -> Option<Result<(usize, CorpusRecord), IoError>> {
        let Source::Dir(files) = &mut self.source else { unreachable!() };
        let (file, label) = files.next()?;
        let rel = file.strip_prefix(&self.path).unwrap_or(&file).with_extension("");
        let id = rel.to_string_lossy().replace('\\', "/");
        Some(match std::fs::read(&file) {
            Err(e) => Err(IoError::io(&file, e)),
            Ok(bytes) => match String::from_utf8(bytes) {
                Ok(text) => Ok((0, CorpusRecord { id, text: RecordText::Raw(text), label })),
                Err(_) => Err(IoError::malformed(&file, 0, "not valid UTF-8")),
            },
        })
    }
}

impl Iterator for CorpusReader {
    type Item = Result<CorpusRecord, IoError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let item = match self.source {
                Source::Jsonl(_) => self.next_jsonl(),
                Source::Conll(_) => self.next_conll(),
                Source::Dir(_) => self.next_file(),
            };
            let e = match item {
                None => {
                    self.done = true;
                    return None;
                }
                Some(Ok((at, r))) => {
                    if self.seen.insert(r.id.clone()) {
                        return Some(Ok(r));
                    }
                    IoError::malformed(&self.path, at, format!("duplicate id `{}`", r.id))
                }
                Some(Err(e)) => e,
            };
            let fatal = matches!(e, IoError::Io { .. });
            if self.policy == OnError::Abort || fatal {
                self.done = true;
                return Some(Err(e));
            }
            log::warn!("skipping record: {e}");
            self.skipped.push(e);
        }
        None
    }
}
