//! Run configuration. Each key is resolved from, in order: command-line
//! flag, `BIBERKIT_*` environment variable, TOML config file, default.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use biberkit_core::io::{CorpusFormat, OnError, ProfileFormat};
use biberkit_core::pos::{BuiltinTagger, Lexicon, PosProvider};
use biberkit_core::profiler::{ChunkSpec, FinalChunk};
use biberkit_core::rules::{Engine, WordLists};
use biberkit_core::pipeline::Pipeline;
use biberkit_core::CountingMode;
use clap::parser::ValueSource;
use clap::{ArgMatches, Args};
use serde::Deserialize;

use crate::CliError;

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// TOML file with default values for any of the options below
    #[arg(long, env = "BIBERKIT_CONFIG", global = true)]
    pub config: Option<PathBuf>,
    /// Print the resolved configuration with the source of each value, then exit
    #[arg(long, global = true)]
    pub print_config: bool,
    /// Input corpus (or matrix for `pca`)
    #[arg(long, env = "BIBERKIT_INPUT", global = true)]
    pub input: Option<PathBuf>,
    /// Corpus format: jsonl, conll, plain-dir
    #[arg(long, env = "BIBERKIT_FORMAT", global = true)]
    pub format: Option<String>,
    /// Output path; standard output when absent
    #[arg(long, env = "BIBERKIT_OUTPUT", global = true)]
    pub output: Option<PathBuf>,
    /// Profile output format: csv, jsonl
    #[arg(long, env = "BIBERKIT_OUTPUT_FORMAT", global = true)]
    pub output_format: Option<String>,
    /// Counting mode: regular, binary
    #[arg(long, env = "BIBERKIT_MODE", global = true)]
    pub mode: Option<String>,
    /// Tokens per chunk (default 100 in binary mode, 1000 in regular mode)
    #[arg(long, env = "BIBERKIT_CHUNK_SIZE", global = true)]
    pub chunk_size: Option<usize>,
    /// Final partial chunk: keep, drop-below:F, merge-below:F
    #[arg(long, env = "BIBERKIT_FINAL_CHUNK", global = true)]
    pub final_chunk: Option<String>,
    /// Regular-mode frequencies are scaled to this many tokens
    #[arg(long, env = "BIBERKIT_NORMALIZE_PER", global = true)]
    pub normalize_per: Option<f64>,
    /// Part-of-speech source: builtin, gold
    #[arg(long, env = "BIBERKIT_POS", global = true)]
    pub pos: Option<String>,
    /// Directory of word-list overrides
    #[arg(long, env = "BIBERKIT_WORDLISTS_DIR", global = true)]
    pub wordlists_dir: Option<PathBuf>,
    /// Replacement lexicon for the builtin tagger
    #[arg(long, env = "BIBERKIT_LEXICON_PATH", global = true)]
    pub lexicon_path: Option<PathBuf>,
    /// Worker threads
    #[arg(long, env = "BIBERKIT_THREADS", global = true)]
    pub threads: Option<usize>,
    /// Seed for every random choice
    #[arg(long, env = "BIBERKIT_SEED", global = true)]
    pub seed: Option<u64>,
    /// Malformed input records: skip, abort
    #[arg(long, env = "BIBERKIT_ON_ERROR", global = true)]
    pub on_error: Option<String>,
    /// Number of principal components
    #[arg(long, env = "BIBERKIT_K", global = true)]
    pub k: Option<usize>,
    /// Components to plot, 1-based, e.g. `1,2`
    #[arg(long, env = "BIBERKIT_COMPONENTS", global = true)]
    pub components: Option<String>,
}

/// Values read from a config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileLayer {
    input: Option<PathBuf>,
    format: Option<String>,
    output: Option<PathBuf>,
    output_format: Option<String>,
    mode: Option<String>,
    chunk_size: Option<usize>,
    final_chunk: Option<String>,
    normalize_per: Option<f64>,
    pos: Option<String>,
    wordlists_dir: Option<PathBuf>,
    lexicon_path: Option<PathBuf>,
    threads: Option<usize>,
    seed: Option<u64>,
    on_error: Option<String>,
    k: Option<usize>,
    components: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Flag,
    Env,
    File,
    Default,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Flag => "flag",
            Source::Env => "env",
            Source::File => "file",
            Source::Default => "default",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosKind {
    Builtin,
    Gold,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub format: CorpusFormat,
    pub output: Option<PathBuf>,
    pub output_format: ProfileFormat,
    pub mode: CountingMode,
    pub chunk_size: usize,
    pub final_chunk: FinalChunk,
    pub normalize_per: f64,
    pub pos: PosKind,
    pub wordlists_dir: Option<PathBuf>,
    pub lexicon_path: Option<PathBuf>,
    pub threads: usize,
    pub seed: u64,
    pub on_error: OnError,
    pub k: usize,
    /// 0-based.
    pub components: (usize, usize),
    /// `(key, value, source)` for `--print-config`.
    pub provenance: Vec<(&'static str, String, Source)>,
}

fn parse_final_chunk(s: &str) -> Result<FinalChunk, String> {
    let frac = |v: &str| -> Result<f64, String> {
        let f: f64 = v.parse().map_err(|_| format!("bad fraction `{v}`"))?;
        if (0.0..=1.0).contains(&f) { Ok(f) } else { Err(format!("fraction {f} outside [0, 1]")) }
    };
    match s.split_once(':') {
        None if s == "keep" => Ok(FinalChunk::Keep),
        Some(("drop-below", v)) => Ok(FinalChunk::DropBelow(frac(v)?)),
        Some(("merge-below", v)) => Ok(FinalChunk::MergeBelow(frac(v)?)),
        _ => Err(format!("unknown final-chunk policy `{s}`")),
    }
}

fn fmt_final_chunk(f: FinalChunk) -> String {
    match f {
        FinalChunk::Keep => "keep".into(),
        FinalChunk::DropBelow(x) => format!("drop-below:{x}"),
        FinalChunk::MergeBelow(x) => format!("merge-below:{x}"),
    }
}

fn parse_components(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else { return Err(format!("components must be `a,b`, got `{s}`")) };
    let p = |v: &str| match v.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n - 1),
        _ => Err(format!("component `{v}` must be a positive integer")),
    };
    Ok((p(a)?, p(b)?))
}

fn infer_format(input: Option<&Path>) -> CorpusFormat {
    match input {
        Some(p) if p.is_dir() => CorpusFormat::PlainDir,
        Some(p) if matches!(p.extension().and_then(|e| e.to_str()), Some("conll" | "conllu" | "tsv")) => CorpusFormat::Conll,
        _ => CorpusFormat::Jsonl,
    }
}

struct Resolver<'a> {
    matches: Option<&'a ArgMatches>,
    provenance: Vec<(&'static str, String, Source)>,
}

impl Resolver<'_> {
    fn source_of(&self, id: &str) -> Source {
        match self.matches.and_then(|m| m.value_source(id)) {
            Some(ValueSource::EnvVariable) => Source::Env,
            _ => Source::Flag,
        }
    }

    /// Pick the first present layer and remember where it came from.
    fn pick<T: Clone>(&mut self, key: &'static str, flag: &Option<T>, file: &Option<T>) -> Option<(T, Source)> {
        if let Some(v) = flag {
            return Some((v.clone(), self.source_of(key)));
        }
        file.clone().map(|v| (v, Source::File))
    }

    fn record(&mut self, key: &'static str, value: impl fmt::Display, source: Source) {
        self.provenance.push((key, value.to_string(), source));
    }
}

fn ident<T: Clone>(v: &T) -> Result<T, String> {
    Ok(v.clone())
}

fn bad(key: &str, msg: impl fmt::Display) -> CliError {
    CliError::new("config", format!("{key}: {msg}"))
}

impl RunConfig {
    /// Resolve from parsed flags (with their clap matches, used to tell
    /// flags from environment values) and an optional config file.
    pub fn resolve(args: &GlobalArgs, matches: Option<&ArgMatches>) -> Result<RunConfig, CliError> {
        let file: FileLayer = match &args.config {
            None => FileLayer::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| bad("config", format!("{}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| bad("config", format!("{}: {}", p.display(), e.message())))?
            }
        };
        let mut r = Resolver { matches, provenance: Vec::new() };

        macro_rules! opt_path {
            ($key:ident) => {{
                match r.pick(stringify!($key), &args.$key, &file.$key) {
                    Some((v, s)) => {
                        r.record(stringify!($key), v.display(), s);
                        Some(v)
                    }
                    None => {
                        r.record(stringify!($key), "", Source::Default);
                        None
                    }
                }
            }};
        }
        macro_rules! parsed {
            ($key:ident, $default:expr, $parse:expr, $show:expr) => {{
                match r.pick(stringify!($key), &args.$key, &file.$key) {
                    Some((v, s)) => {
                        let parsed = $parse(&v).map_err(|e| bad(stringify!($key), e))?;
                        r.record(stringify!($key), $show(&parsed), s);
                        parsed
                    }
                    None => {
                        let d = $default;
                        r.record(stringify!($key), $show(&d), Source::Default);
                        d
                    }
                }
            }};
        }
        let input = opt_path!(input);
        let format: CorpusFormat = parsed!(format, infer_format(input.as_deref()), |v: &String| v.parse(), |v: &CorpusFormat| v.to_string());
        let output = opt_path!(output);
        let output_format: ProfileFormat = parsed!(output_format, ProfileFormat::Csv, |v: &String| v.parse(), |v: &ProfileFormat| v.to_string());
        let mode: CountingMode = parsed!(mode, CountingMode::Binary, |v: &String| v.parse(), |v: &CountingMode| v.to_string());
        let chunk_size: usize = parsed!(chunk_size, ChunkSpec::for_mode(mode).size(), ident, |v: &usize| v.to_string());
        if chunk_size < 1 {
            return Err(bad("chunk_size", "must be at least 1"));
        }
        let final_chunk = parsed!(final_chunk, FinalChunk::default(), |v: &String| parse_final_chunk(v), |v: &FinalChunk| fmt_final_chunk(*v));
        let normalize_per: f64 = parsed!(normalize_per, 100.0, ident, |v: &f64| v.to_string());
        if !(normalize_per > 0.0 && normalize_per.is_finite()) {
            return Err(bad("normalize_per", "must be positive"));
        }
        let pos = parsed!(
            pos,
            PosKind::Builtin,
            |v: &String| match v.as_str() {
                "builtin" => Ok(PosKind::Builtin),
                "gold" => Ok(PosKind::Gold),
                o => Err(format!("unknown pos provider `{o}`")),
            },
            |v: &PosKind| if *v == PosKind::Builtin { "builtin" } else { "gold" }
        );
        let wordlists_dir = opt_path!(wordlists_dir);
        let lexicon_path = opt_path!(lexicon_path);
        let default_threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        let threads: usize = parsed!(threads, default_threads, ident, |v: &usize| v.to_string());
        if threads < 1 {
            return Err(bad("threads", "must be at least 1"));
        }
        let seed: u64 = parsed!(seed, 0, ident, |v: &u64| v.to_string());
        let on_error: OnError = parsed!(on_error, OnError::Skip, |v: &String| v.parse(), |v: &OnError| if *v == OnError::Skip { "skip" } else { "abort" });
        let k: usize = parsed!(k, 2, ident, |v: &usize| v.to_string());
        let components = parsed!(components, (0, 1), |v: &String| parse_components(v), |v: &(usize, usize)| format!("{},{}", v.0 + 1, v.1 + 1));

        Ok(RunConfig {
            input,
            format,
            output,
            output_format,
            mode,
            chunk_size,
            final_chunk,
            normalize_per,
            pos,
            wordlists_dir,
            lexicon_path,
            threads,
            seed,
            on_error,
            k,
            components,
            provenance: r.provenance,
        })
    }

    pub fn chunk_spec(&self) -> ChunkSpec {
        ChunkSpec::new(self.chunk_size, self.final_chunk).expect("chunk size validated")
    }

    pub fn pipeline(&self) -> Result<Pipeline, CliError> {
        let provider = match self.pos {
            PosKind::Gold => PosProvider::Gold,
            PosKind::Builtin => match &self.lexicon_path {
                None => PosProvider::builtin(),
                Some(p) => PosProvider::Builtin(BuiltinTagger::new(
                    Lexicon::from_path(p).map_err(|e| CliError::new("config", e.to_string()))?,
                )),
            },
        };
        let lists = match &self.wordlists_dir {
            None => WordLists::builtin(),
            Some(d) => WordLists::from_dir(d).map_err(|e| CliError::new("config", e.to_string()))?,
        };
        Ok(Pipeline {
            provider,
            engine: Engine::new(lists),
            mode: self.mode,
            spec: self.chunk_spec(),
            normalize_per: self.normalize_per,
        })
    }

    pub fn input(&self) -> Result<&Path, CliError> {
        self.input.as_deref().ok_or_else(|| CliError::new("usage", "--input is required"))
    }

    /// TOML text, one `key = value` per line with its source as a comment.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v, s) in &self.provenance {
            if v.is_empty() && *s == Source::Default {
                let _ = writeln!(out, "# {k} is unset");
                continue;
            }
            let value = if v.parse::<f64>().is_ok() {
                v.clone()
            } else {
                toml::Value::String(v.clone()).to_string()
            };
            let _ = writeln!(out, "{k} = {value}  # {s}");
        }
        out
    }
}
