use std::io::Write;
use std::path::{Path, PathBuf};

use biberkit_core::analytics::{export_scatter, pca, pca_standardized, top_loadings, varimax, PcaResult};
use biberkit_core::io::{
    read_corpus, read_matrix, read_pan_pairs, read_profiles, write_file, write_labels, write_loadings, write_profiles,
    write_scatter, write_variance, CorpusRecord, LabelRecord, PanFields, ProfileFormat, Stat,
};
use biberkit_core::pipeline::{Pipeline, PipelineError};
use biberkit_core::profiler::export_chunk_labels;
use biberkit_core::rules::list_features;
use biberkit_core::synthetic;
use biberkit_core::verify::{evaluate, train, ForestModel, ForestParams, PairExample};
use biberkit_core::{FeatureMatrix, StyleProfile};
use clap::Args;
use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::ThreadPool;
use serde::Serialize;
use serde_json::json;

use crate::config::RunConfig;
use crate::run::{ordered_map, thread_pool};
use crate::CliError;
use biberkit_core::io::OnError;

/// Counts printed after a corpus pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub documents: usize,
    pub tokens: usize,
    /// Documents dropped because they could not be profiled.
    pub skipped: usize,
}

fn records(cfg: &RunConfig) -> Result<impl Iterator<Item = Result<CorpusRecord, CliError>>, CliError> {
    let reader = read_corpus(cfg.input()?, cfg.format, cfg.on_error)?;
    Ok(reader.map(|r| r.map_err(CliError::from)))
}

/// Route a per-document failure through the error policy: `Ok(None)` means
/// skip it.
fn keep<T>(r: Result<T, PipelineError>, policy: OnError, summary: &mut CorpusSummary) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if policy == OnError::Skip => {
            warn!("skipping: {e}");
            summary.skipped += 1;
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

/// Profile every document of the configured corpus, in corpus order.
pub fn profile_corpus(cfg: &RunConfig, pl: &Pipeline, pool: &ThreadPool) -> Result<(Vec<StyleProfile>, CorpusSummary), CliError> {
    let mut summary = CorpusSummary::default();
    let mut out = Vec::new();
    ordered_map(pool, records(cfg)?, |rec| pl.profile_record(&rec), |r| {
        if let Some(p) = keep(r, cfg.on_error, &mut summary)? {
            summary.documents += 1;
            summary.tokens += p.n_tokens;
            out.push(p);
        }
        Ok(())
    })?;
    Ok((out, summary))
}

pub fn cmd_profile(cfg: &RunConfig, out: &mut dyn Write) -> Result<CorpusSummary, CliError> {
    let pl = cfg.pipeline()?;
    let pool = thread_pool(cfg.threads)?;
    let (profiles, summary) = profile_corpus(cfg, &pl, &pool)?;
    write_profiles(&profiles, &mut *out, cfg.output_format, Some(cfg.mode))?;
    Ok(summary)
}

#[derive(Serialize)]
struct TaggedToken<'a> {
    surface: &'a str,
    tag: &'static str,
    features: Vec<&'static str>,
}

#[derive(Serialize)]
struct TaggedDoc<'a> {
    id: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    tokens: Vec<TaggedToken<'a>>,
}

/// One JSON line per document: tokens with their tags and fired features.
pub fn cmd_tag(cfg: &RunConfig, out: &mut dyn Write) -> Result<CorpusSummary, CliError> {
    let pl = cfg.pipeline()?;
    let pool = thread_pool(cfg.threads)?;
    let mut summary = CorpusSummary::default();
    let render = |rec: CorpusRecord| -> Result<(String, usize), PipelineError> {
        let tokens = pl.tokens(&rec)?;
        let ann = pl.annotate(&rec.id, &tokens);
        let doc = TaggedDoc {
            id: &rec.id,
            label: rec.label.as_deref(),
            tokens: tokens
                .iter()
                .enumerate()
                .map(|(i, t)| TaggedToken {
                    surface: &t.surface,
                    tag: t.pos.as_str(),
                    features: ann.at(i).iter().map(|f| f.code()).collect(),
                })
                .collect(),
        };
        Ok((serde_json::to_string(&doc).expect("plain data serializes"), tokens.len()))
    };
    ordered_map(&pool, records(cfg)?, render, |r| {
        if let Some((line, n)) = keep(r, cfg.on_error, &mut summary)? {
            summary.documents += 1;
            summary.tokens += n;
            writeln!(out, "{line}")?;
        }
        Ok(())
    })?;
    out.flush()?;
    Ok(summary)
}

/// Per-chunk feature presence, one JSON line per chunk.
pub fn cmd_export_labels(cfg: &RunConfig, out: &mut dyn Write) -> Result<CorpusSummary, CliError> {
    let pl = cfg.pipeline()?;
    let pool = thread_pool(cfg.threads)?;
    let mut summary = CorpusSummary::default();
    let chunks = |rec: CorpusRecord| -> Result<(Vec<LabelRecord>, usize), PipelineError> {
        let tokens = pl.tokens(&rec)?;
        let ann = pl.annotate(&rec.id, &tokens);
        let labels = export_chunk_labels(&ann, &tokens, &pl.spec)
            .into_iter()
            .map(|(i, set)| LabelRecord::new(rec.id.clone(), i, set))
            .collect();
        Ok((labels, tokens.len()))
    };
    ordered_map(&pool, records(cfg)?, chunks, |r| {
        if let Some((labels, n)) = keep(r, cfg.on_error, &mut summary)? {
            summary.documents += 1;
            summary.tokens += n;
            write_labels(labels, &mut *out)?;
        }
        Ok(())
    })?;
    Ok(summary)
}

#[derive(Debug, Clone, Default, Args)]
pub struct PcaArgs {
    /// Treat --input as a corpus and profile it first instead of reading a matrix
    #[arg(long)]
    pub corpus: bool,
    /// Statistic used as the value of regular-mode profile CSVs
    #[arg(long, default_value = "mean", value_parser = parse_stat)]
    pub stat: StatArg,
    /// Use the covariance of the raw values instead of standardizing first
    #[arg(long)]
    pub covariance: bool,
    /// Also write varimax-rotated loadings
    #[arg(long)]
    pub varimax: bool,
    /// Loadings listed per component in the summary
    #[arg(long, default_value_t = 10)]
    pub top: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StatArg(pub Stat);

fn parse_stat(s: &str) -> Result<StatArg, String> {
    Ok(StatArg(match s {
        "mean" => Stat::Mean,
        "min" => Stat::Min,
        "max" => Stat::Max,
        "std" => Stat::Std,
        o => return Err(format!("unknown statistic `{o}`")),
    }))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn load_matrix(cfg: &RunConfig, args: &PcaArgs) -> Result<FeatureMatrix, CliError> {
    let shape = |e: biberkit_core::ShapeError| CliError::new("shape", e.to_string());
    if args.corpus {
        let pl = cfg.pipeline()?;
        let pool = thread_pool(cfg.threads)?;
        let (profiles, _) = profile_corpus(cfg, &pl, &pool)?;
        return FeatureMatrix::from_profiles(&profiles).map_err(shape);
    }
    let path = cfg.input()?;
    if path.extension().is_some_and(|e| e == "jsonl") {
        FeatureMatrix::from_profiles(&read_profiles(path, ProfileFormat::Jsonl)?).map_err(shape)
    } else {
        Ok(read_matrix(path, args.stat.0)?)
    }
}

/// Writes `<prefix>.loadings.csv`, `<prefix>.scatter.csv`,
/// `<prefix>.variance.csv` (and `<prefix>.varimax.csv`); returns the JSON
/// summary.
pub fn cmd_pca(cfg: &RunConfig, args: &PcaArgs) -> Result<serde_json::Value, CliError> {
    let m = load_matrix(cfg, args)?;
    let r: PcaResult = if args.covariance { pca(&m, cfg.k)? } else { pca_standardized(&m, cfg.k)? };
    let scatter = export_scatter(&r, cfg.components, None)?;
    let prefix = cfg.output.clone().unwrap_or_else(|| PathBuf::from("pca"));
    let mut written = Vec::new();
    let mut emit = |suffix: &str, f: &dyn Fn(&mut dyn Write) -> std::io::Result<()>| -> Result<(), CliError> {
        let path = with_suffix(&prefix, suffix);
        write_file(&path, |mut w| f(&mut w))?;
        written.push(path.display().to_string());
        Ok(())
    };
    emit(".loadings.csv", &|w| write_loadings(&r, w))?;
    emit(".scatter.csv", &|w| write_scatter(&scatter, cfg.components, w))?;
    emit(".variance.csv", &|w| write_variance(&r, w))?;
    if args.varimax {
        let rotated = PcaResult { components: varimax(&r.components, r.n_cols(), r.k, 100, 1e-10), ..r.clone() };
        emit(".varimax.csv", &|w| write_loadings(&rotated, w))?;
    }
    let mut top = serde_json::Map::new();
    for c in 0..r.k {
        top.insert(format!("PC{}", c + 1), json!(top_loadings(&r, c, args.top)?));
    }
    Ok(json!({
        "rows": m.n_rows(),
        "columns": m.n_cols(),
        "k": r.k,
        "explained_variance": r.explained_variance,
        "explained_ratio": r.explained_ratio,
        "top_loadings": top,
        "files": written,
    }))
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Training pairs, one JSON object per line
    #[arg(long)]
    pub train: PathBuf,
    /// Test pairs in the same format
    #[arg(long)]
    pub test: PathBuf,
    /// Write the trained model as JSON
    #[arg(long)]
    pub save_model: Option<PathBuf>,
    /// Permute the training labels (random-baseline check)
    #[arg(long)]
    pub shuffle_labels: bool,
    /// Probability at or above which a pair is called same-author
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    /// Trees in the forest
    #[arg(long, default_value_t = 100)]
    pub n_trees: usize,
    /// Maximum tree depth
    #[arg(long, default_value_t = 16)]
    pub max_depth: usize,
    /// Minimum rows per leaf
    #[arg(long, default_value_t = 2)]
    pub min_leaf: usize,
    /// Features tried per split (default: square root of the pair width)
    #[arg(long)]
    pub max_features: Option<usize>,
    /// Train every tree on all pairs instead of a bootstrap sample
    #[arg(long)]
    pub no_bootstrap: bool,
    /// JSON key holding the pair id
    #[arg(long, default_value = "id")]
    pub id_field: String,
    /// JSON key holding the two texts
    #[arg(long, default_value = "pair")]
    pub pair_field: String,
    /// JSON key holding the same-author flag
    #[arg(long, default_value = "same")]
    pub same_field: String,
}

impl VerifyArgs {
    pub fn params(&self) -> ForestParams {
        ForestParams {
            n_trees: self.n_trees,
            max_depth: self.max_depth,
            min_leaf: self.min_leaf,
            max_features: self.max_features,
            bootstrap: !self.no_bootstrap,
        }
    }
}

/// Profile both texts of every pair and build labelled examples.
fn pair_examples(path: &Path, fields: &PanFields, cfg: &RunConfig, pl: &Pipeline, pool: &ThreadPool) -> Result<Vec<PairExample>, CliError> {
    let (pairs, _) = read_pan_pairs(path, fields, cfg.on_error)?;
    let mut out = Vec::with_capacity(pairs.len());
    let items = pairs.into_iter().map(|p| match p.same {
        Some(same) => Ok((p, same)),
        None => Err(CliError::new("verify", format!("{}: pair `{}` has no `{}` value", path.display(), p.id, fields.same))),
    });
    let example = |(p, same): (biberkit_core::io::PanPair, bool)| -> Result<PairExample, CliError> {
        let a = pl.profile_text(&format!("{}#0", p.id), None, &p.texts[0])?;
        let b = pl.profile_text(&format!("{}#1", p.id), None, &p.texts[1])?;
        Ok(PairExample::from_profiles(&a, &b, same)?)
    };
    ordered_map(pool, items, example, |r| {
        out.push(r?);
        Ok(())
    })?;
    Ok(out)
}

pub fn cmd_verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<serde_json::Value, CliError> {
    let pl = cfg.pipeline()?;
    let pool = thread_pool(cfg.threads)?;
    let fields = PanFields { id: args.id_field.clone(), pair: args.pair_field.clone(), same: args.same_field.clone() };
    let mut tr = pair_examples(&args.train, &fields, cfg, &pl, &pool)?;
    let te = pair_examples(&args.test, &fields, cfg, &pl, &pool)?;
    if args.shuffle_labels {
        let mut labels: Vec<bool> = tr.iter().map(|e| e.label).collect();
        labels.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_5eed));
        for (e, l) in tr.iter_mut().zip(labels) {
            e.label = l;
        }
    }
    let model = train(&tr, args.params(), cfg.seed)?;
    if let Some(p) = &args.save_model {
        model.save(p)?;
    }
    let m = evaluate(&model, &te, args.threshold)?;
    Ok(json!({
        "train_pairs": tr.len(),
        "test_pairs": te.len(),
        "shuffled_labels": args.shuffle_labels,
        "seed": cfg.seed,
        "threshold": args.threshold,
        "f1": m.f1,
        "precision": m.precision,
        "recall": m.recall,
        "accuracy": m.accuracy,
        "tp": m.tp,
        "fp": m.fp,
        "tn": m.tn,
        "fn": m.fn_,
    }))
}

/// Reload a saved model; a convenience for callers of the library.
pub fn load_model(path: &Path) -> Result<ForestModel, CliError> {
    Ok(ForestModel::load(path)?)
}

pub fn cmd_list_features(out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "code\tkind\tdescription")?;
    for (f, kind, desc) in list_features() {
        let kind = match kind {
            biberkit_core::FeatureKind::Countable => "countable",
            biberkit_core::FeatureKind::RealValued => "real-valued",
        };
        writeln!(out, "{}\t{kind}\t{desc}", f.code())?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Documents to generate (alternating styles)
    #[arg(long, default_value_t = 100)]
    pub docs: usize,
    /// Minimum tokens per document
    #[arg(long, default_value_t = 500)]
    pub tokens_per_doc: usize,
    /// Generate this many verification pairs instead of documents
    #[arg(long)]
    pub pairs: Option<usize>,
}

/// Synthetic two-style corpus (or verification pairs) as JSON lines.
pub fn cmd_synth(cfg: &RunConfig, args: &SynthArgs, out: &mut dyn Write) -> Result<(), CliError> {
    match args.pairs {
        Some(n) => {
            for p in synthetic::pairs(n, args.tokens_per_doc, cfg.seed) {
                writeln!(out, "{}", json!({"id": p.id, "pair": p.texts, "same": p.same}))?;
            }
        }
        None => {
            for d in synthetic::corpus(args.docs, args.tokens_per_doc, cfg.seed) {
                writeln!(out, "{}", json!({"id": d.id, "text": d.text, "label": d.label}))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
