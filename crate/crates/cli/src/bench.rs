//! Throughput measurement. Records are read (or generated) up front, so
//! tokens/sec covers only in-memory processing; reading time is reported
//! on its own.

use std::io::Write;
use std::time::{Duration, Instant};

use biberkit_core::io::{read_corpus, CorpusRecord, RecordText};
use biberkit_core::pipeline::{Pipeline, StageTimes};
use biberkit_core::synthetic;
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::run::thread_pool;
use crate::CliError;

pub const DEFAULT_BENCH_TOKENS: usize = 1_000_000;
pub const DEFAULT_DOC_TOKENS: usize = 1_000;

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Tokens in the generated corpus when no --input is given
    #[arg(long, default_value_t = DEFAULT_BENCH_TOKENS)]
    pub tokens: usize,
    /// Tokens per generated document
    #[arg(long, default_value_t = DEFAULT_DOC_TOKENS)]
    pub doc_tokens: usize,
    /// Thread counts for the scaling table
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub scaling: Vec<usize>,
    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StageRate {
    pub seconds: f64,
    pub tokens_per_sec: f64,
}

impl StageRate {
    fn new(d: Duration, tokens: usize) -> StageRate {
        let seconds = d.as_secs_f64();
        StageRate { seconds, tokens_per_sec: if seconds > 0.0 { tokens as f64 / seconds } else { 0.0 } }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stages {
    pub tokenize: StageRate,
    pub tag: StageRate,
    pub annotate: StageRate,
    pub profile: StageRate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub threads: usize,
    pub seconds: f64,
    pub tokens_per_sec: f64,
    /// Relative to the first row.
    pub speedup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    /// `synthetic` or the input path.
    pub source: String,
    pub documents: usize,
    pub tokens: usize,
    /// Time to read or generate the corpus; not part of any rate.
    pub io_seconds: f64,
    /// Single-threaded pass, wall time.
    pub wall_seconds: f64,
    pub tokens_per_sec: f64,
    pub stages: Stages,
    /// Sum of the stage times of the single-threaded pass.
    pub stage_seconds: f64,
    pub scaling: Vec<ScalingRow>,
    pub available_parallelism: usize,
}

/// The generated benchmark corpus: documents of about `doc_tokens` tokens
/// until `total` tokens are reached.
pub fn synthetic_records(total: usize, doc_tokens: usize, seed: u64) -> Vec<CorpusRecord> {
    let doc_tokens = doc_tokens.max(1);
    let n = total.div_ceil(doc_tokens);
    synthetic::corpus(n, doc_tokens, seed)
        .into_iter()
        .map(|d| CorpusRecord { id: d.id, text: RecordText::Raw(d.text), label: Some(d.label) })
        .collect()
}

/// Time `pl` over `records`: one single-threaded pass with per-stage
/// timing, then one whole-corpus pass per entry of `threads`.
pub fn measure(records: &[CorpusRecord], pl: &Pipeline, threads: &[usize]) -> Result<(usize, Duration, StageTimes, Vec<ScalingRow>), CliError> {
    // warm caches and lazily built tables
    for r in records.iter().take(20) {
        let _ = pl.profile_record(r);
    }
    let mut stages = StageTimes::default();
    let mut tokens = 0;
    let start = Instant::now();
    for r in records {
        let (res, n, t) = pl.profile_record_timed(r);
        res?;
        tokens += n;
        stages.add(&t);
    }
    let wall = start.elapsed();

    let mut rows: Vec<ScalingRow> = Vec::new();
    for &t in threads {
        let pool = thread_pool(t)?;
        let start = Instant::now();
        let n: usize = pool.install(|| {
            records.par_iter().map(|r| pl.profile_record(r).map(|p| p.n_tokens).unwrap_or(0)).sum()
        });
        let secs = start.elapsed().as_secs_f64();
        debug_assert_eq!(n, tokens);
        let rate = if secs > 0.0 { tokens as f64 / secs } else { 0.0 };
        let base = rows.first().map_or(rate, |r| r.tokens_per_sec);
        rows.push(ScalingRow { threads: t, seconds: secs, tokens_per_sec: rate, speedup: if base > 0.0 { rate / base } else { 0.0 } });
    }
    Ok((tokens, wall, stages, rows))
}

pub fn cmd_bench(cfg: &RunConfig, args: &BenchArgs) -> Result<BenchReport, CliError> {
    let pl = cfg.pipeline()?;
    let start = Instant::now();
    let (source, records) = match &cfg.input {
        Some(path) => {
            let recs: Result<Vec<_>, _> = read_corpus(path, cfg.format, cfg.on_error)?.collect();
            (path.display().to_string(), recs?)
        }
        None => ("synthetic".to_string(), synthetic_records(args.tokens, args.doc_tokens, cfg.seed)),
    };
    let io = start.elapsed();
    if args.scaling.contains(&0) {
        return Err(CliError::new("config", "scaling: thread counts must be at least 1"));
    }
    let (tokens, wall, st, scaling) = measure(&records, &pl, &args.scaling)?;
    let tps = StageRate::new(wall, tokens);
    Ok(BenchReport {
        source,
        documents: records.len(),
        tokens,
        io_seconds: io.as_secs_f64(),
        wall_seconds: tps.seconds,
        tokens_per_sec: tps.tokens_per_sec,
        stages: Stages {
            tokenize: StageRate::new(st.tokenize, tokens),
            tag: StageRate::new(st.tag, tokens),
            annotate: StageRate::new(st.annotate, tokens),
            profile: StageRate::new(st.profile, tokens),
        },
        stage_seconds: st.total().as_secs_f64(),
        scaling,
        available_parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
    })
}

pub fn write_report(r: &BenchReport, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if json {
        serde_json::to_writer_pretty(&mut *out, r)?;
        writeln!(out)?;
        return out.flush();
    }
    writeln!(out, "corpus        {} ({} documents, {} tokens)", r.source, r.documents, r.tokens)?;
    writeln!(out, "read/generate {:.3} s (excluded from rates)", r.io_seconds)?;
    writeln!(out, "single thread {:.3} s, {:.0} tokens/s", r.wall_seconds, r.tokens_per_sec)?;
    writeln!(out)?;
    writeln!(out, "{:<10} {:>10} {:>14}", "stage", "seconds", "tokens/s")?;
    for (name, s) in [("tokenize", &r.stages.tokenize), ("tag", &r.stages.tag), ("annotate", &r.stages.annotate), ("profile", &r.stages.profile)] {
        writeln!(out, "{name:<10} {:>10.3} {:>14.0}", s.seconds, s.tokens_per_sec)?;
    }
    writeln!(out, "{:<10} {:>10.3}", "sum", r.stage_seconds)?;
    writeln!(out)?;
    writeln!(out, "{:<8} {:>10} {:>14} {:>8}", "threads", "seconds", "tokens/s", "speedup")?;
    for row in &r.scaling {
        writeln!(out, "{:<8} {:>10.3} {:>14.0} {:>8.2}", row.threads, row.seconds, row.tokens_per_sec, row.speedup)?;
    }
    writeln!(out, "(available parallelism: {})", r.available_parallelism)?;
    out.flush()
}
