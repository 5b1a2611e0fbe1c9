//! One document through every stage: tokenize, tag, annotate, profile.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::io::{CorpusRecord, RecordText};
use crate::pos::{tag_gold, tokenize, PosError, PosProvider};
use crate::profiler::{profile, ChunkSpec, ProfileError};
use crate::rules::Engine;
use crate::types::{CountingMode, StyleProfile, TagAnnotation, Token};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("document `{id}`: {source}")]
    Pos {
        id: String,
        #[source]
        source: PosError,
    },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Shared, read-only pipeline state; safe to use from many threads.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub provider: PosProvider,
    pub engine: Engine,
    pub mode: CountingMode,
    pub spec: ChunkSpec,
    pub normalize_per: f64,
}

/// Wall time spent in each stage for one document.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimes {
    pub tokenize: Duration,
    pub tag: Duration,
    pub annotate: Duration,
    pub profile: Duration,
}

impl StageTimes {
    pub fn total(&self) -> Duration {
        self.tokenize + self.tag + self.annotate + self.profile
    }

    pub fn add(&mut self, other: &StageTimes) {
        self.tokenize += other.tokenize;
        self.tag += other.tag;
        self.annotate += other.annotate;
        self.profile += other.profile;
    }
}

impl Pipeline {
    pub fn new(mode: CountingMode) -> Pipeline {
        Pipeline {
            provider: PosProvider::builtin(),
            engine: Engine::default(),
            mode,
            spec: ChunkSpec::for_mode(mode),
            normalize_per: 100.0,
        }
    }

    /// Tokens for a record: raw text goes through the configured provider,
    /// pre-tagged records keep their tags whatever the provider.
    pub fn tokens(&self, record: &CorpusRecord) -> Result<Vec<Token>, PipelineError> {
        match &record.text {
            RecordText::Raw(t) => Ok(self.provider.tag_text(t)),
            RecordText::Tagged(g) => tag_gold(g).map_err(|source| PipelineError::Pos { id: record.id.clone(), source }),
        }
    }

    pub fn annotate(&self, id: &str, tokens: &[Token]) -> TagAnnotation {
        self.engine.annotate(id, tokens)
    }

    pub fn profile_tokens(&self, id: &str, label: Option<&str>, tokens: &[Token]) -> Result<StyleProfile, PipelineError> {
        let ann = self.engine.annotate(id, tokens);
        let mut p = profile(self.mode, &ann, tokens, &self.spec, self.normalize_per)?;
        p.label = label.map(String::from);
        Ok(p)
    }

    pub fn profile_text(&self, id: &str, label: Option<&str>, text: &str) -> Result<StyleProfile, PipelineError> {
        self.profile_tokens(id, label, &self.provider.tag_text(text))
    }

    pub fn profile_record(&self, record: &CorpusRecord) -> Result<StyleProfile, PipelineError> {
        let tokens = self.tokens(record)?;
        self.profile_tokens(&record.id, record.label.as_deref(), &tokens)
    }

    /// Like [`Pipeline::profile_record`], timing each stage. Returns the
    /// token count alongside.
    pub fn profile_record_timed(&self, record: &CorpusRecord) -> (Result<StyleProfile, PipelineError>, usize, StageTimes) {
        let mut times = StageTimes::default();
        let t0 = Instant::now();
        let tokens = match &record.text {
            RecordText::Raw(text) => {
                let raw = tokenize(text);
                let t1 = Instant::now();
                times.tokenize = t1 - t0;
                let tagged = self.provider.tag(raw);
                times.tag = t1.elapsed();
                tagged
            }
            RecordText::Tagged(g) => match tag_gold(g) {
                Ok(t) => {
                    times.tag = t0.elapsed();
                    t
                }
                Err(source) => return (Err(PipelineError::Pos { id: record.id.clone(), source }), 0, times),
            },
        };
        let t2 = Instant::now();
        let ann = self.engine.annotate(&record.id, &tokens);
        let t3 = Instant::now();
        times.annotate = t3 - t2;
        let result = profile(self.mode, &ann, &tokens, &self.spec, self.normalize_per)
            .map(|mut p| {
                p.label = record.label.clone();
                p
            })
            .map_err(PipelineError::from);
        times.profile = t3.elapsed();
        (result, tokens.len(), times)
    }
}
