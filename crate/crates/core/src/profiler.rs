//! Chunking and profile construction under both counting modes.

use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rules::real_valued;
use crate::types::{
    CountingMode, FeatureId, FeatureSet, FeatureStats, ProfileValues, StyleProfile, TagAnnotation,
    Token, FEATURE_COUNT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("document `{0}` has no tokens")]
    EmptyDocument(String),
    #[error("annotation covers {annotation} positions but the document has {tokens} tokens")]
    AnnotationMismatch { annotation: usize, tokens: usize },
    #[error("chunk size must be at least 1")]
    ZeroChunkSize,
}

/// What to do with a trailing chunk shorter than the chunk size. Thresholds
/// are fractions of the chunk size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", content = "threshold", rename_all = "kebab-case")]
pub enum FinalChunk {
    Keep,
    /// Discard the remainder when it is below the threshold.
    DropBelow(f64),
    /// Append the remainder to the previous chunk when it is below the
    /// threshold; otherwise keep it as its own chunk.
    MergeBelow(f64),
}

impl Default for FinalChunk {
    fn default() -> Self {
        FinalChunk::MergeBelow(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChunkSpec {
    size: usize,
    pub last: FinalChunk,
}

pub const DEFAULT_BINARY_CHUNK: usize = 100;
pub const DEFAULT_REGULAR_CHUNK: usize = 1000;

impl ChunkSpec {
    pub fn new(size: usize, last: FinalChunk) -> Result<ChunkSpec, ProfileError> {
        if size == 0 {
            return Err(ProfileError::ZeroChunkSize);
        }
        Ok(ChunkSpec { size, last })
    }

    pub fn with_size(size: usize) -> Result<ChunkSpec, ProfileError> {
        ChunkSpec::new(size, FinalChunk::default())
    }

    /// Default chunk size for a counting mode.
    pub fn for_mode(mode: CountingMode) -> ChunkSpec {
        let size = match mode {
            CountingMode::Binary => DEFAULT_BINARY_CHUNK,
            CountingMode::Regular => DEFAULT_REGULAR_CHUNK,
        };
        ChunkSpec { size, last: FinalChunk::default() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Token ranges of the chunks of an `n`-token document. A document
    /// shorter than one chunk is a single chunk.
    pub fn ranges(&self, n: usize) -> Vec<Range<usize>> {
        if n == 0 {
            return Vec::new();
        }
        if n <= self.size {
            return std::iter::once(0..n).collect();
        }
        let full = n / self.size;
        let rem = n % self.size;
        let mut out: Vec<Range<usize>> = (0..full).map(|c| c * self.size..(c + 1) * self.size).collect();
        if rem > 0 {
            let big_enough = |f: f64| rem as f64 >= f * self.size as f64;
            match self.last {
                FinalChunk::Keep => out.push(full * self.size..n),
                FinalChunk::DropBelow(f) => {
                    if big_enough(f) {
                        out.push(full * self.size..n);
                    }
                }
                FinalChunk::MergeBelow(f) => {
                    if big_enough(f) {
                        out.push(full * self.size..n);
                    } else {
                        out.last_mut().unwrap().end = n;
                    }
                }
            }
        }
        out
    }
}

pub fn chunk<'a>(tokens: &'a [Token], spec: &ChunkSpec) -> Vec<&'a [Token]> {
    spec.ranges(tokens.len()).into_iter().map(|r| &tokens[r]).collect()
}

fn check(annotation: &TagAnnotation, tokens: &[Token]) -> Result<(), ProfileError> {
    if annotation.len() != tokens.len() {
        return Err(ProfileError::AnnotationMismatch {
            annotation: annotation.len(),
            tokens: tokens.len(),
        });
    }
    if tokens.is_empty() {
        return Err(ProfileError::EmptyDocument(annotation.doc_id.clone()));
    }
    Ok(())
}

/// AWL and TTR of a chunk; a chunk without words contributes zeros.
fn chunk_reals(tokens: &[Token]) -> (f64, f64) {
    real_valued(tokens).map_or((0.0, 0.0), |r| (r.awl, r.ttr))
}

/// Per-chunk frequencies scaled to occurrences per `normalize_per` tokens,
/// summarized as mean/min/max/std across chunks.
pub fn profile_regular(
    annotation: &TagAnnotation,
    tokens: &[Token],
    spec: &ChunkSpec,
    normalize_per: f64,
) -> Result<StyleProfile, ProfileError> {
    check(annotation, tokens)?;
    let ranges = spec.ranges(tokens.len());
    let mut samples: Vec<Vec<f64>> = (0..FEATURE_COUNT).map(|_| Vec::with_capacity(ranges.len())).collect();
    for r in &ranges {
        let len = r.len() as f64;
        let counts = annotation.counts_in(r.clone());
        for f in FeatureId::countable() {
            samples[f.index()].push(counts[f.index()] as f64 * normalize_per / len);
        }
        let (awl, ttr) = chunk_reals(&tokens[r.clone()]);
        samples[FeatureId::Awl.index()].push(awl);
        samples[FeatureId::Ttr.index()].push(ttr);
    }
    let stats = samples.iter().map(|s| FeatureStats::from_samples(s)).collect();
    Ok(StyleProfile {
        doc_id: annotation.doc_id.clone(),
        label: None,
        chunk_size: spec.size(),
        n_tokens: tokens.len(),
        n_chunks: ranges.len(),
        values: ProfileValues::Regular(stats),
    })
}

/// Fraction of chunks in which each feature fires at least once. AWL and
/// TTR, which have no presence notion, report their mean per-chunk value.
pub fn profile_binary(
    annotation: &TagAnnotation,
    tokens: &[Token],
    spec: &ChunkSpec,
) -> Result<StyleProfile, ProfileError> {
    check(annotation, tokens)?;
    let ranges = spec.ranges(tokens.len());
    let n = ranges.len() as f64;
    let mut present = [0usize; FEATURE_COUNT];
    let (mut awl, mut ttr) = (0.0, 0.0);
    for r in &ranges {
        for f in annotation.presence_in(r.clone()).iter() {
            present[f.index()] += 1;
        }
        let (a, t) = chunk_reals(&tokens[r.clone()]);
        awl += a;
        ttr += t;
    }
    let mut values: Vec<f64> = present.iter().map(|&c| c as f64 / n).collect();
    values[FeatureId::Awl.index()] = awl / n;
    values[FeatureId::Ttr.index()] = ttr / n;
    Ok(StyleProfile {
        doc_id: annotation.doc_id.clone(),
        label: None,
        chunk_size: spec.size(),
        n_tokens: tokens.len(),
        n_chunks: ranges.len(),
        values: ProfileValues::Binary(values),
    })
}

pub fn profile(
    mode: CountingMode,
    annotation: &TagAnnotation,
    tokens: &[Token],
    spec: &ChunkSpec,
    normalize_per: f64,
) -> Result<StyleProfile, ProfileError> {
    match mode {
        CountingMode::Regular => profile_regular(annotation, tokens, spec, normalize_per),
        CountingMode::Binary => profile_binary(annotation, tokens, spec),
    }
}

/// One presence vector per chunk, in chunk order. Chunking follows `spec`,
/// so the fraction of vectors with a bit set equals the binary profile.
pub fn export_chunk_labels(
    annotation: &TagAnnotation,
    tokens: &[Token],
    spec: &ChunkSpec,
) -> Vec<(usize, FeatureSet)> {
    let n = tokens.len().min(annotation.len());
    spec.ranges(n)
        .into_iter()
        .enumerate()
        .map(|(i, r)| (i, annotation.presence_in(r)))
        .collect()
}

/// Document-level presence from span-level predictions: bitwise OR.
pub fn merge_spans(spans: &[FeatureSet]) -> FeatureSet {
    spans.iter().fold(FeatureSet::EMPTY, |acc, s| acc.union(*s))
}
