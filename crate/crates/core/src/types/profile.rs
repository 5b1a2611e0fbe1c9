use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FeatureId, FEATURE_COUNT};

/// How chunk-level observations are turned into document statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CountingMode {
    /// Normalized per-chunk frequencies aggregated as mean/min/max/std.
    Regular,
    /// Fraction of chunks in which a feature is present.
    #[default]
    Binary,
}

impl fmt::Display for CountingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountingMode::Regular => "regular",
            CountingMode::Binary => "binary",
        })
    }
}

impl FromStr for CountingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "regular" => Ok(CountingMode::Regular),
            "binary" => Ok(CountingMode::Binary),
            other => Err(format!("unknown counting mode `{other}`")),
        }
    }
}

/// Summary of one feature across the chunks of a document.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FeatureStats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub std: f64,
}

impl FeatureStats {
    /// Population statistics (divide by n). Empty input gives all zeros.
    pub fn from_samples(samples: &[f64]) -> FeatureStats {
        if samples.is_empty() {
            return FeatureStats::default();
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        let (min, max) = samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        // keep min <= mean <= max despite rounding in the mean
        FeatureStats {
            mean: mean.clamp(min, max),
            min,
            max,
            std: var.sqrt(),
        }
    }
}

/// Per-feature values, one entry per feature in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "values", rename_all = "lowercase")]
pub enum ProfileValues {
    Regular(Vec<FeatureStats>),
    Binary(Vec<f64>),
}

/// Style statistics for one document under one counting mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleProfile {
    pub doc_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub chunk_size: usize,
    pub n_tokens: usize,
    pub n_chunks: usize,
    pub values: ProfileValues,
}

impl StyleProfile {
    pub fn mode(&self) -> CountingMode {
        match self.values {
            ProfileValues::Regular(_) => CountingMode::Regular,
            ProfileValues::Binary(_) => CountingMode::Binary,
        }
    }

    /// Number of per-feature entries carried (96 when complete).
    pub fn len(&self) -> usize {
        match &self.values {
            ProfileValues::Regular(v) => v.len(),
            ProfileValues::Binary(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_complete(&self) -> bool {
        self.len() == FEATURE_COUNT
    }

    /// Representative scalar per feature: the fraction in binary mode, the
    /// mean in regular mode.
    pub fn vector(&self) -> Vec<f64> {
        match &self.values {
            ProfileValues::Regular(v) => v.iter().map(|s| s.mean).collect(),
            ProfileValues::Binary(v) => v.clone(),
        }
    }

    pub fn value(&self, feature: FeatureId) -> Option<f64> {
        match &self.values {
            ProfileValues::Regular(v) => v.get(feature.index()).map(|s| s.mean),
            ProfileValues::Binary(v) => v.get(feature.index()).copied(),
        }
    }

    pub fn stats(&self, feature: FeatureId) -> Option<FeatureStats> {
        match &self.values {
            ProfileValues::Regular(v) => v.get(feature.index()).copied(),
            ProfileValues::Binary(_) => None,
        }
    }
}
