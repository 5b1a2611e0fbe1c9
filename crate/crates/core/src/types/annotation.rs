use serde::{Deserialize, Serialize};

use super::{FeatureId, FeatureSet};

/// Features fired at each token position of one document.
///
/// `fired[i]` holds the countable features anchored at token `i`; the vector
/// always has one entry per token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagAnnotation {
    pub doc_id: String,
    fired: Vec<FeatureSet>,
}

impl TagAnnotation {
    /// Real-valued features are stripped from every position.
    pub fn new(doc_id: impl Into<String>, mut fired: Vec<FeatureSet>) -> TagAnnotation {
        for set in &mut fired {
            set.remove(FeatureId::Awl);
            set.remove(FeatureId::Ttr);
        }
        TagAnnotation {
            doc_id: doc_id.into(),
            fired,
        }
    }

    /// Number of token positions covered.
    pub fn len(&self) -> usize {
        self.fired.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fired.is_empty()
    }

    pub fn at(&self, index: usize) -> FeatureSet {
        self.fired.get(index).copied().unwrap_or_default()
    }

    pub fn as_slice(&self) -> &[FeatureSet] {
        &self.fired
    }

    pub fn positions(&self, feature: FeatureId) -> impl Iterator<Item = usize> + '_ {
        self.fired
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.contains(feature))
            .map(|(i, _)| i)
    }

    pub fn count(&self, feature: FeatureId) -> usize {
        self.positions(feature).count()
    }

    /// Per-feature fire counts over `range`, indexed canonically.
    pub fn counts_in(&self, range: std::ops::Range<usize>) -> [u32; super::FEATURE_COUNT] {
        let mut counts = [0u32; super::FEATURE_COUNT];
        for set in &self.fired[range] {
            let mut bits = set.bits();
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                counts[i] += 1;
                bits &= bits - 1;
            }
        }
        counts
    }

    /// Union of everything fired over `range`.
    pub fn presence_in(&self, range: std::ops::Range<usize>) -> FeatureSet {
        self.fired[range]
            .iter()
            .fold(FeatureSet::EMPTY, |acc, s| acc.union(*s))
    }
}
