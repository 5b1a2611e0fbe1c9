use serde::{Deserialize, Serialize};

use super::{FeatureId, StyleProfile};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("expected {expected} values, got {actual}")]
    Size { expected: usize, actual: usize },
    #[error("{labels} labels for {rows} rows")]
    Labels { labels: usize, rows: usize },
    #[error("profile `{doc_id}` has {len} features, expected {expected}")]
    IncompleteProfile {
        doc_id: String,
        len: usize,
        expected: usize,
    },
}

/// Documents × features, row-major.
///
/// Matrices built from profiles use the 96 canonical feature codes as
/// columns; `new` accepts arbitrary column names for analysis of other data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    row_ids: Vec<String>,
    labels: Option<Vec<String>>,
    columns: Vec<String>,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(
        row_ids: Vec<String>,
        labels: Option<Vec<String>>,
        columns: Vec<String>,
        values: Vec<f64>,
    ) -> Result<FeatureMatrix, ShapeError> {
        let expected = row_ids.len() * columns.len();
        if values.len() != expected {
            return Err(ShapeError::Size {
                expected,
                actual: values.len(),
            });
        }
        if let Some(l) = &labels {
            if l.len() != row_ids.len() {
                return Err(ShapeError::Labels {
                    labels: l.len(),
                    rows: row_ids.len(),
                });
            }
        }
        Ok(FeatureMatrix {
            row_ids,
            labels,
            columns,
            values,
        })
    }

    /// Build from row vectors; every row must have `columns.len()` entries.
    pub fn from_rows(
        row_ids: Vec<String>,
        labels: Option<Vec<String>>,
        columns: Vec<String>,
        rows: &[Vec<f64>],
    ) -> Result<FeatureMatrix, ShapeError> {
        let mut values = Vec::with_capacity(rows.len() * columns.len());
        for r in rows {
            if r.len() != columns.len() {
                return Err(ShapeError::Size {
                    expected: columns.len(),
                    actual: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        FeatureMatrix::new(row_ids, labels, columns, values)
    }

    /// Canonical 96-column matrix from profiles (binary fractions or regular
    /// means). Labels are kept when every profile has one.
    pub fn from_profiles(profiles: &[StyleProfile]) -> Result<FeatureMatrix, ShapeError> {
        let mut rows = Vec::with_capacity(profiles.len());
        for p in profiles {
            if !p.is_complete() {
                return Err(ShapeError::IncompleteProfile {
                    doc_id: p.doc_id.clone(),
                    len: p.len(),
                    expected: super::FEATURE_COUNT,
                });
            }
            rows.push(p.vector());
        }
        let labels: Option<Vec<String>> = profiles.iter().map(|p| p.label.clone()).collect();
        let labels = labels.filter(|l| !l.is_empty());
        FeatureMatrix::from_rows(
            profiles.iter().map(|p| p.doc_id.clone()).collect(),
            labels,
            canonical_columns(),
            &rows,
        )
    }

    pub fn n_rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let c = self.n_cols();
        &self.values[i * c..(i + 1) * c]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_cols() + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_rows()).map(|i| self.get(i, j)).collect()
    }

    /// Same ids, labels and columns with new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<FeatureMatrix, ShapeError> {
        FeatureMatrix::new(
            self.row_ids.clone(),
            self.labels.clone(),
            self.columns.clone(),
            values,
        )
    }

    /// Whether the columns are exactly the canonical feature codes.
    pub fn is_canonical(&self) -> bool {
        self.columns.len() == super::FEATURE_COUNT
            && self
                .columns
                .iter()
                .zip(FeatureId::ALL)
                .all(|(c, f)| c == f.code())
    }
}

/// The 96 feature codes in canonical order.
pub fn canonical_columns() -> Vec<String> {
    FeatureId::ALL.iter().map(|f| f.code().to_string()).collect()
}
