//! File formats: corpus ingestion, profile and matrix tables, chunk labels,
//! PCA exports and verification pairs.
//!
//! Every writer is deterministic. Floats use Rust's shortest round-trip
//! decimal form, CSV files are RFC 4180 with `\n` line endings and always
//! carry a header.

mod corpus;
mod pan;
mod tables;

pub use corpus::{read_corpus, CorpusFormat, CorpusReader, CorpusRecord, OnError, RecordText};
pub use pan::{read_pan_pairs, PanFields, PanPair};
pub use tables::{
    profile_header, read_labels, read_matrix, read_profiles, read_scatter, write_labels,
    write_file, write_loadings, write_matrix, write_profiles, write_scatter, write_variance, LabelRecord,
    ProfileFormat, Stat,
};

use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}: file not found")]
    FileNotFound(PathBuf),
    #[error("{path}:{line}: {message}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl IoError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> IoError {
        if source.kind() == std::io::ErrorKind::NotFound {
            IoError::FileNotFound(path.to_path_buf())
        } else {
            IoError::Io { path: path.to_path_buf(), source }
        }
    }

    pub(crate) fn malformed(path: &Path, line: usize, message: impl Into<String>) -> IoError {
        IoError::MalformedRecord { path: path.to_path_buf(), line, message: message.into() }
    }

    pub(crate) fn format(path: &Path, message: impl ToString) -> IoError {
        IoError::Format { path: path.to_path_buf(), message: message.to_string() }
    }
}

/// Shortest decimal text that parses back to exactly `v`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
