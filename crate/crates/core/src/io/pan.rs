use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde_json::Value;

use super::{IoError, OnError};

/// Field names of a verification-pair record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanFields {
    pub id: String,
    /// Array of exactly two texts.
    pub pair: String,
    /// Boolean ground truth; may be absent for unlabelled test data.
    pub same: String,
}

impl Default for PanFields {
    fn default() -> Self {
        PanFields { id: "id".into(), pair: "pair".into(), same: "same".into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanPair {
    pub id: String,
    pub texts: [String; 2],
    pub same: Option<bool>,
}

fn parse_pair(line: &str, fields: &PanFields) -> Result<PanPair, String> {
    let v: Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let id = match v.get(&fields.id) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => return Err(format!("missing string field `{}`", fields.id)),
    };
    let texts = match v.get(&fields.pair).and_then(Value::as_array).map(Vec::as_slice) {
        Some([Value::String(a), Value::String(b)]) => [a.clone(), b.clone()],
        _ => return Err(format!("`{}` must be an array of two strings", fields.pair)),
    };
    let same = match v.get(&fields.same) {
        None | Some(Value::Null) => None,
        Some(Value::Bool(b)) => Some(*b),
        Some(other) => return Err(format!("`{}` must be a boolean, got {other}", fields.same)),
    };
    Ok(PanPair { id, texts, same })
}

/// Read line-delimited verification pairs. Malformed lines follow `policy`;
/// skipped ones are logged and returned alongside the pairs.
pub fn read_pan_pairs(
    path: &Path,
    fields: &PanFields,
    policy: OnError,
) -> Result<(Vec<PanPair>, Vec<IoError>), IoError> {
    let f = File::open(path).map_err(|e| IoError::io(path, e))?;
    let mut pairs = Vec::new();
    let mut skipped = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| IoError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_pair(&line, fields) {
            Ok(p) => pairs.push(p),
            Err(msg) => {
                let e = IoError::malformed(path, i + 1, msg);
                if policy == OnError::Abort {
                    return Err(e);
                }
                log::warn!("skipping pair: {e}");
                skipped.push(e);
            }
        }
    }
    Ok((pairs, skipped))
}
