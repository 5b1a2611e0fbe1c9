use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{fmt_f64, IoError};
use crate::analytics::{PcaResult, ScatterRecord};
use crate::types::{
    CountingMode, FeatureId, FeatureMatrix, FeatureSet, FeatureStats, ProfileValues, StyleProfile,
    FEATURE_COUNT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileFormat {
    Csv,
    Jsonl,
}

impl fmt::Display for ProfileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProfileFormat::Csv => "csv",
            ProfileFormat::Jsonl => "jsonl",
        })
    }
}

impl FromStr for ProfileFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ProfileFormat::Csv),
            "jsonl" => Ok(ProfileFormat::Jsonl),
            other => Err(format!("unknown output format `{other}`")),
        }
    }
}

/// Which regular-mode statistic to read as the matrix value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stat {
    #[default]
    Mean,
    Min,
    Max,
    Std,
}

impl Stat {
    const ALL: [Stat; 4] = [Stat::Mean, Stat::Min, Stat::Max, Stat::Std];

    fn suffix(self) -> &'static str {
        match self {
            Stat::Mean => "mean",
            Stat::Min => "min",
            Stat::Max => "max",
            Stat::Std => "std",
        }
    }

    fn of(self, s: &FeatureStats) -> f64 {
        match self {
            Stat::Mean => s.mean,
            Stat::Min => s.min,
            Stat::Max => s.max,
            Stat::Std => s.std,
        }
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn create(path: &Path) -> Result<BufWriter<File>, IoError> {
    File::create(path).map(BufWriter::new).map_err(|e| IoError::io(path, e))
}

fn csv_err(path: &Path, e: csv::Error) -> IoError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => IoError::io(path, io),
        other => IoError::format(path, format!("{other:?}")),
    }
}

/// Column names of a profile CSV. A `label` column follows `doc_id` when
/// `labelled` is set.
pub fn profile_header(mode: CountingMode, labelled: bool) -> Vec<String> {
    let mut h = vec!["doc_id".to_string()];
    if labelled {
        h.push("label".into());
    }
    for f in FeatureId::ALL {
        match mode {
            CountingMode::Binary => h.push(f.code().to_string()),
            CountingMode::Regular => h.extend(Stat::ALL.iter().map(|s| format!("{}_{}", f.code(), s.suffix()))),
        }
    }
    h
}

/// Write profiles to `out`. All profiles must share a counting mode; an empty
/// list writes a binary-mode header (or `mode`'s header when given).
pub fn write_profiles<W: Write>(
    profiles: &[StyleProfile],
    out: W,
    format: ProfileFormat,
    mode: Option<CountingMode>,
) -> std::io::Result<()> {
    match format {
        ProfileFormat::Jsonl => {
            let mut out = out;
            for p in profiles {
                serde_json::to_writer(&mut out, p)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        ProfileFormat::Csv => {
            let mode = mode.or_else(|| profiles.first().map(StyleProfile::mode)).unwrap_or_default();
            let labelled = !profiles.is_empty() && profiles.iter().any(|p| p.label.is_some());
            let mut w = csv_writer(out);
            w.write_record(profile_header(mode, labelled))?;
            for p in profiles {
                if p.mode() != mode {
                    return Err(std::io::Error::new(
                        std::io::ErrorKind::InvalidInput,
                        format!("profile `{}` is {} but the file is {mode}", p.doc_id, p.mode()),
                    ));
                }
                let mut row = vec![p.doc_id.clone()];
                if labelled {
                    row.push(p.label.clone().unwrap_or_default());
                }
                match &p.values {
                    ProfileValues::Binary(v) => row.extend(v.iter().map(|x| fmt_f64(*x))),
                    ProfileValues::Regular(v) => {
                        for s in v {
                            row.extend(Stat::ALL.iter().map(|k| fmt_f64(k.of(s))));
                        }
                    }
                }
                w.write_record(&row)?;
            }
            w.flush()
        }
    }
}

/// Read profiles written by [`write_profiles`]. JSONL keeps every field;
/// CSV carries no chunk metadata, so `chunk_size`, `n_tokens` and
/// `n_chunks` come back as 0.
pub fn read_profiles(path: &Path, format: ProfileFormat) -> Result<Vec<StyleProfile>, IoError> {
    let f = File::open(path).map_err(|e| IoError::io(path, e))?;
    match format {
        ProfileFormat::Jsonl => BufReader::new(f)
            .lines()
            .enumerate()
            .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|(i, l)| {
                let l = l.map_err(|e| IoError::io(path, e))?;
                serde_json::from_str(&l).map_err(|e| IoError::malformed(path, i + 1, e.to_string()))
            })
            .collect(),
        ProfileFormat::Csv => {
            let mut r = csv::Reader::from_reader(f);
            let header: Vec<String> = r.headers().map_err(|e| csv_err(path, e))?.iter().map(String::from).collect();
            let labelled = header.get(1).is_some_and(|h| h == "label");
            let mode = if header == profile_header(CountingMode::Binary, labelled) {
                CountingMode::Binary
            } else if header == profile_header(CountingMode::Regular, labelled) {
                CountingMode::Regular
            } else {
                return Err(IoError::format(path, "header is not a profile header"));
            };
            let skip = 1 + labelled as usize;
            let mut out = Vec::new();
            for (i, rec) in r.records().enumerate() {
                let rec = rec.map_err(|e| csv_err(path, e))?;
                let line = i + 2;
                let nums: Vec<f64> = rec
                    .iter()
                    .skip(skip)
                    .map(|v| v.parse::<f64>().map_err(|e| IoError::malformed(path, line, format!("`{v}`: {e}"))))
                    .collect::<Result<_, _>>()?;
                let values = match mode {
                    CountingMode::Binary => ProfileValues::Binary(nums),
                    CountingMode::Regular => ProfileValues::Regular(
                        nums.chunks(4).map(|c| FeatureStats { mean: c[0], min: c[1], max: c[2], std: c[3] }).collect(),
                    ),
                };
                let label = labelled.then(|| rec[1].to_string()).filter(|l| !l.is_empty());
                out.push(StyleProfile {
                    doc_id: rec[0].to_string(),
                    label,
                    chunk_size: 0,
                    n_tokens: 0,
                    n_chunks: 0,
                    values,
                });
            }
            Ok(out)
        }
    }
}

/// Read a document × feature CSV: `doc_id`, optional `label`, then value
/// columns. Regular-mode profile files (`CODE_mean`, `CODE_min`, ...) are
/// reduced to the chosen statistic under plain feature-code column names.
pub fn read_matrix(path: &Path, stat: Stat) -> Result<FeatureMatrix, IoError> {
    let f = File::open(path).map_err(|e| IoError::io(path, e))?;
    let mut r = csv::Reader::from_reader(f);
    let header: Vec<String> = r.headers().map_err(|e| csv_err(path, e))?.iter().map(String::from).collect();
    if header.first().map(String::as_str) != Some("doc_id") {
        return Err(IoError::format(path, "first column must be `doc_id`"));
    }
    let labelled = header.get(1).is_some_and(|h| h == "label");
    let skip = 1 + labelled as usize;
    let names = &header[skip..];
    let regular = header == profile_header(CountingMode::Regular, labelled);
    let (columns, pick): (Vec<String>, Vec<usize>) = if regular {
        let offset = Stat::ALL.iter().position(|s| *s == stat).unwrap();
        (
            FeatureId::ALL.iter().map(|f| f.code().to_string()).collect(),
            (0..FEATURE_COUNT).map(|j| j * 4 + offset).collect(),
        )
    } else {
        (names.to_vec(), (0..names.len()).collect())
    };
    let (mut ids, mut labels, mut values) = (Vec::new(), Vec::new(), Vec::new());
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let line = i + 2;
        ids.push(rec[0].to_string());
        if labelled {
            labels.push(rec[1].to_string());
        }
        for &j in &pick {
            let v = &rec[skip + j];
            values.push(v.parse::<f64>().map_err(|e| IoError::malformed(path, line, format!("`{v}`: {e}")))?);
        }
    }
    FeatureMatrix::new(ids, labelled.then_some(labels), columns, values).map_err(|e| IoError::format(path, e))
}

/// Write a matrix in the layout [`read_matrix`] accepts.
pub fn write_matrix<W: Write>(m: &FeatureMatrix, out: W) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    let mut header = vec!["doc_id".to_string()];
    if m.labels().is_some() {
        header.push("label".into());
    }
    header.extend(m.columns().iter().cloned());
    w.write_record(&header)?;
    for i in 0..m.n_rows() {
        let mut row = vec![m.row_ids()[i].clone()];
        if let Some(l) = m.labels() {
            row.push(l[i].clone());
        }
        row.extend(m.row(i).iter().map(|v| fmt_f64(*v)));
        w.write_record(&row)?;
    }
    w.flush()
}

/// One line of the chunk-label export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelRecord {
    pub doc_id: String,
    pub chunk: usize,
    /// 96 characters of `0`/`1` in canonical feature order.
    pub labels: String,
}

impl LabelRecord {
    pub fn new(doc_id: impl Into<String>, chunk: usize, set: FeatureSet) -> LabelRecord {
        LabelRecord { doc_id: doc_id.into(), chunk, labels: set.to_bitstring() }
    }
}

pub fn write_labels<W: Write, I: IntoIterator<Item = LabelRecord>>(labels: I, mut out: W) -> std::io::Result<()> {
    for l in labels {
        serde_json::to_writer(&mut out, &l)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn read_labels(path: &Path) -> Result<Vec<LabelRecord>, IoError> {
    let f = File::open(path).map_err(|e| IoError::io(path, e))?;
    let mut out = Vec::new();
    for (i, l) in BufReader::new(f).lines().enumerate() {
        let l = l.map_err(|e| IoError::io(path, e))?;
        if l.trim().is_empty() {
            continue;
        }
        let rec: LabelRecord = serde_json::from_str(&l).map_err(|e| IoError::malformed(path, i + 1, e.to_string()))?;
        if FeatureSet::from_bitstring(&rec.labels).is_none() {
            return Err(IoError::malformed(path, i + 1, "labels must be 96 characters of 0/1"));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn write_scatter<W: Write>(records: &[ScatterRecord], components: (usize, usize), out: W) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "doc_id".to_string(),
        "label".to_string(),
        format!("PC{}", components.0 + 1),
        format!("PC{}", components.1 + 1),
    ])?;
    for r in records {
        w.write_record([r.doc_id.clone(), r.label.clone(), fmt_f64(r.score_a), fmt_f64(r.score_b)])?;
    }
    w.flush()
}

pub fn read_scatter(path: &Path) -> Result<Vec<ScatterRecord>, IoError> {
    let f = File::open(path).map_err(|e| IoError::io(path, e))?;
    let mut r = csv::Reader::from_reader(f);
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let num = |j: usize| {
            rec.get(j)
                .ok_or_else(|| IoError::malformed(path, i + 2, "missing column"))?
                .parse::<f64>()
                .map_err(|e| IoError::malformed(path, i + 2, e.to_string()))
        };
        out.push(ScatterRecord {
            doc_id: rec[0].to_string(),
            label: rec.get(1).unwrap_or_default().to_string(),
            score_a: num(2)?,
            score_b: num(3)?,
        });
    }
    Ok(out)
}

/// Loadings table: one row per input column, one column per component.
pub fn write_loadings<W: Write>(result: &PcaResult, out: W) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    let mut header = vec!["feature".to_string()];
    header.extend((1..=result.k).map(|c| format!("PC{c}")));
    w.write_record(&header)?;
    for (j, name) in result.columns.iter().enumerate() {
        let mut row = vec![name.clone()];
        row.extend((0..result.k).map(|c| fmt_f64(result.loading(j, c))));
        w.write_record(&row)?;
    }
    w.flush()
}

/// Explained-variance summary: component, eigenvalue, ratio, cumulative ratio.
pub fn write_variance<W: Write>(result: &PcaResult, out: W) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["component", "eigenvalue", "explained_ratio", "cumulative_ratio"])?;
    let mut cum = 0.0;
    for c in 0..result.k {
        cum += result.explained_ratio[c];
        w.write_record([
            format!("PC{}", c + 1),
            fmt_f64(result.explained_variance[c]),
            fmt_f64(result.explained_ratio[c]),
            fmt_f64(cum),
        ])?;
    }
    w.flush()
}

/// Write to a file path, mapping errors onto [`IoError`].
pub fn write_file(path: &Path, f: impl FnOnce(BufWriter<File>) -> std::io::Result<()>) -> Result<(), IoError> {
    f(create(path)?).map_err(|e| IoError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binary(id: &str, v: Vec<f64>, label: Option<&str>) -> StyleProfile {
        StyleProfile {
            doc_id: id.into(),
            label: label.map(String::from),
            chunk_size: 100,
            n_tokens: 500,
            n_chunks: 5,
            values: ProfileValues::Binary(v),
        }
    }

    fn regular(id: &str, v: &[f64]) -> StyleProfile {
        let stats = v.iter().map(|&m| FeatureStats { mean: m, min: m / 2.0, max: m * 3.0, std: m / 7.0 }).collect();
        StyleProfile { values: ProfileValues::Regular(stats), ..binary(id, vec![], None) }
    }

    fn csv_text(p: &[StyleProfile]) -> String {
        let mut buf = Vec::new();
        write_profiles(p, &mut buf, ProfileFormat::Csv, None).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn binary_csv_has_97_columns() {
        let text = csv_text(&[binary("d", vec![0.5; 96], None)]);
        let first = text.lines().next().unwrap();
        assert_eq!(first.split(',').count(), 97);
        assert!(first.starts_with("doc_id,VBD,PEAS"));
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn regular_csv_has_385_columns() {
        let text = csv_text(&[regular("d", &[1.0; 96])]);
        let mut lines = text.lines();
        let h = lines.next().unwrap();
        assert_eq!(h.split(',').count(), 385);
        assert!(h.starts_with("doc_id,VBD_mean,VBD_min,VBD_max,VBD_std,PEAS_mean"));
        assert_eq!(lines.next().unwrap().split(',').count(), 385);
    }

    #[test]
    fn empty_profile_list_is_header_only() {
        let text = csv_text(&[]);
        assert_eq!(text.lines().count(), 1);
        let mut buf = Vec::new();
        write_profiles(&[], &mut buf, ProfileFormat::Jsonl, None).unwrap();
        assert!(buf.is_empty());
    }

    #[test]
    fn labels_schema_and_empty_stream() {
        let mut buf = Vec::new();
        write_labels(Vec::new(), &mut buf).unwrap();
        assert!(buf.is_empty());
        let mut set = FeatureSet::EMPTY;
        set.insert(FeatureId::Pit);
        write_labels([LabelRecord::new("d", 3, set)], &mut buf).unwrap();
        let line = String::from_utf8(buf).unwrap();
        let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(v["chunk"], 3);
        let bits = v["labels"].as_str().unwrap();
        assert_eq!(bits.len(), 96);
        assert_eq!(bits.as_bytes()[FeatureId::Pit.index()], b'1');
        assert!(line.starts_with("{\"doc_id\":\"d\",\"chunk\":3,\"labels\":"));
    }

    #[test]
    fn matrix_from_regular_csv_takes_means() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let vals: Vec<f64> = (0..96).map(|i| i as f64).collect();
        write_file(&path, |w| write_profiles(&[regular("a", &vals), regular("b", &vals)], w, ProfileFormat::Csv, None)).unwrap();
        let m = read_matrix(&path, Stat::Mean).unwrap();
        assert!(m.is_canonical());
        assert_eq!(m.get(1, 10), 10.0);
        let m = read_matrix(&path, Stat::Max).unwrap();
        assert_eq!(m.get(0, 10), 30.0);
    }

    #[test]
    fn malformed_matrix_value_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        std::fs::write(&path, "doc_id,x\na,1\nb,zz\n").unwrap();
        assert!(matches!(read_matrix(&path, Stat::Mean), Err(IoError::MalformedRecord { line: 3, .. })));
    }

    proptest! {
        #[test]
        fn profile_round_trip(
            vals in prop::collection::vec((prop::num::f64::NORMAL | prop::num::f64::ZERO).prop_filter("finite stats", |v| v.abs() < 1e300), 96),
            reg in any::<bool>(),
            label in prop::option::of("[a-z ,\"]{1,8}"),
        ) {
            let p = if reg { regular("doc,1", &vals) } else { binary("doc\"2", vals.clone(), label.as_deref()) };
            let dir = tempfile::tempdir().unwrap();
            for fmt in [ProfileFormat::Csv, ProfileFormat::Jsonl] {
                let path = dir.path().join(format!("p.{fmt}"));
                write_file(&path, |w| write_profiles(std::slice::from_ref(&p), w, fmt, None)).unwrap();
                let back = read_profiles(&path, fmt).unwrap();
                prop_assert_eq!(back.len(), 1);
                prop_assert_eq!(&back[0].values, &p.values);
                prop_assert_eq!(&back[0].doc_id, &p.doc_id);
                prop_assert_eq!(&back[0].label, &p.label);
                if fmt == ProfileFormat::Jsonl {
                    prop_assert_eq!(&back[0], &p);
                }
            }
        }

        #[test]
        fn writers_are_deterministic(vals in prop::collection::vec(0.0f64..1.0, 96)) {
            let ps = vec![binary("a", vals.clone(), Some("x")), binary("b", vals, None)];
            prop_assert_eq!(csv_text(&ps), csv_text(&ps));
        }

        #[test]
        fn scatter_round_trip(rows in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 0..10)) {
            let recs: Vec<ScatterRecord> = rows
                .iter()
                .enumerate()
                .map(|(i, (a, b))| ScatterRecord { doc_id: format!("d{i}"), label: "x,y".into(), score_a: *a, score_b: *b })
                .collect();
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("s.csv");
            write_file(&path, |w| write_scatter(&recs, (0, 1), w)).unwrap();
            prop_assert_eq!(read_scatter(&path).unwrap(), recs);
        }
    }
}
