//! LETOR / SVMLight ranking data: `<label> qid:<id> <idx>:<value> ... [# comment]`.
//!
//! Feature indices are 1-based on disk and 0-based in the dense matrices.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use ndarray::{Array2, ArrayView1, Axis};

use crate::error::{Error, Result};

/// Relevance grade ceiling of MSLR-WEB10K (grades 0..=4).
pub const MSLR_MAX_GRADE: u32 = 4;
/// Feature dimension of MSLR-WEB10K.
pub const MSLR_FEATURE_COUNT: usize = 136;

/// One parsed line, before densification.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentRecord {
    pub label: u32,
    pub query_id: String,
    /// `(1-based index, value)` pairs in the order they appeared.
    pub features: Vec<(usize, f64)>,
    pub comment: Option<String>,
}

impl DocumentRecord {
    pub fn dense(&self, feature_count: usize) -> Vec<f64> {
        let mut row = vec![0.0; feature_count];
        for &(idx, v) in &self.features {
            row[idx - 1] = v;
        }
        row
    }
}

/// All judged documents of a single query.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryGroup {
    pub query_id: String,
    /// `n x d`, one row per document.
    pub features: Array2<f64>,
    pub labels: Vec<u32>,
}

impl QueryGroup {
    pub fn new(query_id: impl Into<String>, features: Array2<f64>, labels: Vec<u32>) -> Result<Self> {
        let query_id = query_id.into();
        if labels.is_empty() {
            return Err(Error::InvalidDataset(format!("query {query_id} has no documents")));
        }
        if features.nrows() != labels.len() {
            return Err(Error::InvalidDataset(format!(
                "query {query_id}: {} feature rows but {} labels",
                features.nrows(),
                labels.len()
            )));
        }
        Ok(QueryGroup { query_id, features, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Whether a list-wise loss on this query carries any preference signal.
    pub fn is_trainable(&self) -> bool {
        self.len() >= 2 && self.labels.iter().any(|&y| y != 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub groups: Vec<QueryGroup>,
    pub feature_count: usize,
    pub max_grade: u32,
}

impl Dataset {
    pub fn new(groups: Vec<QueryGroup>, feature_count: usize, max_grade: u32) -> Result<Self> {
        if feature_count == 0 {
            return Err(Error::InvalidDataset("feature_count must be positive".into()));
        }
        let mut seen = HashMap::with_capacity(groups.len());
        for g in &groups {
            if g.features.ncols() != feature_count {
                return Err(Error::InvalidDataset(format!(
                    "query {} has {} features, expected {feature_count}",
                    g.query_id,
                    g.features.ncols()
                )));
            }
            if let Some(&y) = g.labels.iter().find(|&&y| y > max_grade) {
                return Err(Error::InvalidDataset(format!(
                    "query {} has label {y} above max grade {max_grade}",
                    g.query_id
                )));
            }
            if seen.insert(g.query_id.as_str(), ()).is_some() {
                return Err(Error::InvalidDataset(format!("duplicate query id {}", g.query_id)));
            }
        }
        Ok(Dataset { groups, feature_count, max_grade })
    }

    pub fn document_count(&self) -> usize {
        self.groups.iter().map(QueryGroup::len).sum()
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// First `count` queries, in file order.
    pub fn truncated(&self, count: usize) -> Dataset {
        Dataset {
            groups: self.groups.iter().take(count).cloned().collect(),
            feature_count: self.feature_count,
            max_grade: self.max_grade,
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses one line. Blank lines and lines holding only a comment yield `None`.
pub fn parse_record(
    text: &str,
    line_no: usize,
    feature_count: usize,
    max_grade: u32,
) -> Result<Option<DocumentRecord>> {
    let (body, comment) = match text.find('#') {
        Some(pos) => (&text[..pos], Some(text[pos + 1..].trim().to_string())),
        None => (text, None),
    };
    let mut tokens = body.split_whitespace();
    let Some(label_tok) = tokens.next() else {
        return Ok(None);
    };
    let label: i64 = label_tok
        .parse()
        .map_err(|_| parse_error(line_no, format!("invalid label {label_tok:?}")))?;
    if label < 0 || label > i64::from(max_grade) {
        return Err(parse_error(
            line_no,
            format!("label {label} out of range [0, {max_grade}]"),
        ));
    }

    let qid_tok = tokens
        .next()
        .ok_or_else(|| parse_error(line_no, "missing qid"))?;
    let query_id = qid_tok
        .strip_prefix("qid:")
        .filter(|q| !q.is_empty())
        .ok_or_else(|| parse_error(line_no, format!("expected qid:<id>, found {qid_tok:?}")))?
        .to_string();

    let mut features = Vec::new();
    let mut present = vec![false; feature_count];
    for tok in tokens {
        let (idx, val) = tok
            .split_once(':')
            .ok_or_else(|| parse_error(line_no, format!("malformed feature {tok:?}")))?;
        let idx: usize = idx
            .parse()
            .map_err(|_| parse_error(line_no, format!("invalid feature index in {tok:?}")))?;
        let val: f64 = val
            .parse()
            .map_err(|_| parse_error(line_no, format!("invalid feature value in {tok:?}")))?;
        if idx == 0 {
            return Err(parse_error(line_no, "feature indices start at 1"));
        }
        if idx > feature_count {
            return Err(parse_error(
                line_no,
                format!("feature index {idx} exceeds feature count {feature_count}"),
            ));
        }
        if !val.is_finite() {
            return Err(parse_error(line_no, format!("non-finite value for feature {idx}")));
        }
        if std::mem::replace(&mut present[idx - 1], true) {
            return Err(parse_error(line_no, format!("duplicate feature index {idx}")));
        }
        features.push((idx, val));
    }

    Ok(Some(DocumentRecord { label: label as u32, query_id, features, comment }))
}

struct GroupBuilder {
    query_id: String,
    rows: Vec<f64>,
    labels: Vec<u32>,
}

/// Streams a LETOR file into a [`Dataset`], grouping lines by query id.
///
/// Groups appear in order of each query id's first occurrence; documents keep
/// their file order within a group.
pub fn parse_letor<R: BufRead>(mut source: R, feature_count: usize, max_grade: u32) -> Result<Dataset> {
    if feature_count == 0 {
        return Err(Error::InvalidDataset("feature_count must be positive".into()));
    }
    let mut builders: Vec<GroupBuilder> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut line = String::new();
    let mut line_no = 0;
    loop {
        line.clear();
        if source.read_line(&mut line)? == 0 {
            break;
        }
        line_no += 1;
        let Some(record) = parse_record(&line, line_no, feature_count, max_grade)? else {
            continue;
        };
        let slot = match index.get(&record.query_id) {
            Some(&i) => i,
            None => {
                index.insert(record.query_id.clone(), builders.len());
                builders.push(GroupBuilder {
                    query_id: record.query_id.clone(),
                    rows: Vec::new(),
                    labels: Vec::new(),
                });
                builders.len() - 1
            }
        };
        let b = &mut builders[slot];
        let start = b.rows.len();
        b.rows.resize(start + feature_count, 0.0);
        for &(idx, v) in &record.features {
            b.rows[start + idx - 1] = v;
        }
        b.labels.push(record.label);
    }

    let groups = builders
        .into_iter()
        .map(|b| {
            let n = b.labels.len();
            let features = Array2::from_shape_vec((n, feature_count), b.rows)
                .expect("row buffer sized by construction");
            QueryGroup { query_id: b.query_id, features, labels: b.labels }
        })
        .collect();
    Ok(Dataset { groups, feature_count, max_grade })
}

pub fn load_letor(path: impl AsRef<Path>, feature_count: usize, max_grade: u32) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_letor(BufReader::new(file), feature_count, max_grade)
        .map_err(|e| Error::File { path: path.to_path_buf(), source: Box::new(e) })
}

/// Writes one line per document with nonzero features in ascending index order.
pub fn write_letor<W: Write>(dataset: &Dataset, mut out: W) -> Result<()> {
    for g in &dataset.groups {
        for (row, &label) in g.features.outer_iter().zip(&g.labels) {
            write!(out, "{label} qid:{}", g.query_id)?;
            for (j, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    write!(out, " {}:{}", j + 1, v)?;
                }
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

fn min_max_column(col: ArrayView1<f64>) -> (f64, f64) {
    col.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Per-query, per-column min-max scaling to `[0, 1]`; zero-range columns become 0.
pub fn normalize_features(dataset: &Dataset) -> Dataset {
    let groups = dataset
        .groups
        .iter()
        .map(|g| {
            let mut features = g.features.clone();
            for mut col in features.axis_iter_mut(Axis(1)) {
                let (lo, hi) = min_max_column(col.view());
                let range = hi - lo;
                if range > 0.0 {
                    col.mapv_inplace(|v| (v - lo) / range);
                } else {
                    col.fill(0.0);
                }
            }
            QueryGroup { query_id: g.query_id.clone(), features, labels: g.labels.clone() }
        })
        .collect();
    Dataset { groups, feature_count: dataset.feature_count, max_grade: dataset.max_grade }
}

/// Drops queries with fewer than two documents or no positive label.
/// Returns the filtered copy and the number of removed queries.
pub fn filter_trainable(dataset: &Dataset) -> (Dataset, usize) {
    let groups: Vec<QueryGroup> =
        dataset.groups.iter().filter(|g| g.is_trainable()).cloned().collect();
    let removed = dataset.groups.len() - groups.len();
    (
        Dataset { groups, feature_count: dataset.feature_count, max_grade: dataset.max_grade },
        removed,
    )
}
