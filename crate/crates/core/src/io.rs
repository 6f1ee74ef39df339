//! Loading decision problems from disk and reading back emitted documents.
//!
//! A problem is two files: a matrix CSV whose first column is "alternative"
//! and a criteria config (TOML) naming each column in matrix order. Inputs
//! must use "." as the decimal separator; no locale handling. The grammar
//! for every format lives in docs/FORMATS.md.

use crate::model::{Criterion, DecisionProblem, Direction, Error};
use serde::Deserialize;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: header mismatch: expected {expected}, got {got}")]
    HeaderMismatch {
        path: PathBuf,
        expected: String,
        got: String,
    },
    #[error("{path}: {message}")]
    Toml { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Json { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        #[source]
        source: Error,
    },
}

pub type IoResult<T> = std::result::Result<T, IoError>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CriteriaFile {
    criterion: Vec<CriterionEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CriterionEntry {
    name: String,
    direction: String,
    weight: Option<f64>,
}

/// Reads the criteria config on its own; `load_problem` is the usual entry.
pub fn load_criteria(path: &Path) -> IoResult<Vec<Criterion>> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed: CriteriaFile = toml::from_str(&text).map_err(|e| IoError::Toml {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut criteria = Vec::with_capacity(parsed.criterion.len());
    for entry in parsed.criterion {
        let direction = match entry.direction.as_str() {
            "benefit" => Direction::Benefit,
            "cost" => Direction::Cost,
            other => {
                return Err(IoError::Toml {
                    path: path.to_path_buf(),
                    message: format!(
                        "criterion {:?}: direction must be \"benefit\" or \"cost\", got {:?}",
                        entry.name, other
                    ),
                })
            }
        };
        criteria.push(Criterion {
            name: entry.name,
            direction,
            fixed_weight: entry.weight,
        });
    }
    Ok(criteria)
}

/// Which input file a validation error should be blamed on.
fn blame_criteria_file(e: &Error) -> bool {
    matches!(
        e,
        Error::DuplicateCriterionName { .. }
            | Error::EmptyCriterionName { .. }
            | Error::NegativeFixedWeight { .. }
            | Error::NoCriteria
    )
}

struct ParsedMatrix {
    labels: Vec<String>,
    rows: Vec<Vec<f64>>,
}

fn parse_matrix(path: &Path, criteria: &[Criterion]) -> IoResult<ParsedMatrix> {
    let file = fs::File::open(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers = reader.headers().map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        line: 1,
        column: 1,
        message: e.to_string(),
    })?;
    let expected: Vec<&str> = std::iter::once("alternative")
        .chain(criteria.iter().map(|c| c.name.as_str()))
        .collect();
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(IoError::HeaderMismatch {
            path: path.to_path_buf(),
            expected: expected.join(","),
            got: got.join(","),
        });
    }

    let n = criteria.len();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        // header is line 1, first data record line 2
        let line = index + 2;
        let record = record.map_err(|e| IoError::Parse {
            path: path.to_path_buf(),
            line,
            column: 1,
            message: e.to_string(),
        })?;
        if record.len() != n + 1 {
            return Err(IoError::Parse {
                path: path.to_path_buf(),
                line,
                column: record.len(),
                message: format!("expected {} fields, got {}", n + 1, record.len()),
            });
        }
        labels.push(record[0].to_string());
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let cell = &record[j + 1];
            let value: f64 = cell.parse().map_err(|_| IoError::Parse {
                path: path.to_path_buf(),
                line,
                column: j + 2,
                message: format!("{:?} is not a number", cell),
            })?;
            if !value.is_finite() {
                return Err(IoError::Parse {
                    path: path.to_path_buf(),
                    line,
                    column: j + 2,
                    message: format!("{:?} is not finite", cell),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }
    Ok(ParsedMatrix { labels, rows })
}

/// Parses and validates both files into a `DecisionProblem`, preserving the
/// CSV's row order. Validation failures carry the path of the offending
/// file.
pub fn load_problem(matrix_path: &Path, criteria_path: &Path) -> IoResult<DecisionProblem> {
    let criteria = load_criteria(criteria_path)?;
    let matrix = parse_matrix(matrix_path, &criteria)?;
    DecisionProblem::new(criteria, matrix.labels, matrix.rows).map_err(|source| {
        let path = if blame_criteria_file(&source) {
            criteria_path
        } else {
            matrix_path
        };
        IoError::Invalid {
            path: path.to_path_buf(),
            source,
        }
    })
}

/// Writes the problem back out in the input formats. Matrix cells use the
/// shortest decimal that round-trips, so load(save(p)) reproduces every
/// value bit for bit.
pub fn save_problem(
    problem: &DecisionProblem,
    matrix_path: &Path,
    criteria_path: &Path,
) -> IoResult<()> {
    let mut writer = csv::WriterBuilder::new()
        .from_path(matrix_path)
        .map_err(|e| IoError::Write {
            path: matrix_path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        })?;
    let mut header = vec!["alternative".to_string()];
    header.extend(problem.criteria().iter().map(|c| c.name.clone()));
    writer.write_record(&header).map_err(|e| IoError::Write {
        path: matrix_path.to_path_buf(),
        source: std::io::Error::other(e.to_string()),
    })?;
    for i in 0..problem.alternatives_len() {
        let mut record = vec![problem.alternatives()[i].clone()];
        for v in problem.row(i) {
            record.push(format!("{}", v));
        }
        writer.write_record(&record).map_err(|e| IoError::Write {
            path: matrix_path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        })?;
    }
    writer.flush().map_err(|source| IoError::Write {
        path: matrix_path.to_path_buf(),
        source,
    })?;

    let mut toml_text = String::new();
    for c in problem.criteria() {
        let _ = writeln!(toml_text, "[[criterion]]");
        let _ = writeln!(toml_text, "name = {:?}", c.name);
        let _ = writeln!(toml_text, "direction = \"{}\"", c.direction.as_str());
        if let Some(w) = c.fixed_weight {
            let _ = writeln!(toml_text, "weight = {}", float_toml(w));
        }
        let _ = writeln!(toml_text);
    }
    fs::write(criteria_path, toml_text).map_err(|source| IoError::Write {
        path: criteria_path.to_path_buf(),
        source,
    })
}

/// TOML requires a decimal point or exponent on floats.
fn float_toml(v: f64) -> String {
    let s = format!("{}", v);
    if s.contains('.') || s.contains('e') || s.contains('E') {
        s
    } else {
        format!("{}.0", s)
    }
}

/// A weights document read back from disk (the output of the `weights`
/// subcommand). Field meanings are fixed by the format, not by any loaded
/// problem; callers must check `criteria` against their own.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct WeightsDoc {
    pub format_version: String,
    pub kind: String,
    pub method: String,
    pub criteria: Vec<String>,
    pub weights: Vec<f64>,
    #[serde(default)]
    pub fallback_equal: bool,
}

/// A ranking document read back from disk (the output of the `rank`
/// subcommand).
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct RankingDoc {
    pub format_version: String,
    pub kind: String,
    pub method: String,
    pub alternatives: Vec<String>,
    pub scores: Vec<f64>,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub degenerate: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, kind: &str) -> IoResult<T> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| IoError::Json {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
    let found_kind = value.get("kind").and_then(|k| k.as_str()).unwrap_or("");
    if found_kind != kind {
        return Err(IoError::Json {
            path: path.to_path_buf(),
            message: format!("expected a {:?} document, got kind {:?}", kind, found_kind),
        });
    }
    let version = value
        .get("format_version")
        .and_then(|k| k.as_str())
        .unwrap_or("");
    if version != "1" {
        return Err(IoError::Json {
            path: path.to_path_buf(),
            message: format!("unsupported format_version {:?}", version),
        });
    }
    serde_json::from_value(value).map_err(|e| IoError::Json {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_weights_doc(path: &Path) -> IoResult<WeightsDoc> {
    let doc: WeightsDoc = read_json(path, "weights")?;
    if doc.criteria.len() != doc.weights.len() {
        return Err(IoError::Json {
            path: path.to_path_buf(),
            message: format!(
                "{} criteria but {} weights",
                doc.criteria.len(),
                doc.weights.len()
            ),
        });
    }
    Ok(doc)
}

pub fn read_ranking_doc(path: &Path) -> IoResult<RankingDoc> {
    let doc: RankingDoc = read_json(path, "ranking")?;
    let m = doc.alternatives.len();
    if doc.scores.len() != m || doc.ranks.len() != m {
        return Err(IoError::Json {
            path: path.to_path_buf(),
            message: "alternatives, scores and ranks must have equal length".into(),
        });
    }
    Ok(doc)
}
