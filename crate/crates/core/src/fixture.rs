//! Published-results fixtures and their consistency check.
//!
//! The shipped fixture records, per alternative, the separations S+ and S-,
//! the closeness coefficient, the MOORA score, and both published rank
//! columns. `check_fixture` re-derives what can be re-derived: Ci from the
//! separations, and both rank columns from their score columns. It reports
//! rather than errors, so corrupted fixtures produce a failing summary, not
//! a crash.
//!
//! Ranks are re-derived with this crate's ascending-index tie rule. When
//! several rows share a bit-identical score the published source may have
//! ordered that group differently, so within such a group the published
//! ranks only need to be the same set of ranks; the reordering is surfaced
//! as a tie note, not a failure.

use crate::io::{IoError, IoResult};
use crate::model::assign_ranks;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Published Ci values carry about five decimals, so re-derivation from S+
/// and S- must agree to this absolute tolerance.
pub const CI_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureRow {
    pub label: String,
    pub s_plus: f64,
    pub s_minus: f64,
    pub ci: f64,
    pub topsis_rank: usize,
    pub moora_score: f64,
    pub moora_rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table3Fixture {
    pub rows: Vec<FixtureRow>,
}

const FIXTURE_HEADER: &str = "label,s_plus,s_minus,ci,topsis_rank,moora_score,moora_rank";

impl Table3Fixture {
    /// Parses a fixture CSV. Labels must run A1, A2, ... in file order.
    pub fn load(path: &Path) -> IoResult<Table3Fixture> {
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
        let got = headers.iter().collect::<Vec<_>>().join(",");
        if got != FIXTURE_HEADER {
            return Err(IoError::HeaderMismatch {
                path: path.to_path_buf(),
                expected: FIXTURE_HEADER.to_string(),
                got,
            });
        }
        let mut rows = Vec::new();
        for (index, record) in reader.records().enumerate() {
            let line = index + 2;
            let parse_err = |column: usize, message: String| IoError::Parse {
                path: path.to_path_buf(),
                line,
                column,
                message,
            };
            let record =
                record.map_err(|e| parse_err(1, e.to_string()))?;
            if record.len() != 7 {
                return Err(parse_err(
                    record.len(),
                    format!("expected 7 fields, got {}", record.len()),
                ));
            }
            let label = record[0].to_string();
            let expected_label = format!("A{}", index + 1);
            if label != expected_label {
                return Err(parse_err(
                    1,
                    format!("expected label {:?}, got {:?}", expected_label, label),
                ));
            }
            let real = |col: usize| -> IoResult<f64> {
                let cell = &record[col];
                let v: f64 = cell
                    .parse()
                    .map_err(|_| parse_err(col + 1, format!("{:?} is not a number", cell)))?;
                if !v.is_finite() {
                    return Err(parse_err(col + 1, format!("{:?} is not finite", cell)));
                }
                Ok(v)
            };
            let rank = |col: usize| -> IoResult<usize> {
                let cell = &record[col];
                let v: usize = cell
                    .parse()
                    .map_err(|_| parse_err(col + 1, format!("{:?} is not a rank", cell)))?;
                if v == 0 {
                    return Err(parse_err(col + 1, "ranks start at 1".to_string()));
                }
                Ok(v)
            };
            rows.push(FixtureRow {
                label,
                s_plus: real(1)?,
                s_minus: real(2)?,
                ci: real(3)?,
                topsis_rank: rank(4)?,
                moora_score: real(5)?,
                moora_rank: rank(6)?,
            });
        }
        if rows.len() < 2 {
            return Err(IoError::Parse {
                path: path.to_path_buf(),
                line: rows.len() + 1,
                column: 1,
                message: "fixture needs at least 2 rows".to_string(),
            });
        }
        Ok(Table3Fixture { rows })
    }
}

/// One inconsistent row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowIssue {
    pub label: String,
    pub detail: String,
}

/// Outcome of `check_fixture`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureCheck {
    pub rows: usize,
    pub max_ci_deviation: f64,
    pub ci_failures: Vec<RowIssue>,
    pub topsis_rank_mismatches: Vec<RowIssue>,
    pub moora_rank_mismatches: Vec<RowIssue>,
    pub tie_notes: Vec<String>,
    pub pass: bool,
}

impl FixtureCheck {
    /// Rows free of any ci or rank issue.
    pub fn consistent_rows(&self) -> usize {
        let mut bad: Vec<&str> = self
            .ci_failures
            .iter()
            .chain(&self.topsis_rank_mismatches)
            .chain(&self.moora_rank_mismatches)
            .map(|issue| issue.label.as_str())
            .collect();
        bad.sort_unstable();
        bad.dedup();
        self.rows - bad.len()
    }

    /// Human-readable multi-line summary ending in "<k>/<n> rows
    /// consistent".
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rows: {}", self.rows);
        let _ = writeln!(
            out,
            "max |ci - s_minus/(s_plus+s_minus)|: {:.6} (tolerance {:.6})",
            self.max_ci_deviation, CI_TOLERANCE
        );
        let mut section = |title: &str, issues: &[RowIssue]| {
            if issues.is_empty() {
                let _ = writeln!(out, "{title}: none");
            } else {
                let _ = writeln!(out, "{title}:");
                for issue in issues {
                    let _ = writeln!(out, "  {}: {}", issue.label, issue.detail);
                }
            }
        };
        section("ci failures", &self.ci_failures);
        section("topsis rank mismatches", &self.topsis_rank_mismatches);
        section("moora rank mismatches", &self.moora_rank_mismatches);
        for note in &self.tie_notes {
            let _ = writeln!(out, "tie note: {note}");
        }
        let _ = writeln!(out, "{}/{} rows consistent", self.consistent_rows(), self.rows);
        out
    }
}

/// Compares a published rank column against ranks re-derived from its score
/// column, treating bit-equal score groups as unordered.
fn check_rank_column(
    scores: &[f64],
    published: &[usize],
    labels: &[String],
    column: &str,
    mismatches: &mut Vec<RowIssue>,
    tie_notes: &mut Vec<String>,
) {
    let derived = match assign_ranks(scores) {
        Ok(d) => d,
        Err(_) => {
            // non-finite scores are caught at parse time; defensive only
            return;
        }
    };
    let m = scores.len();
    let mut seen = vec![false; m];
    for i in 0..m {
        if seen[i] {
            continue;
        }
        let group: Vec<usize> = (0..m)
            .filter(|&j| scores[j].to_bits() == scores[i].to_bits())
            .collect();
        for &j in &group {
            seen[j] = true;
        }
        if group.len() == 1 {
            if published[i] != derived[i] {
                mismatches.push(RowIssue {
                    label: labels[i].clone(),
                    detail: format!(
                        "published {} rank {}, re-derived {}",
                        column, published[i], derived[i]
                    ),
                });
            }
            continue;
        }
        let mut pub_ranks: Vec<usize> = group.iter().map(|&j| published[j]).collect();
        let mut der_ranks: Vec<usize> = group.iter().map(|&j| derived[j]).collect();
        pub_ranks.sort_unstable();
        der_ranks.sort_unstable();
        if pub_ranks != der_ranks {
            for &j in &group {
                if published[j] != derived[j] {
                    mismatches.push(RowIssue {
                        label: labels[j].clone(),
                        detail: format!(
                            "published {} rank {} outside tied group ranks {:?}",
                            column, published[j], der_ranks
                        ),
                    });
                }
            }
        } else if group.iter().any(|&j| published[j] != derived[j]) {
            let names: Vec<&str> = group.iter().map(|&j| labels[j].as_str()).collect();
            tie_notes.push(format!(
                "{} share {} score {}; published ranks {:?} permute the index tie-break",
                names.join(", "),
                column,
                scores[group[0]],
                pub_ranks
            ));
        }
    }
}

/// Re-derives Ci and both rank columns; passes iff every Ci deviation is
/// within `CI_TOLERANCE` and every rank matches up to tied-group order.
pub fn check_fixture(fixture: &Table3Fixture) -> FixtureCheck {
    let rows = &fixture.rows;
    let labels: Vec<String> = rows.iter().map(|r| r.label.clone()).collect();

    let mut max_ci_deviation: f64 = 0.0;
    let mut ci_failures = Vec::new();
    for row in rows {
        let denom = row.s_plus + row.s_minus;
        let derived = if denom == 0.0 { 0.5 } else { row.s_minus / denom };
        let deviation = (row.ci - derived).abs();
        max_ci_deviation = max_ci_deviation.max(deviation);
        if deviation > CI_TOLERANCE {
            ci_failures.push(RowIssue {
                label: row.label.clone(),
                detail: format!(
                    "ci {} but s_minus/(s_plus+s_minus) = {:.6} (deviation {:.6})",
                    row.ci, derived, deviation
                ),
            });
        }
    }

    let mut topsis_rank_mismatches = Vec::new();
    let mut moora_rank_mismatches = Vec::new();
    let mut tie_notes = Vec::new();
    let ci_col: Vec<f64> = rows.iter().map(|r| r.ci).collect();
    let topsis_pub: Vec<usize> = rows.iter().map(|r| r.topsis_rank).collect();
    check_rank_column(
        &ci_col,
        &topsis_pub,
        &labels,
        "topsis",
        &mut topsis_rank_mismatches,
        &mut tie_notes,
    );
    let moora_col: Vec<f64> = rows.iter().map(|r| r.moora_score).collect();
    let moora_pub: Vec<usize> = rows.iter().map(|r| r.moora_rank).collect();
    check_rank_column(
        &moora_col,
        &moora_pub,
        &labels,
        "moora",
        &mut moora_rank_mismatches,
        &mut tie_notes,
    );

    let pass = ci_failures.is_empty()
        && topsis_rank_mismatches.is_empty()
        && moora_rank_mismatches.is_empty();
    FixtureCheck {
        rows: rows.len(),
        max_ci_deviation,
        ci_failures,
        topsis_rank_mismatches,
        moora_rank_mismatches,
        tie_notes,
        pass,
    }
}

/// The published two-column weight table shipped next to the fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct PublishedWeights {
    pub attributes: Vec<String>,
    pub stddev: Vec<f64>,
    pub entropy: Vec<f64>,
}

impl PublishedWeights {
    pub fn load(path: &Path) -> IoResult<PublishedWeights> {
        let file = fs::File::open(path).map_err(|source| IoError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(file);
        let headers = reader.headers().map_err(|e| IoError::Parse {
            path: path.to_path_buf(),
            line: 1,
            column: 1,
            message: e.to_string(),
        })?;
        let got = headers.iter().collect::<Vec<_>>().join(",");
        let expected = "attribute,stddev_weight,entropy_weight";
        if got != expected {
            return Err(IoError::HeaderMismatch {
                path: path.to_path_buf(),
                expected: expected.to_string(),
                got,
            });
        }
        let mut attributes = Vec::new();
        let mut stddev = Vec::new();
        let mut entropy = Vec::new();
        for (index, record) in reader.records().enumerate() {
            let line = index + 2;
            let record = record.map_err(|e| IoError::Parse {
                path: path.to_path_buf(),
                line,
                column: 1,
                message: e.to_string(),
            })?;
            attributes.push(record[0].to_string());
            for (col, target) in [(1, &mut stddev), (2, &mut entropy)] {
                let cell = &record[col];
                let v: f64 = cell.parse().map_err(|_| IoError::Parse {
                    path: path.to_path_buf(),
                    line,
                    column: col + 1,
                    message: format!("{:?} is not a number", cell),
                })?;
                target.push(v);
            }
        }
        Ok(PublishedWeights {
            attributes,
            stddev,
            entropy,
        })
    }
}
