//! Domain types shared by every other module: criteria, decision problems,
//! weight vectors and rankings, plus the validation that guards their
//! invariants.
//!
//! Everything here is immutable after construction and free of interior
//! mutability, so values can be shared across threads freely. All operations
//! are pure functions of their inputs.

use thiserror::Error;

/// Largest tolerated deviation of a user-supplied weight sum from 1 before
/// construction refuses to renormalize. Published weight tables rounded to
/// six decimals drift by a few 1e-6, which must still load; anything beyond
/// this band is treated as a data error rather than rounding noise.
pub const WEIGHT_SUM_BAND: f64 = 1e-5;

/// Validation and computation errors for the whole crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimensions inconsistent: expected {expected_rows}x{expected_cols}, got row {row} with {got} entries")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        row: usize,
        got: usize,
    },
    #[error("negative entry {value} at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("non-finite entry at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("column {col} (\"{name}\") is entirely zero")]
    AllZeroColumn { col: usize, name: String },
    #[error("duplicate criterion name \"{name}\"")]
    DuplicateCriterionName { name: String },
    #[error("a decision problem needs at least 2 alternatives, got {got}")]
    TooFewAlternatives { got: usize },
    #[error("a decision problem needs at least 1 criterion")]
    NoCriteria,
    #[error("empty criterion name at column {col}")]
    EmptyCriterionName { col: usize },
    #[error("empty alternative label at row {row}")]
    EmptyAlternativeLabel { row: usize },
    #[error("negative fixed weight {value} on criterion \"{name}\"")]
    NegativeFixedWeight { name: String, value: f64 },
    #[error("non-finite score at index {index}")]
    NonFiniteScore { index: usize },
    #[error("weight vector sums to {sum}, outside the renormalization band of 1 +/- {band}")]
    WeightSumOutOfBand { sum: f64, band: f64 },
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("non-finite weight at index {index}")]
    NonFiniteWeight { index: usize },
    #[error("weight vector has {got} entries but the problem has {expected} criteria")]
    WeightDimensionMismatch { expected: usize, got: usize },
    #[error("criterion \"{name}\" (column {col}) has no fixed weight; the manual scheme needs one per criterion")]
    MissingFixedWeight { col: usize, name: String },
    #[error("all fixed weights are zero")]
    AllZeroWeights,
    #[error("rankings have different lengths: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("perturbation delta {value} outside [0, 1)")]
    InvalidDelta { value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Whether more of a criterion is better (benefit) or worse (cost).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Benefit,
    Cost,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Benefit => "benefit",
            Direction::Cost => "cost",
        }
    }
}

/// A named evaluation attribute: one column of the decision matrix.
///
/// `fixed_weight` is consumed only by the manual weighting scheme; the
/// objective schemes ignore it.
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub name: String,
    pub direction: Direction,
    pub fixed_weight: Option<f64>,
}

impl Criterion {
    pub fn new(name: impl Into<String>, direction: Direction) -> Self {
        Criterion {
            name: name.into(),
            direction,
            fixed_weight: None,
        }
    }

    pub fn with_weight(name: impl Into<String>, direction: Direction, weight: f64) -> Self {
        Criterion {
            name: name.into(),
            direction,
            fixed_weight: Some(weight),
        }
    }
}

/// A validated m x n decision space: m alternatives evaluated on n directed
/// criteria, all entries finite and non-negative, every column carrying at
/// least one strictly positive value (both sum- and vector-normalization
/// denominators need that), and m >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    criteria: Vec<Criterion>,
    alternatives: Vec<String>,
    values: Vec<f64>, // row-major m x n
}

impl DecisionProblem {
    /// Validation gateway for the decision space. `matrix[i][j]` is the
    /// performance of alternative `i` on criterion `j`.
    pub fn new(
        criteria: Vec<Criterion>,
        alternatives: Vec<String>,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = criteria.len();
        let m = alternatives.len();
        if n == 0 {
            return Err(Error::NoCriteria);
        }
        if m < 2 {
            return Err(Error::TooFewAlternatives { got: m });
        }
        for (col, c) in criteria.iter().enumerate() {
            if c.name.trim().is_empty() {
                return Err(Error::EmptyCriterionName { col });
            }
            if let Some(w) = c.fixed_weight {
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::NegativeFixedWeight {
                        name: c.name.clone(),
                        value: w,
                    });
                }
            }
            if let Some(other) = criteria[..col].iter().find(|p| p.name == c.name) {
                return Err(Error::DuplicateCriterionName {
                    name: other.name.clone(),
                });
            }
        }
        for (row, label) in alternatives.iter().enumerate() {
            if label.trim().is_empty() {
                return Err(Error::EmptyAlternativeLabel { row });
            }
        }
        if matrix.len() != m {
            return Err(Error::DimensionMismatch {
                expected_rows: m,
                expected_cols: n,
                row: matrix.len(),
                got: 0,
            });
        }
        let mut values = Vec::with_capacity(m * n);
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected_rows: m,
                    expected_cols: n,
                    row,
                    got: r.len(),
                });
            }
            for (col, &x) in r.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFiniteEntry { row, col });
                }
                if x < 0.0 {
                    return Err(Error::NegativeEntry { row, col, value: x });
                }
                values.push(x);
            }
        }
        for col in 0..n {
            if !(0..m).any(|row| values[row * n + col] > 0.0) {
                return Err(Error::AllZeroColumn {
                    col,
                    name: criteria[col].name.clone(),
                });
            }
        }
        Ok(DecisionProblem {
            criteria,
            alternatives,
            values,
        })
    }

    /// Number of alternatives (rows).
    pub fn alternatives_len(&self) -> usize {
        self.alternatives.len()
    }

    /// Number of criteria (columns).
    pub fn criteria_len(&self) -> usize {
        self.criteria.len()
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.criteria.len() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let n = self.criteria.len();
        &self.values[row * n..(row + 1) * n]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = f64> + '_ {
        let n = self.criteria.len();
        self.values[col..].iter().step_by(n).copied()
    }
}

/// Non-negative criterion weights summing to 1 (to within 1e-9).
///
/// `new` accepts vectors whose sum strays from 1 by at most
/// [`WEIGHT_SUM_BAND`] and renormalizes them; larger deviations are rejected
/// so data errors do not vanish silently. `proportional_to` renormalizes any
/// non-negative vector with a positive sum and is what the weighting schemes
/// use internally.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let sum = Self::checked_sum(&weights)?;
        if (sum - 1.0).abs() > WEIGHT_SUM_BAND {
            return Err(Error::WeightSumOutOfBand {
                sum,
                band: WEIGHT_SUM_BAND,
            });
        }
        Ok(Self::scaled(weights, sum))
    }

    /// Renormalizes an arbitrary non-negative vector to sum 1.
    pub fn proportional_to(weights: Vec<f64>) -> Result<Self> {
        let sum = Self::checked_sum(&weights)?;
        if sum <= 0.0 {
            return Err(Error::AllZeroWeights);
        }
        Ok(Self::scaled(weights, sum))
    }

    /// Equal weights 1/n.
    pub fn equal(n: usize) -> Self {
        WeightVector {
            weights: vec![1.0 / n as f64; n],
        }
    }

    fn checked_sum(weights: &[f64]) -> Result<f64> {
        let mut sum = 0.0;
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight { index });
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight { index, value: w });
            }
            sum += w;
        }
        Ok(sum)
    }

    fn scaled(mut weights: Vec<f64>, sum: f64) -> Self {
        for w in &mut weights {
            *w /= sum;
        }
        WeightVector { weights }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Ranking method identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    Topsis,
    Moora,
}

impl RankMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RankMethod::Topsis => "topsis",
            RankMethod::Moora => "moora",
        }
    }
}

/// Per-alternative separation distances from the positive and negative ideal
/// (populated for TOPSIS only).
#[derive(Debug, Clone, PartialEq)]
pub struct TopsisDiagnostics {
    pub s_plus: Vec<f64>,
    pub s_minus: Vec<f64>,
}

/// Scores plus deterministic ordinal ranks produced by one ranking method.
///
/// `ranks` is always the descending ordinal ranking of `scores` with ties
/// broken by ascending alternative index, hence a permutation of 1..=m.
/// `degenerate` is set when every alternative coincides after weighting and
/// the TOPSIS closeness coefficient falls back to 0.5.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub method: RankMethod,
    pub scores: Vec<f64>,
    pub ranks: Vec<usize>,
    pub diagnostics: Option<TopsisDiagnostics>,
    pub degenerate: bool,
}

impl Ranking {
    /// Index of the rank-1 alternative.
    pub fn top_index(&self) -> usize {
        self.ranks.iter().position(|&r| r == 1).expect("rank 1 present")
    }
}

/// Ordinal ranks for `scores` sorted descending: the highest score gets rank
/// 1; exactly equal scores are resolved by ascending index (the earlier
/// alternative gets the better rank), so the result is always a permutation
/// of 1..=m.
pub fn assign_ranks(scores: &[f64]) -> Result<Vec<usize>> {
    for (index, s) in scores.iter().enumerate() {
        if !s.is_finite() {
            return Err(Error::NonFiniteScore { index });
        }
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .expect("scores are finite")
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0usize; scores.len()];
    for (pos, &idx) in order.iter().enumerate() {
        ranks[idx] = pos + 1;
    }
    Ok(ranks)
}
