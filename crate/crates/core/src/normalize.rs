//! The three column-wise normalization schemes the pipeline needs.
//!
//! Vector normalization feeds TOPSIS and MOORA, sum proportions feed the
//! entropy weighting, and the direction-aware min-max feeds the
//! standard-deviation weighting. All three are pure matrix-to-matrix
//! transforms over an already-validated [`DecisionProblem`].

use crate::model::{DecisionProblem, Direction};

/// Which transform produced a [`NormalizedMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormScheme {
    /// r_ij = x_ij / sqrt(sum_i x_ij^2); each column has Euclidean norm 1.
    VectorNorm,
    /// p_ij = x_ij / sum_i x_ij; each column sums to 1.
    SumProportion,
    /// Benefit: (x - min) / (max - min); cost: (max - x) / (max - min);
    /// constant columns map to all zeros.
    MinMaxDirected,
}

/// An m x n matrix produced by one of the normalization schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMatrix {
    values: Vec<f64>, // row-major
    rows: usize,
    cols: usize,
    scheme: NormScheme,
}

impl NormalizedMatrix {
    pub fn scheme(&self) -> NormScheme {
        self.scheme
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = f64> + '_ {
        self.values[col..].iter().step_by(self.cols).copied()
    }

    fn from_columns(problem: &DecisionProblem, scheme: NormScheme, cols: Vec<Vec<f64>>) -> Self {
        let m = problem.alternatives_len();
        let n = problem.criteria_len();
        let mut values = vec![0.0; m * n];
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                values[i * n + j] = v;
            }
        }
        NormalizedMatrix {
            values,
            rows: m,
            cols: n,
            scheme,
        }
    }
}

/// Divides every column by its Euclidean norm. Direction-agnostic: benefit
/// and cost are applied later, at ideal selection.
pub fn vector_normalize(problem: &DecisionProblem) -> NormalizedMatrix {
    let cols = (0..problem.criteria_len())
        .map(|j| {
            let norm = problem
                .column(j)
                .map(|x| x * x)
                .sum::<f64>()
                .sqrt();
            problem.column(j).map(|x| x / norm).collect()
        })
        .collect();
    NormalizedMatrix::from_columns(problem, NormScheme::VectorNorm, cols)
}

/// Divides every column by its sum, turning it into a discrete distribution.
pub fn sum_proportion(problem: &DecisionProblem) -> NormalizedMatrix {
    let cols = (0..problem.criteria_len())
        .map(|j| {
            let sum: f64 = problem.column(j).sum();
            problem.column(j).map(|x| x / sum).collect()
        })
        .collect();
    NormalizedMatrix::from_columns(problem, NormScheme::SumProportion, cols)
}

/// Direction-aware min-max: the best value of a column maps to 1 and the
/// worst to 0, where "best" is the maximum for benefit criteria and the
/// minimum for cost criteria. A constant column maps to all zeros, so an
/// uninformative criterion ends up carrying no dispersion.
pub fn minmax_directed(problem: &DecisionProblem) -> NormalizedMatrix {
    let cols = (0..problem.criteria_len())
        .map(|j| {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for x in problem.column(j) {
                min = min.min(x);
                max = max.max(x);
            }
            let range = max - min;
            if range == 0.0 {
                return vec![0.0; problem.alternatives_len()];
            }
            let direction = problem.criteria()[j].direction;
            problem
                .column(j)
                .map(|x| match direction {
                    Direction::Benefit => (x - min) / range,
                    Direction::Cost => (max - x) / range,
                })
                .collect()
        })
        .collect();
    NormalizedMatrix::from_columns(problem, NormScheme::MinMaxDirected, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Criterion, DecisionProblem, Direction};
    use approx::assert_abs_diff_eq;

    fn problem(cols: Vec<(Direction, Vec<f64>)>) -> DecisionProblem {
        let m = cols[0].1.len();
        let criteria = cols
            .iter()
            .enumerate()
            .map(|(j, (d, _))| Criterion::new(format!("c{j}"), *d))
            .collect();
        let alternatives = (0..m).map(|i| format!("a{i}")).collect();
        let matrix = (0..m)
            .map(|i| cols.iter().map(|(_, v)| v[i]).collect())
            .collect();
        DecisionProblem::new(criteria, alternatives, matrix).unwrap()
    }

    #[test]
    fn vector_norm_three_four_five() {
        let p = problem(vec![(Direction::Benefit, vec![3.0, 4.0])]);
        let r = vector_normalize(&p);
        assert_abs_diff_eq!(r.value(0, 0), 0.6);
        assert_abs_diff_eq!(r.value(1, 0), 0.8);
    }

    #[test]
    fn vector_norm_sqrt14_column() {
        // oracle: direct division by sqrt(14)
        let p = problem(vec![(Direction::Benefit, vec![1.0, 2.0, 3.0])]);
        let r = vector_normalize(&p);
        assert_abs_diff_eq!(r.value(0, 0), 0.2672612419124244, epsilon = 1e-12);
        assert_abs_diff_eq!(r.value(1, 0), 0.5345224838248488, epsilon = 1e-12);
        assert_abs_diff_eq!(r.value(2, 0), 0.8017837257372732, epsilon = 1e-12);
    }

    #[test]
    fn vector_norm_scale_invariant() {
        let p = problem(vec![(Direction::Benefit, vec![1.0, 2.0, 3.0])]);
        let q = problem(vec![(Direction::Benefit, vec![7.0, 14.0, 21.0])]);
        let (rp, rq) = (vector_normalize(&p), vector_normalize(&q));
        for i in 0..3 {
            assert_abs_diff_eq!(rp.value(i, 0), rq.value(i, 0), epsilon = 1e-15);
        }
    }

    #[test]
    fn unit_column_norms() {
        let p = problem(vec![
            (Direction::Benefit, vec![1.0, 2.0, 3.0]),
            (Direction::Cost, vec![0.5, 9.0, 2.5]),
        ]);
        let r = vector_normalize(&p);
        for j in 0..2 {
            let norm: f64 = r.column(j).map(|x| x * x).sum::<f64>().sqrt();
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn sum_proportion_columns() {
        let p = problem(vec![(Direction::Benefit, vec![1.0, 2.0, 3.0])]);
        let r = sum_proportion(&p);
        assert_abs_diff_eq!(r.value(0, 0), 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.value(1, 0), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.value(2, 0), 0.5, epsilon = 1e-15);

        let u = sum_proportion(&problem(vec![(Direction::Benefit, vec![4.0, 4.0, 4.0])]));
        for i in 0..3 {
            assert_abs_diff_eq!(u.value(i, 0), 1.0 / 3.0, epsilon = 1e-15);
        }

        let z = sum_proportion(&problem(vec![(Direction::Benefit, vec![0.0, 5.0])]));
        assert_eq!(z.value(0, 0), 0.0);
        assert_eq!(z.value(1, 0), 1.0);
    }

    #[test]
    fn minmax_directed_endpoints() {
        let p = problem(vec![
        (Direction::Benefit, vec![1.0, 2.0, 3.0]),
            (Direction::Cost, vec![1.0, 2.0, 3.0]),
        ]);
        let r = minmax_directed(&p);
        assert_eq!(
            (0..3).map(|i| r.value(i, 0)).collect::<Vec<_>>(),
            vec![0.0, 0.5, 1.0]
        );
        assert_eq!(
            (0..3).map(|i| r.value(i, 1)).collect::<Vec<_>>(),
            vec![1.0, 0.5, 0.0]
        );
    }

    #[test]
    fn minmax_constant_column_maps_to_zeros() {
        for d in [Direction::Benefit, Direction::Cost] {
            let p = problem(vec![(d, vec![4.0, 4.0, 4.0])]);
            let r = minmax_directed(&p);
            assert!((0..3).all(|i| r.value(i, 0) == 0.0));
        }
    }

    #[test]
    fn minmax_affine_invariant() {
        let p = problem(vec![(Direction::Cost, vec![1.0, 2.0, 3.0])]);
        let q = problem(vec![(Direction::Cost, vec![7.0, 9.0, 11.0])]); // 2x + 5
        let (rp, rq) = (minmax_directed(&p), minmax_directed(&q));
        for i in 0..3 {
            assert_abs_diff_eq!(rp.value(i, 0), rq.value(i, 0), epsilon = 1e-12);
        }
    }
}
