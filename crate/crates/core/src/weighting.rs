//! Objective criterion weighting: the entropy method and the
//! standard-deviation method, plus the manual and equal schemes.
//!
//! Both objective methods reward dispersion: a criterion that separates the
//! alternatives strongly receives a large weight, a uniform column receives
//! weight zero. Entropy works on direction-agnostic column proportions
//! (information content does not care about preference); the SD method works
//! on the direction-aware min-max normalization.

use crate::model::{DecisionProblem, Result, WeightVector};
use crate::normalize::{minmax_directed, sum_proportion};

/// Weighting scheme identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMethod {
    Entropy,
    StdDev,
    Manual,
    Equal,
}

impl WeightMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightMethod::Entropy => "entropy",
            WeightMethod::StdDev => "stddev",
            WeightMethod::Manual => "manual",
            WeightMethod::Equal => "equal",
        }
    }
}

/// Per-criterion intermediate values backing a weight vector.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightDetail {
    /// Shannon entropy e_j in [0, 1] and divergence d_j = 1 - e_j.
    Entropy { entropy: Vec<f64>, divergence: Vec<f64> },
    /// Population standard deviation of each min-max normalized column.
    StdDev { sigma: Vec<f64> },
    /// Manual and equal schemes carry no intermediates.
    None,
}

/// A computed weight vector together with how it was obtained.
///
/// `fallback` is set when every criterion turned out uninformative (all
/// divergences or deviations zero) and the method fell back to equal weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport {
    pub method: WeightMethod,
    pub weights: WeightVector,
    pub detail: WeightDetail,
    pub fallback: bool,
}

/// Shannon-entropy weighting.
///
/// With p = sum-proportion normalization and k = 1/ln m:
/// e_j = -k * sum_i p_ij ln p_ij (0 ln 0 taken as 0), d_j = 1 - e_j,
/// w_j = d_j / sum d_j. A column with bit-identical entries has p_ij = 1/m
/// exactly, so its entropy is pinned to exactly 1 rather than left to
/// floating-point noise. If every column is uniform the method degenerates
/// and equal weights are returned with `fallback` set.
pub fn entropy_weights(problem: &DecisionProblem) -> WeightReport {
    let m = problem.alternatives_len();
    let n = problem.criteria_len();
    let p = sum_proportion(problem);
    let k = 1.0 / (m as f64).ln();

    let mut entropy = Vec::with_capacity(n);
    let mut divergence = Vec::with_capacity(n);
    for j in 0..n {
        let e = if column_is_constant(problem, j) {
            1.0
        } else {
            let sum: f64 = p
                .column(j)
                .map(|pij| if pij > 0.0 { pij * pij.ln() } else { 0.0 })
                .sum();
            (-k * sum).clamp(0.0, 1.0)
        };
        entropy.push(e);
        divergence.push(1.0 - e);
    }

    let total: f64 = divergence.iter().sum();
    let (weights, fallback) = if total == 0.0 {
        (WeightVector::equal(n), true)
    } else {
        let w = WeightVector::proportional_to(divergence.clone())
            .expect("divergences are non-negative with positive sum");
        (w, false)
    };
    WeightReport {
        method: WeightMethod::Entropy,
        weights,
        detail: WeightDetail::Entropy { entropy, divergence },
        fallback,
    }
}

/// Standard-deviation weighting.
///
/// sigma_j is the population standard deviation (divide by m, not m - 1: the
/// alternatives are the whole decision space, not a sample) of column j of
/// the direction-aware min-max normalization; w_j = sigma_j / sum sigma_j.
/// If every column is constant, equal weights are returned with `fallback`
/// set.
pub fn stddev_weights(problem: &DecisionProblem) -> WeightReport {
    let m = problem.alternatives_len() as f64;
    let n = problem.criteria_len();
    let z = minmax_directed(problem);

    let sigma: Vec<f64> = (0..n)
        .map(|j| {
            let mean: f64 = z.column(j).sum::<f64>() / m;
            let var: f64 = z.column(j).map(|v| (v - mean) * (v - mean)).sum::<f64>() / m;
            var.sqrt()
        })
        .collect();

    let total: f64 = sigma.iter().sum();
    let (weights, fallback) = if total == 0.0 {
        (WeightVector::equal(n), true)
    } else {
        let w = WeightVector::proportional_to(sigma.clone())
            .expect("deviations are non-negative with positive sum");
        (w, false)
    };
    WeightReport {
        method: WeightMethod::StdDev,
        weights,
        detail: WeightDetail::StdDev { sigma },
        fallback,
    }
}

/// Normalizes the criteria's fixed weights into a weight vector.
pub fn manual_weights(problem: &DecisionProblem) -> Result<WeightReport> {
    let mut raw = Vec::with_capacity(problem.criteria_len());
    for (col, c) in problem.criteria().iter().enumerate() {
        match c.fixed_weight {
            Some(w) => raw.push(w),
            None => {
                return Err(crate::model::Error::MissingFixedWeight {
                    col,
                    name: c.name.clone(),
                })
            }
        }
    }
    let weights = WeightVector::proportional_to(raw)?;
    Ok(WeightReport {
        method: WeightMethod::Manual,
        weights,
        detail: WeightDetail::None,
        fallback: false,
    })
}

/// Uniform weights 1/n.
pub fn equal_weights(problem: &DecisionProblem) -> WeightReport {
    WeightReport {
        method: WeightMethod::Equal,
        weights: WeightVector::equal(problem.criteria_len()),
        detail: WeightDetail::None,
        fallback: false,
    }
}

fn column_is_constant(problem: &DecisionProblem, col: usize) -> bool {
    let first = problem.value(0, col);
    problem.column(col).all(|x| x == first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Criterion, DecisionProblem, Direction, Error};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn two_col_problem(col1: Vec<f64>, col2: Vec<f64>) -> DecisionProblem {
        let m = col1.len();
        DecisionProblem::new(
            vec![
                Criterion::new("c0", Direction::Benefit),
                Criterion::new("c1", Direction::Benefit),
            ],
            (0..m).map(|i| format!("a{i}")).collect(),
            (0..m).map(|i| vec![col1[i], col2[i]]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn entropy_derived_example() {
        // oracle: hand arithmetic with k = 1/ln 3 computed ahead of the build
        let p = two_col_problem(vec![1.0, 2.0, 3.0], vec![4.0, 4.0, 4.0]);
        let r = entropy_weights(&p);
        let WeightDetail::Entropy { entropy, divergence } = &r.detail else {
            panic!("entropy detail expected");
        };
        assert_abs_diff_eq!(entropy[0], 0.920619835714305, epsilon = 1e-12);
        assert_eq!(entropy[1], 1.0);
        assert_abs_diff_eq!(divergence[0], 0.07938016428569505, epsilon = 1e-12);
        assert_eq!(divergence[1], 0.0);
        assert_eq!(r.weights.as_slice(), &[1.0, 0.0]);
        assert!(!r.fallback);
    }

    #[test]
    fn entropy_all_uniform_falls_back_to_equal() {
        let p = two_col_problem(vec![2.0, 2.0, 2.0], vec![4.0, 4.0, 4.0]);
        let r = entropy_weights(&p);
        assert!(r.fallback);
        assert_eq!(r.weights.as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn entropy_detail_invariants() {
        let p = two_col_problem(vec![0.0, 5.0, 1.0], vec![3.0, 1.0, 7.0]);
        let r = entropy_weights(&p);
        let WeightDetail::Entropy { entropy, divergence } = &r.detail else {
            panic!();
        };
        for (e, d) in entropy.iter().zip(divergence) {
            assert!((0.0..=1.0).contains(e));
            assert_abs_diff_eq!(e + d, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn stddev_derived_example() {
        // oracle: population sigma of [0, 0.5, 1] = sqrt(1/6)
        let p = two_col_problem(vec![1.0, 2.0, 3.0], vec![4.0, 4.0, 4.0]);
        let r = stddev_weights(&p);
        let WeightDetail::StdDev { sigma } = &r.detail else {
            panic!("stddev detail expected");
        };
        assert_abs_diff_eq!(sigma[0], 0.408248290463863, epsilon = 1e-12);
        assert_eq!(sigma[1], 0.0);
        assert_eq!(r.weights.as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn stddev_single_criterion_takes_full_weight() {
        let p = DecisionProblem::new(
            vec![Criterion::new("c", Direction::Benefit)],
            vec!["a".into(), "b".into()],
            vec![vec![3.0], vec![4.0]],
        )
        .unwrap();
        let r = stddev_weights(&p);
        assert_eq!(r.weights.as_slice(), &[1.0]);
    }

    #[test]
    fn manual_scheme() {
        let p = DecisionProblem::new(
            vec![
                Criterion::with_weight("a", Direction::Benefit, 2.0),
                Criterion::with_weight("b", Direction::Cost, 2.0),
            ],
            vec!["x".into(), "y".into()],
            vec![vec![1.0, 2.0], vec![2.0, 1.0]],
        )
        .unwrap();
        let r = manual_weights(&p).unwrap();
        assert_eq!(r.weights.as_slice(), &[0.5, 0.5]);

        let missing = DecisionProblem::new(
            vec![
                Criterion::with_weight("a", Direction::Benefit, 1.0),
                Criterion::new("b", Direction::Cost),
            ],
            vec!["x".into(), "y".into()],
            vec![vec![1.0, 2.0], vec![2.0, 1.0]],
        )
        .unwrap();
        assert!(matches!(
            manual_weights(&missing).unwrap_err(),
            Error::MissingFixedWeight { col: 1, .. }
        ));

        let zeros = DecisionProblem::new(
            vec![
                Criterion::with_weight("a", Direction::Benefit, 0.0),
                Criterion::with_weight("b", Direction::Cost, 0.0),
            ],
            vec!["x".into(), "y".into()],
            vec![vec![1.0, 2.0], vec![2.0, 1.0]],
        )
        .unwrap();
        assert!(matches!(
            manual_weights(&zeros).unwrap_err(),
            Error::AllZeroWeights
        ));
    }

    proptest! {
        // The column with the larger spread of proportions gets the larger
        // entropy weight (2 alternatives, 2 criteria).
        #[test]
        fn entropy_rewards_dispersion_m2_n2(
            a in 1u32..1000, b in 1u32..1000, c in 1u32..1000, d in 1u32..1000
        ) {
            let p = two_col_problem(
                vec![a as f64, b as f64],
                vec![c as f64, d as f64],
            );
            let spread = |x: f64, y: f64| ((x - y) / (x + y)).abs();
            let s0 = spread(a as f64, b as f64);
            let s1 = spread(c as f64, d as f64);
            let w = entropy_weights(&p);
            if (s0 - s1).abs() > 1e-9 {
                let ws = w.weights.as_slice();
                if s0 > s1 {
                    prop_assert!(ws[0] > ws[1]);
                } else {
                    prop_assert!(ws[1] > ws[0]);
                }
            }
        }

        // Both objective schemes always yield valid weight vectors.
        #[test]
        fn objective_weights_are_valid(
            rows in prop::collection::vec(prop::collection::vec(0.1f64..100.0, 3), 2..6)
        ) {
            let m = rows.len();
            let p = DecisionProblem::new(
                vec![
                    Criterion::new("x", Direction::Benefit),
                    Criterion::new("y", Direction::Cost),
                    Criterion::new("z", Direction::Benefit),
                ],
                (0..m).map(|i| format!("a{i}")).collect(),
                rows,
            ).unwrap();
            for r in [entropy_weights(&p), stddev_weights(&p)] {
                let sum: f64 = r.weights.as_slice().iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-9);
                prop_assert!(r.weights.as_slice().iter().all(|&w| w >= 0.0));
            }
        }
    }
}
