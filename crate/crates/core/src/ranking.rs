//! TOPSIS and MOORA ranking engines.
//!
//! Both operate on the vector-normalized matrix with weights applied to the
//! normalized values first. TOPSIS ranks by the closeness coefficient
//! Ci = S- / (S+ + S-), the relative Euclidean distance from the negative
//! ideal versus both ideals; MOORA (ratio system) ranks by the weighted sum
//! of normalized benefit values minus the weighted sum of normalized cost
//! values. Summations run left-to-right over the criterion index so results
//! are bit-identical across runs.

use crate::model::{
    assign_ranks, DecisionProblem, Direction, Error, RankMethod, Ranking, Result,
    TopsisDiagnostics, WeightVector,
};
use crate::normalize::vector_normalize;

/// The synthetic best and worst alternative of a weighted normalized matrix:
/// per criterion, the positive ideal takes the most preferred value seen
/// (max for benefit, min for cost) and the negative ideal the least
/// preferred.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPoints {
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
}

impl IdealPoints {
    /// `weighted[i][j]` in row-major layout; one direction per column.
    pub fn from_weighted(weighted: &[f64], directions: &[Direction], m: usize) -> Self {
        let n = directions.len();
        let mut positive = Vec::with_capacity(n);
        let mut negative = Vec::with_capacity(n);
        for (j, dir) in directions.iter().enumerate() {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for i in 0..m {
                let v = weighted[i * n + j];
                min = min.min(v);
                max = max.max(v);
            }
            match dir {
                Direction::Benefit => {
                    positive.push(max);
                    negative.push(min);
                }
                Direction::Cost => {
                    positive.push(min);
                    negative.push(max);
                }
            }
        }
        IdealPoints { positive, negative }
    }
}

fn check_weights(problem: &DecisionProblem, weights: &WeightVector) -> Result<()> {
    if weights.len() != problem.criteria_len() {
        return Err(Error::WeightDimensionMismatch {
            expected: problem.criteria_len(),
            got: weights.len(),
        });
    }
    Ok(())
}

fn weighted_normalized(problem: &DecisionProblem, weights: &WeightVector) -> Vec<f64> {
    let r = vector_normalize(problem);
    let (m, n) = (problem.alternatives_len(), problem.criteria_len());
    let w = weights.as_slice();
    let mut v = Vec::with_capacity(m * n);
    for i in 0..m {
        for (j, &wj) in w.iter().enumerate().take(n) {
            v.push(wj * r.value(i, j));
        }
    }
    v
}

/// Ranks the alternatives by closeness to the ideal solution.
///
/// If every alternative coincides after weighting, S+ + S- is zero for all
/// of them; the closeness coefficient is then fixed at its symmetric value
/// 0.5 and the ranking is flagged degenerate instead of failing.
pub fn topsis(problem: &DecisionProblem, weights: &WeightVector) -> Result<Ranking> {
    check_weights(problem, weights)?;
    let (m, n) = (problem.alternatives_len(), problem.criteria_len());
    let v = weighted_normalized(problem, weights);
    let directions: Vec<Direction> = problem.criteria().iter().map(|c| c.direction).collect();
    let ideals = IdealPoints::from_weighted(&v, &directions, m);

    let mut s_plus = Vec::with_capacity(m);
    let mut s_minus = Vec::with_capacity(m);
    let mut scores = Vec::with_capacity(m);
    let mut degenerate = false;
    for i in 0..m {
        let mut dp = 0.0;
        let mut dm = 0.0;
        for j in 0..n {
            let vij = v[i * n + j];
            dp += (vij - ideals.positive[j]) * (vij - ideals.positive[j]);
            dm += (vij - ideals.negative[j]) * (vij - ideals.negative[j]);
        }
        let (sp, sm) = (dp.sqrt(), dm.sqrt());
        let ci = if sp + sm == 0.0 {
            degenerate = true;
            0.5
        } else {
            sm / (sp + sm)
        };
        s_plus.push(sp);
        s_minus.push(sm);
        scores.push(ci);
    }
    let ranks = assign_ranks(&scores)?;
    Ok(Ranking {
        method: RankMethod::Topsis,
        scores,
        ranks,
        diagnostics: Some(TopsisDiagnostics { s_plus, s_minus }),
        degenerate,
    })
}

/// Ratio-system MOORA: y_i = sum over benefit criteria of w_j r_ij minus
/// sum over cost criteria of w_j r_ij. Scores go negative on cost-dominated
/// problems; the ranking only needs their order.
pub fn moora(problem: &DecisionProblem, weights: &WeightVector) -> Result<Ranking> {
    check_weights(problem, weights)?;
    let (m, n) = (problem.alternatives_len(), problem.criteria_len());
    let r = vector_normalize(problem);
    let w = weights.as_slice();

    let mut scores = Vec::with_capacity(m);
    for i in 0..m {
        let mut y = 0.0;
        for (j, &wj) in w.iter().enumerate().take(n) {
            let term = wj * r.value(i, j);
            match problem.criteria()[j].direction {
                Direction::Benefit => y += term,
                Direction::Cost => y -= term,
            }
        }
        scores.push(y);
    }
    let ranks = assign_ranks(&scores)?;
    Ok(Ranking {
        method: RankMethod::Moora,
        scores,
        ranks,
        diagnostics: None,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Criterion;
    use approx::assert_abs_diff_eq;

    fn benefit_cost_3x2() -> DecisionProblem {
        DecisionProblem::new(
            vec![
                Criterion::new("gain", Direction::Benefit),
                Criterion::new("price", Direction::Cost),
            ],
            vec!["a1".into(), "a2".into(), "a3".into()],
            vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![3.0, 3.0]],
        )
        .unwrap()
    }

    fn half_half() -> WeightVector {
        WeightVector::new(vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn topsis_two_by_one() {
        let p = DecisionProblem::new(
            vec![Criterion::new("eff", Direction::Benefit)],
            vec!["a".into(), "b".into()],
            vec![vec![3.0], vec![4.0]],
        )
        .unwrap();
        let r = topsis(&p, &WeightVector::new(vec![1.0]).unwrap()).unwrap();
        assert_eq!(r.scores, vec![0.0, 1.0]);
        assert_eq!(r.ranks, vec![2, 1]);
        assert!(!r.degenerate);
    }

    #[test]
    fn topsis_derived_3x2() {
        // oracle: step-by-step hand computation via sqrt(14) norms,
        // done ahead of the build
        let r = topsis(&benefit_cost_3x2(), &half_half()).unwrap();
        let d = r.diagnostics.as_ref().unwrap();
        assert_abs_diff_eq!(d.s_plus[0], 0.29880715233359845, epsilon = 1e-12);
        assert_abs_diff_eq!(d.s_minus[0], 0.1336306209562122, epsilon = 1e-12);
        assert_abs_diff_eq!(r.scores[0], 0.3090169943749474, epsilon = 1e-12);
        assert_abs_diff_eq!(r.scores[1], 0.6909830056250525, epsilon = 1e-12);
        assert_abs_diff_eq!(r.scores[2], 0.5, epsilon = 1e-12);
        assert_eq!(r.ranks, vec![3, 1, 2]);
    }

    #[test]
    fn moora_derived_3x2() {
        let r = moora(&benefit_cost_3x2(), &half_half()).unwrap();
        assert_abs_diff_eq!(r.scores[0], -0.1336306209562122, epsilon = 1e-12);
        assert_abs_diff_eq!(r.scores[1], 0.1336306209562122, epsilon = 1e-12);
        assert_abs_diff_eq!(r.scores[2], 0.0, epsilon = 1e-12);
        assert_eq!(r.ranks, vec![3, 1, 2]);
    }

    #[test]
    fn moora_two_by_one_is_vector_normalization() {
        let p = DecisionProblem::new(
            vec![Criterion::new("eff", Direction::Benefit)],
            vec!["a".into(), "b".into()],
            vec![vec![3.0], vec![4.0]],
        )
        .unwrap();
        let r = moora(&p, &WeightVector::new(vec![1.0]).unwrap()).unwrap();
        assert_abs_diff_eq!(r.scores[0], 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(r.scores[1], 0.8, epsilon = 1e-12);
        assert_eq!(r.ranks, vec![2, 1]);
    }

    #[test]
    fn identical_alternatives_degenerate_to_half() {
        let p = DecisionProblem::new(
            vec![
                Criterion::new("x", Direction::Benefit),
                Criterion::new("y", Direction::Cost),
            ],
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![2.0, 3.0]; 3],
        )
        .unwrap();
        let r = topsis(&p, &half_half()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.scores, vec![0.5, 0.5, 0.5]);
        assert_eq!(r.ranks, vec![1, 2, 3]);
    }

    #[test]
    fn weight_dimension_checked() {
        let p = benefit_cost_3x2();
        let w = WeightVector::new(vec![1.0]).unwrap();
        assert!(matches!(
            topsis(&p, &w).unwrap_err(),
            Error::WeightDimensionMismatch { expected: 2, got: 1 }
        ));
        assert!(matches!(
            moora(&p, &w).unwrap_err(),
            Error::WeightDimensionMismatch { expected: 2, got: 1 }
        ));
    }

    #[test]
    fn zero_weight_criterion_is_irrelevant() {
        let p = benefit_cost_3x2();
        let w = WeightVector::new(vec![1.0, 0.0]).unwrap();
        let full = topsis(&p, &w).unwrap();
        let reduced_problem = DecisionProblem::new(
            vec![Criterion::new("gain", Direction::Benefit)],
            vec!["a1".into(), "a2".into(), "a3".into()],
            vec![vec![1.0], vec![2.0], vec![3.0]],
        )
        .unwrap();
        let reduced = topsis(&reduced_problem, &WeightVector::new(vec![1.0]).unwrap()).unwrap();
        for (a, b) in full.scores.iter().zip(&reduced.scores) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
        let fm = moora(&p, &w).unwrap();
        let rm = moora(&reduced_problem, &WeightVector::new(vec![1.0]).unwrap()).unwrap();
        for (a, b) in fm.scores.iter().zip(&rm.scores) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn ideal_points_ordering_per_direction() {
        let p = benefit_cost_3x2();
        let v = weighted_normalized(&p, &half_half());
        let dirs: Vec<_> = p.criteria().iter().map(|c| c.direction).collect();
        let ideals = IdealPoints::from_weighted(&v, &dirs, 3);
        // benefit column: positive ideal is the max
        assert!(ideals.positive[0] >= ideals.negative[0]);
        // cost column: positive ideal is the min
        assert!(ideals.positive[1] <= ideals.negative[1]);
    }

    #[test]
    fn topsis_scores_stay_in_unit_interval() {
        let p = DecisionProblem::new(
            vec![
                Criterion::new("x", Direction::Benefit),
                Criterion::new("y", Direction::Cost),
                Criterion::new("z", Direction::Benefit),
            ],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                vec![4.0, 7.0, 0.5],
                vec![9.0, 1.0, 2.5],
                vec![0.0, 3.0, 1.0],
                vec![2.0, 2.0, 8.0],
            ],
        )
        .unwrap();
        let w = WeightVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let r = topsis(&p, &w).unwrap();
        assert!(r.scores.iter().all(|&c| (0.0..=1.0).contains(&c)));
        let mut sorted = r.ranks.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=4).collect::<Vec<_>>());
    }
}
