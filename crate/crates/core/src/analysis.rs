//! Rank agreement between two methods and weight-perturbation sensitivity.
//!
//! Ranks produced by this crate are tie-free permutations, so the plain
//! Spearman and Kendall formulas apply without tie corrections.
//!
//! Sensitivity draws its perturbation factors from ChaCha8 seeded with the
//! caller's u64 seed, with trial t reading from stream t. Trials therefore
//! do not share generator state, the schedule cannot affect the draws, and
//! the same seed always reproduces the same report.

use crate::model::{Error, RankMethod, Ranking, Result, WeightVector};
use crate::ranking::{moora, topsis};
use crate::DecisionProblem;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Agreement statistics between two rankings of the same alternatives.
#[derive(Debug, Clone, PartialEq)]
pub struct RankComparison {
    pub spearman_rho: f64,
    pub kendall_tau: f64,
    /// rank_a[i] - rank_b[i] per alternative.
    pub rank_diffs: Vec<i64>,
    pub agreed_top1: bool,
}

/// Spearman rho and Kendall tau-a over two tie-free rank permutations,
/// plus the per-alternative rank differences and whether the two methods
/// put the same alternative first.
pub fn compare_rankings(a: &Ranking, b: &Ranking) -> Result<RankComparison> {
    if a.ranks.len() != b.ranks.len() {
        return Err(Error::LengthMismatch {
            a: a.ranks.len(),
            b: b.ranks.len(),
        });
    }
    let m = a.ranks.len();
    let mut rank_diffs = Vec::with_capacity(m);
    let mut sum_d2: i64 = 0;
    for i in 0..m {
        let d = a.ranks[i] as i64 - b.ranks[i] as i64;
        rank_diffs.push(d);
        sum_d2 += d * d;
    }
    let (spearman_rho, kendall_tau) = if m < 2 {
        // a single alternative always agrees with itself
        (1.0, 1.0)
    } else {
        let mf = m as f64;
        let rho = 1.0 - 6.0 * sum_d2 as f64 / (mf * (mf * mf - 1.0));
        let mut concordant: i64 = 0;
        let mut discordant: i64 = 0;
        for i in 0..m {
            for j in (i + 1)..m {
                let da = a.ranks[i] as i64 - a.ranks[j] as i64;
                let db = b.ranks[i] as i64 - b.ranks[j] as i64;
                if da * db > 0 {
                    concordant += 1;
                } else {
                    discordant += 1;
                }
            }
        }
        let pairs = (m * (m - 1) / 2) as f64;
        (rho, (concordant - discordant) as f64 / pairs)
    };
    Ok(RankComparison {
        spearman_rho,
        kendall_tau,
        rank_diffs,
        agreed_top1: a.top_index() == b.top_index(),
    })
}

/// Outcome of rerunning a ranking method under randomly perturbed weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    pub base_ranking: Ranking,
    pub perturbation_delta: f64,
    pub trials: usize,
    /// Fraction of trials whose rank-1 alternative matches the base run.
    pub top1_stability: f64,
    /// (min, max) rank observed for each alternative, base run included.
    pub per_alternative_rank_range: Vec<(usize, usize)>,
}

const U64_TO_UNIT: f64 = 1.0 / (1u64 << 53) as f64;

fn uniform_unit(rng: &mut ChaCha8Rng) -> f64 {
    // top 53 bits give a uniform dyadic rational in [0, 1)
    (rng.next_u64() >> 11) as f64 * U64_TO_UNIT
}

fn run_method(
    problem: &DecisionProblem,
    weights: &WeightVector,
    method: RankMethod,
) -> Result<Ranking> {
    match method {
        RankMethod::Topsis => topsis(problem, weights),
        RankMethod::Moora => moora(problem, weights),
    }
}

/// Reruns `method` `trials` times, each time scaling every weight by an
/// independent factor uniform in [1-delta, 1+delta] and renormalizing.
///
/// Factors stay strictly positive because delta < 1, so the perturbed
/// vector always renormalizes. With zero trials (or delta = 0) the report
/// collapses to the base ranking and full stability.
pub fn weight_sensitivity(
    problem: &DecisionProblem,
    weights: &WeightVector,
    method: RankMethod,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<SensitivityReport> {
    if !delta.is_finite() || !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidDelta { value: delta });
    }
    let base_ranking = run_method(problem, weights, method)?;
    let n = weights.len();

    let mut ranges: Vec<(usize, usize)> =
        base_ranking.ranks.iter().map(|&r| (r, r)).collect();
    let mut top1_hits: usize = 0;
    let base_top = base_ranking.top_index();

    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut perturbed = Vec::with_capacity(n);
        for &w in weights.as_slice() {
            let factor = 1.0 - delta + 2.0 * delta * uniform_unit(&mut rng);
            perturbed.push(w * factor);
        }
        let perturbed = WeightVector::proportional_to(perturbed)?;
        let ranking = run_method(problem, &perturbed, method)?;
        if ranking.top_index() == base_top {
            top1_hits += 1;
        }
        for (range, &r) in ranges.iter_mut().zip(&ranking.ranks) {
            range.0 = range.0.min(r);
            range.1 = range.1.max(r);
        }
    }

    Ok(SensitivityReport {
        base_ranking,
        perturbation_delta: delta,
        trials,
        top1_stability: if trials == 0 {
            1.0
        } else {
            top1_hits as f64 / trials as f64
        },
        per_alternative_rank_range: ranges,
    })
}
