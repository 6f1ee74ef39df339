//! Deterministic multi-criteria decision making: objective criterion
//! weighting (entropy, standard deviation), TOPSIS and MOORA ranking, rank
//! agreement statistics, weight-perturbation sensitivity, and file/report
//! plumbing for the `mcdm` command-line tool.
//!
//! The whole crate is reproducible by construction: no global state, no
//! ambient randomness (sensitivity takes an explicit seed), fixed summation
//! orders, and byte-stable serialization. Running the same pipeline twice
//! on the same inputs produces identical files.
//!
//! Start with [`DecisionProblem`], get a [`WeightVector`] from one of the
//! weighting functions (or supply your own), then call [`topsis`] or
//! [`moora`].

pub mod analysis;
pub mod fixture;
pub mod io;
pub mod model;
pub mod normalize;
pub mod ranking;
pub mod report;
pub mod weighting;

pub use analysis::{compare_rankings, weight_sensitivity, RankComparison, SensitivityReport};
pub use fixture::{check_fixture, FixtureCheck, PublishedWeights, Table3Fixture, CI_TOLERANCE};
pub use io::{load_problem, save_problem, IoError, IoResult};
pub use model::{
    assign_ranks, Criterion, DecisionProblem, Direction, Error, RankMethod, Ranking, Result,
    TopsisDiagnostics, WeightVector, WEIGHT_SUM_BAND,
};
pub use normalize::{
    minmax_directed, sum_proportion, vector_normalize, NormScheme, NormalizedMatrix,
};
pub use ranking::{moora, topsis, IdealPoints};
pub use report::{emit_report, ComparisonInput, ReportBundle};
pub use weighting::{
    entropy_weights, equal_weights, manual_weights, stddev_weights, WeightDetail, WeightMethod,
    WeightReport,
};
