//! Rank-based evaluation metrics for link prediction, their behaviour under
//! random predictions, and chance adjustments that make them comparable
//! across datasets of different sizes.
//!
//! ```
//! use rank_adjust::{adjust, null_statistics_closed, MetricDefinition, MrrMode, RankSet};
//!
//! let ranks = RankSet::from_pairs([(1.0, 5), (2.0, 5), (4.0, 5)]).unwrap();
//! let mrr: MetricDefinition = "mrr".parse().unwrap();
//! let base = mrr.evaluate(&ranks).unwrap();
//! let null = null_statistics_closed(&mrr, &ranks.sizes(), MrrMode::ExactDiscrete).unwrap();
//! let adjusted = adjust(&base, &null);
//! assert!((adjusted.adjusted_index.unwrap() - 0.23312).abs() < 1e-5);
//! ```
//!
//! The `examples/` directory has one runnable program per capability.

pub mod adjustments;
pub mod aggregation;
pub mod cli;
pub mod constants_db;
pub mod error;
pub mod io;
pub mod metrics;
pub mod null_models;
pub mod ranking;
pub mod report;
pub mod rng;
pub mod sim;

pub use adjustments::{
    adjust, adjusted_index, evaluate_adjusted, expectation_adjust, phi, z_adjust, AdjustedValue,
};
pub use aggregation::{power_mean, PowerMeanOrder};
pub use constants_db::{ConstantsRecord, DatasetSpec, Split, Stratum};
pub use error::{Error, Result};
pub use metrics::{
    builtin_registry, BuiltinMetric, Direction, MetricDefinition, MetricValue, PostTransform,
    RankTransform,
};
pub use null_models::{
    expected_rank, null_statistics, null_statistics_closed, null_statistics_monte_carlo,
    rank_variance, MonteCarloConfig, MrrMode, NullMethod, NullOptions, NullStatistics,
};
pub use ranking::{score_to_rank, validate_rank_set, RankSet, RankingTask, Side, TiePolicy};
