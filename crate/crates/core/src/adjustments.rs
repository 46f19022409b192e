//! Chance adjustments of base metric values.
//!
//! All three adjustments are affine in the base value, with constants that
//! depend only on the candidate set sizes:
//!
//! * expectation adjustment `M / E[M]` (MR, HMR, GMR only);
//! * adjusted index, mapping the optimum to 1 and the null expectation to 0;
//! * z-score `(M − E[M]) / sd[M]`, optionally mapped to (0, 1) by the
//!   standard normal CDF.
//!
//! Reported adjusted indices and z-scores are oriented so that larger is
//! better. For decreasing base metrics the raw z-score is negated; the raw
//! value is kept in [`AdjustedValue::z_raw`].

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::metrics::{BuiltinMetric, Direction, MetricDefinition, MetricValue};
use crate::null_models::{null_statistics, NullOptions, NullStatistics};
use crate::ranking::RankSet;

const DEGENERATE_GAP: f64 = 1e-15;

/// Standard normal CDF.
pub fn phi(z: f64) -> f64 {
    0.5 * libm::erfc(-z / SQRT_2)
}

/// `M / E[M]`, defined for metrics bounded by [1, ∞).
pub fn expectation_adjust(value: &MetricValue, null: &NullStatistics) -> Result<f64> {
    match value.metric.as_builtin() {
        Some(
            BuiltinMetric::MeanRank
            | BuiltinMetric::HarmonicMeanRank
            | BuiltinMetric::GeometricMeanRank,
        ) => {}
        _ => {
            return Err(Error::AdjustmentNotApplicable(format!(
                "expectation adjustment is only defined for mr, hmr and gmr, not {}",
                value.metric.name()
            )))
        }
    }
    if !(null.expectation > 0.0) {
        return Err(Error::InvalidNull(format!(
            "expectation must be positive (got {})",
            null.expectation
        )));
    }
    Ok(value.value / null.expectation)
}

/// Adjusted index: 1 at `optimum`, 0 at the null expectation.
///
/// Decreasing metrics use `1 − (M − opt) / (E[M] − opt)`, which for MR with
/// `opt = 1` is the adjusted mean rank index. Increasing metrics use
/// `(M − E[M]) / (opt − E[M])`.
pub fn adjusted_index(value: &MetricValue, null: &NullStatistics, optimum: f64) -> Result<f64> {
    let e = null.expectation;
    if !((optimum - e).abs() >= DEGENERATE_GAP) {
        return Err(Error::DegenerateAdjustment { expectation: e });
    }
    Ok(match value.metric.direction() {
        Direction::Decreasing => 1.0 - (value.value - optimum) / (e - optimum),
        Direction::Increasing => (value.value - e) / (optimum - e),
    })
}

/// Raw z-score `(M − E[M]) / sd[M]`, not orientation-corrected.
pub fn z_adjust(value: &MetricValue, null: &NullStatistics) -> Result<f64> {
    if !(null.variance > 0.0) {
        return Err(Error::ZeroVariance);
    }
    Ok((value.value - null.expectation) / null.variance.sqrt())
}

/// The value of a metric when every rank is 1.
pub fn optimum(metric: &MetricDefinition) -> f64 {
    metric.evaluate_slice(&[1.0])
}

/// Lower end of the adjusted index range.
///
/// Increasing metrics bottom out at a base value of 0, giving
/// `−E/(opt − E)`. The adjusted mean rank index has the constant bound −1.
/// Other decreasing metrics have no finite bound known from the null
/// expectation alone.
pub fn adjusted_index_lower_bound(metric: &MetricDefinition, null: &NullStatistics) -> Option<f64> {
    let opt = optimum(metric);
    let e = null.expectation;
    if (opt - e).abs() < DEGENERATE_GAP {
        return None;
    }
    match (metric.direction(), metric.as_builtin()) {
        (Direction::Increasing, _) => Some((0.0 - e) / (opt - e)),
        (Direction::Decreasing, Some(BuiltinMetric::MeanRank)) => Some(-1.0),
        _ => None,
    }
}

/// A base value together with every applicable adjustment.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustedValue {
    pub base: MetricValue,
    pub expectation_adjusted: Option<f64>,
    pub adjusted_index: Option<f64>,
    /// Oriented so that larger is better.
    pub z_score: Option<f64>,
    pub z_raw: Option<f64>,
    pub phi_of_z: Option<f64>,
    pub lower_bound: Option<f64>,
    /// True when `z_score = −z_raw`.
    pub orientation_flipped: bool,
    pub null: NullStatistics,
}

/// Applies every adjustment that is defined for this metric and null.
/// Undefined ones (degenerate index, zero variance, non-applicable
/// expectation adjustment) are left as `None`.
pub fn adjust(value: &MetricValue, null: &NullStatistics) -> AdjustedValue {
    let flipped = value.metric.direction() == Direction::Decreasing;
    let z_raw = z_adjust(value, null).ok();
    let z_score = z_raw.map(|z| if flipped { -z } else { z });
    AdjustedValue {
        base: value.clone(),
        expectation_adjusted: expectation_adjust(value, null).ok(),
        adjusted_index: adjusted_index(value, null, optimum(&value.metric)).ok(),
        z_score,
        z_raw,
        phi_of_z: z_score.map(phi),
        lower_bound: adjusted_index_lower_bound(&value.metric, null),
        orientation_flipped: flipped,
        null: null.clone(),
    }
}

/// Evaluates a metric on ranks and adjusts it with null statistics derived
/// from the same ranks' candidate set sizes.
pub fn evaluate_adjusted(
    metric: &MetricDefinition,
    ranks: &RankSet,
    options: &NullOptions,
) -> Result<AdjustedValue> {
    let base = metric.evaluate(ranks)?;
    let null = null_statistics(metric, &ranks.sizes(), options)?;
    Ok(adjust(&base, &null))
}
