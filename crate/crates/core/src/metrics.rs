//! Rank-based metrics of the form `g(M_p(f(r₁), …, f(rₙ)))`.
//!
//! | name             | f(x)      | agg.  | g(x) | direction  |
//! |------------------|-----------|-------|------|------------|
//! | `hits@k`         | 𝟙[x ≤ k]  | M₁    | x    | increasing |
//! | `mr`             | x         | M₁    | x    | decreasing |
//! | `mrr`            | x         | M₋₁   | 1/x  | increasing |
//! | `mrr_colloquial` | 1/x       | M₁    | x    | increasing |
//! | `imr`            | x         | M₁    | 1/x  | increasing |
//! | `hmr`            | x         | M₋₁   | x    | decreasing |
//! | `gmr`            | x         | M₀    | x    | decreasing |
//! | `igmr`           | x         | M₀    | 1/x  | increasing |

use std::fmt;
use std::str::FromStr;

use crate::aggregation::{power_mean_unchecked, PowerMeanOrder, INFINITE_ORDER_THRESHOLD};
use crate::error::{Error, Result};
use crate::ranking::RankSet;

/// Convenience cut-offs for hits@k.
pub const HITS_AT_K_DEFAULTS: [u64; 4] = [1, 3, 5, 10];

/// Per-rank transformation `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankTransform {
    Identity,
    Reciprocal,
    /// 𝟙[r ≤ k]
    Indicator(u64),
}

impl RankTransform {
    #[inline]
    pub fn apply(self, rank: f64) -> f64 {
        match self {
            RankTransform::Identity => rank,
            RankTransform::Reciprocal => rank.recip(),
            RankTransform::Indicator(k) => {
                if rank <= k as f64 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Post-aggregation transformation `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PostTransform {
    Identity,
    Reciprocal,
}

impl PostTransform {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            PostTransform::Identity => x,
            PostTransform::Reciprocal => x.recip(),
        }
    }
}

/// Whether larger metric values mean better predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        }
    }
}

/// The shipped compositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinMetric {
    HitsAt(u64),
    MeanRank,
    MeanReciprocalRank,
    MeanReciprocalRankColloquial,
    InverseMeanRank,
    HarmonicMeanRank,
    GeometricMeanRank,
    InverseGeometricMeanRank,
}

impl BuiltinMetric {
    pub fn name(self) -> String {
        match self {
            BuiltinMetric::HitsAt(k) => format!("hits@{k}"),
            BuiltinMetric::MeanRank => "mr".into(),
            BuiltinMetric::MeanReciprocalRank => "mrr".into(),
            BuiltinMetric::MeanReciprocalRankColloquial => "mrr_colloquial".into(),
            BuiltinMetric::InverseMeanRank => "imr".into(),
            BuiltinMetric::HarmonicMeanRank => "hmr".into(),
            BuiltinMetric::GeometricMeanRank => "gmr".into(),
            BuiltinMetric::InverseGeometricMeanRank => "igmr".into(),
        }
    }

    fn parts(self) -> (RankTransform, PowerMeanOrder, PostTransform, Direction) {
        use Direction::*;
        use PostTransform as G;
        use RankTransform as F;
        match self {
            BuiltinMetric::HitsAt(k) => (
                F::Indicator(k),
                PowerMeanOrder::ARITHMETIC,
                G::Identity,
                Increasing,
            ),
            BuiltinMetric::MeanRank => (
                F::Identity,
                PowerMeanOrder::ARITHMETIC,
                G::Identity,
                Decreasing,
            ),
            BuiltinMetric::MeanReciprocalRank => (
                F::Identity,
                PowerMeanOrder::HARMONIC,
                G::Reciprocal,
                Increasing,
            ),
            BuiltinMetric::MeanReciprocalRankColloquial => (
                F::Reciprocal,
                PowerMeanOrder::ARITHMETIC,
                G::Identity,
                Increasing,
            ),
            BuiltinMetric::InverseMeanRank => (
                F::Identity,
                PowerMeanOrder::ARITHMETIC,
                G::Reciprocal,
                Increasing,
            ),
            BuiltinMetric::HarmonicMeanRank => (
                F::Identity,
                PowerMeanOrder::HARMONIC,
                G::Identity,
                Decreasing,
            ),
            BuiltinMetric::GeometricMeanRank => (
                F::Identity,
                PowerMeanOrder::GEOMETRIC,
                G::Identity,
                Decreasing,
            ),
            BuiltinMetric::InverseGeometricMeanRank => (
                F::Identity,
                PowerMeanOrder::GEOMETRIC,
                G::Reciprocal,
                Increasing,
            ),
        }
    }

    pub fn definition(self) -> MetricDefinition {
        let (f, p, g, direction) = self.parts();
        MetricDefinition {
            name: self.name(),
            f,
            p,
            g,
            direction,
        }
    }
}

impl FromStr for BuiltinMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Ok(match lower.as_str() {
            "mr" => BuiltinMetric::MeanRank,
            "mrr" => BuiltinMetric::MeanReciprocalRank,
            "mrr_colloquial" => BuiltinMetric::MeanReciprocalRankColloquial,
            "imr" => BuiltinMetric::InverseMeanRank,
            "hmr" => BuiltinMetric::HarmonicMeanRank,
            "gmr" => BuiltinMetric::GeometricMeanRank,
            "igmr" => BuiltinMetric::InverseGeometricMeanRank,
            other => {
                let k = other
                    .strip_prefix("hits@")
                    .and_then(|k| k.parse::<u64>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::UnknownMetric(s.to_string()))?;
                BuiltinMetric::HitsAt(k)
            }
        })
    }
}

/// A metric as the triple (f, p, g) plus its orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricDefinition {
    name: String,
    f: RankTransform,
    p: PowerMeanOrder,
    g: PostTransform,
    direction: Direction,
}

impl MetricDefinition {
    /// Builds a custom composition. The declared direction is checked by
    /// evaluating all-optimal ranks against all-worse ranks.
    pub fn new(
        name: impl Into<String>,
        f: RankTransform,
        p: PowerMeanOrder,
        g: PostTransform,
        direction: Direction,
    ) -> Result<Self> {
        let def = MetricDefinition {
            name: name.into(),
            f,
            p,
            g,
            direction,
        };
        if let RankTransform::Indicator(k) = f {
            if k == 0 {
                return Err(Error::UnsupportedComposition(
                    "indicator needs k >= 1".into(),
                ));
            }
        }
        def.check_composition()?;
        let worse = match f {
            RankTransform::Indicator(k) => k as f64 + 1.0,
            _ => 2.0,
        };
        let best = def.evaluate_slice(&[1.0; 3]);
        let other = def.evaluate_slice(&[worse; 3]);
        let observed = if best > other {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        if best == other || observed != direction {
            return Err(Error::DirectionMismatch {
                name: def.name,
                declared: direction.as_str(),
                observed: if best == other {
                    "constant"
                } else {
                    observed.as_str()
                },
            });
        }
        Ok(def)
    }

    pub fn builtin(metric: BuiltinMetric) -> Self {
        metric.definition()
    }

    pub fn hits_at(k: u64) -> Self {
        BuiltinMetric::HitsAt(k.max(1)).definition()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank_transform(&self) -> RankTransform {
        self.f
    }

    pub fn order(&self) -> PowerMeanOrder {
        self.p
    }

    pub fn post_transform(&self) -> PostTransform {
        self.g
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Recognizes the shipped compositions by structure, so that closed-form
    /// null statistics also apply to equivalent custom definitions.
    pub fn as_builtin(&self) -> Option<BuiltinMetric> {
        use PostTransform as G;
        use RankTransform as F;
        let p = self.p.value();
        Some(match (self.f, self.g) {
            (F::Indicator(k), G::Identity) if p == 1.0 => BuiltinMetric::HitsAt(k),
            (F::Identity, G::Identity) if p == 1.0 => BuiltinMetric::MeanRank,
            (F::Identity, G::Reciprocal) if p == -1.0 => BuiltinMetric::MeanReciprocalRank,
            (F::Reciprocal, G::Identity) if p == 1.0 => BuiltinMetric::MeanReciprocalRankColloquial,
            (F::Identity, G::Reciprocal) if p == 1.0 => BuiltinMetric::InverseMeanRank,
            (F::Identity, G::Identity) if p == -1.0 => BuiltinMetric::HarmonicMeanRank,
            (F::Identity, G::Identity) if p == 0.0 => BuiltinMetric::GeometricMeanRank,
            (F::Identity, G::Reciprocal) if p == 0.0 => BuiltinMetric::InverseGeometricMeanRank,
            _ => return None,
        })
    }

    fn check_composition(&self) -> Result<()> {
        if matches!(self.f, RankTransform::Indicator(_)) && self.p.value() <= 0.0 {
            return Err(Error::UnsupportedComposition(format!(
                "{}: the indicator transform emits zeros and cannot be aggregated with {}",
                self.name, self.p
            )));
        }
        Ok(())
    }

    /// Evaluates on validated ranks.
    pub fn evaluate(&self, ranks: &RankSet) -> Result<MetricValue> {
        self.check_composition()?;
        let r = ranks.ranks();
        Ok(MetricValue {
            value: self.evaluate_slice(&r),
            metric: self.clone(),
            n: r.len(),
        })
    }

    /// Evaluates on raw ranks; the slice must be non-empty with every rank ≥ 1
    /// and the composition must be valid.
    pub(crate) fn evaluate_slice(&self, ranks: &[f64]) -> f64 {
        let aggregated = match self.f {
            RankTransform::Indicator(k) => {
                let hits = ranks.iter().filter(|&&r| r <= k as f64).count() as f64;
                let fraction = hits / ranks.len() as f64;
                let p = self.p.value();
                if p == 1.0 {
                    fraction
                } else if p > INFINITE_ORDER_THRESHOLD {
                    if hits > 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    fraction.powf(p.recip())
                }
            }
            RankTransform::Identity => power_mean_unchecked(ranks, self.p.value()),
            RankTransform::Reciprocal => {
                let values: Vec<f64> = ranks.iter().map(|r| r.recip()).collect();
                power_mean_unchecked(&values, self.p.value())
            }
        };
        self.g.apply(aggregated)
    }
}

impl fmt::Display for MetricDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for MetricDefinition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BuiltinMetric>().map(BuiltinMetric::definition)
    }
}

/// A computed metric value.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricValue {
    pub value: f64,
    pub metric: MetricDefinition,
    pub n: usize,
}

impl MetricValue {
    /// A value obtained elsewhere, e.g. copied from a publication.
    pub fn external(metric: MetricDefinition, value: f64, n: usize) -> Self {
        MetricValue { value, metric, n }
    }
}

/// The shipped metric definitions, keyed by stable name.
#[derive(Debug, Clone)]
pub struct MetricRegistry {
    definitions: Vec<MetricDefinition>,
}

impl MetricRegistry {
    /// All shipped definitions; the parametric hits@k appears once with k = 10.
    pub fn definitions(&self) -> &[MetricDefinition] {
        &self.definitions
    }

    /// Resolves a stable name such as `mrr` or `hits@3`.
    pub fn lookup(&self, name: &str) -> Result<MetricDefinition> {
        name.parse()
    }
}

pub fn builtin_registry() -> MetricRegistry {
    let definitions = [
        BuiltinMetric::HitsAt(10),
        BuiltinMetric::MeanRank,
        BuiltinMetric::MeanReciprocalRank,
        BuiltinMetric::MeanReciprocalRankColloquial,
        BuiltinMetric::InverseMeanRank,
        BuiltinMetric::HarmonicMeanRank,
        BuiltinMetric::GeometricMeanRank,
        BuiltinMetric::InverseGeometricMeanRank,
    ]
    .into_iter()
    .map(BuiltinMetric::definition)
    .collect();
    MetricRegistry { definitions }
}
