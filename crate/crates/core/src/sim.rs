//! Synthetic rankers for studying how metrics depend on candidate set size.
//!
//! The Gaussian separation ranker scores the true candidate with
//! `Normal(d, 1)` and each of the `N − 1` other candidates with
//! `Normal(0, 1)`. Its skill `d` does not depend on `N`, but its raw ranks
//! do, which is exactly the size effect the adjusted metrics remove.

use std::fmt;

use rand::Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};
use rayon::prelude::*;

use crate::adjustments::{evaluate_adjusted, phi};
use crate::error::{Error, Result};
use crate::io::RankRecord;
use crate::metrics::MetricDefinition;
use crate::null_models::NullOptions;
use crate::ranking::{score_to_rank, RankSet, Side, TiePolicy};
use crate::report::{ResultRow, ResultTable};
use crate::rng;

/// Entity counts of four common link prediction benchmarks, smallest first.
pub const BENCHMARK_SIZES: [u64; 4] = [14, 104, 14_505, 40_559];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankerKind {
    /// Always rank 1.
    Oracle,
    /// Rank uniform on 1..=N.
    UniformRandom,
    /// True score ~ Normal(d, 1), negatives ~ Normal(0, 1).
    GaussianSeparation { d: f64 },
}

impl RankerKind {
    fn tag(&self) -> u64 {
        match self {
            RankerKind::Oracle => 1,
            RankerKind::UniformRandom => 2,
            RankerKind::GaussianSeparation { d } => 3 ^ d.to_bits().rotate_left(7),
        }
    }
}

impl fmt::Display for RankerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankerKind::Oracle => f.write_str("oracle"),
            RankerKind::UniformRandom => f.write_str("uniform_random"),
            RankerKind::GaussianSeparation { d } => write!(f, "gaussian_separation:d={d}"),
        }
    }
}

impl std::str::FromStr for RankerKind {
    type Err = Error;

    /// Accepts `oracle`, `uniform_random`, `gaussian:<d>` or
    /// `gaussian_separation:d=<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown ranker {s:?}"));
        match s {
            "oracle" => Ok(RankerKind::Oracle),
            "uniform" | "uniform_random" => Ok(RankerKind::UniformRandom),
            other => {
                let rest = other
                    .strip_prefix("gaussian_separation:")
                    .or_else(|| other.strip_prefix("gaussian:"))
                    .ok_or_else(bad)?;
                let d: f64 = rest.trim_start_matches("d=").parse().map_err(|_| bad())?;
                if !(d >= 0.0) || !d.is_finite() {
                    return Err(bad());
                }
                Ok(RankerKind::GaussianSeparation { d })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticRankerSpec {
    pub kind: RankerKind,
    pub num_tasks: usize,
    pub candidate_size: u64,
    pub seed: u64,
}

impl SyntheticRankerSpec {
    fn validate(&self) -> Result<()> {
        if self.num_tasks == 0 {
            return Err(Error::InvalidArgument("num_tasks must be >= 1".into()));
        }
        if self.candidate_size == 0 {
            return Err(Error::InvalidSize(0));
        }
        Ok(())
    }

    fn cell_seed(&self) -> u64 {
        rng::mix(rng::mix(self.seed, self.kind.tag()), self.candidate_size)
    }

    pub fn label(&self) -> String {
        format!("{}:N={}", self.kind, self.candidate_size)
    }
}

/// Draws one rank per task. Gaussian ranks are sampled as
/// `1 + Binomial(N − 1, P(Z > t))` given the true score `t`, which has the
/// same distribution as counting `N − 1` explicit negatives above `t`.
pub fn sample_ranks(spec: &SyntheticRankerSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let n = spec.candidate_size;
    let seed = spec.cell_seed();
    let ranks = (0..spec.num_tasks as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(seed, i);
            match spec.kind {
                RankerKind::Oracle => 1.0,
                RankerKind::UniformRandom => rng.random_range(1..=n) as f64,
                RankerKind::GaussianSeparation { d } => {
                    let t: f64 = d + rng.sample::<f64, _>(StandardNormal);
                    let p_above = phi(-t);
                    let above = Binomial::new(n - 1, p_above)
                        .expect("probability in [0, 1]")
                        .sample(&mut rng);
                    1.0 + above as f64
                }
            }
        })
        .collect();
    Ok(ranks)
}

/// Gaussian separation ranks from explicitly drawn candidate scores, ranked
/// with `tie_policy`. Costs O(N) per task; meant for small N.
pub fn sample_ranks_explicit(
    spec: &SyntheticRankerSpec,
    tie_policy: TiePolicy,
) -> Result<Vec<f64>> {
    spec.validate()?;
    let RankerKind::GaussianSeparation { d } = spec.kind else {
        return sample_ranks(spec);
    };
    let seed = rng::mix(spec.cell_seed(), 0xE7);
    (0..spec.num_tasks as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(seed, i);
            let mut scores = Vec::with_capacity(spec.candidate_size as usize);
            let true_score: f64 = d + rng.sample::<f64, _>(StandardNormal);
            scores.push(true_score);
            scores.extend((1..spec.candidate_size).map(|_| rng.sample::<f64, _>(StandardNormal)));
            score_to_rank(true_score, &scores, &[], tie_policy).map(|t| t.rank)
        })
        .collect()
}

/// A grid of ranker kinds by candidate set sizes.
#[derive(Debug, Clone)]
pub struct SimulationGrid {
    pub kinds: Vec<RankerKind>,
    pub sizes: Vec<u64>,
    pub num_tasks: usize,
    pub seed: u64,
    pub metrics: Vec<MetricDefinition>,
    pub null_options: NullOptions,
}

/// Output of [`simulate`]: a long-format table and the raw ranks per cell.
#[derive(Debug, Clone)]
pub struct SimulationOutput {
    pub table: ResultTable,
    pub ranks: Vec<(String, Vec<RankRecord>)>,
}

/// Runs every (kind, size) cell. Rows are ordered by kind, then size, then
/// metric regardless of how the cells were scheduled.
pub fn simulate(grid: &SimulationGrid) -> Result<SimulationOutput> {
    let cells: Vec<SyntheticRankerSpec> = grid
        .kinds
        .iter()
        .flat_map(|&kind| {
            grid.sizes
                .iter()
                .map(move |&candidate_size| SyntheticRankerSpec {
                    kind,
                    num_tasks: grid.num_tasks,
                    candidate_size,
                    seed: grid.seed,
                })
        })
        .collect();

    let results: Vec<Result<(Vec<ResultRow>, (String, Vec<RankRecord>))>> = cells
        .par_iter()
        .map(|spec| {
            let ranks = sample_ranks(spec)?;
            let label = spec.label();
            let set = RankSet::from_pairs(ranks.iter().map(|&r| (r, spec.candidate_size)))?;
            let rows = grid
                .metrics
                .iter()
                .map(
                    |metric| match evaluate_adjusted(metric, &set, &grid.null_options) {
                        Ok(adjusted) => Ok(ResultRow::from_adjusted(label.clone(), &adjusted)),
                        Err(e @ Error::NoClosedForm(_)) | Err(e @ Error::DegenerateSize) => {
                            let base = metric.evaluate(&set)?;
                            Ok(ResultRow::base_only(
                                label.clone(),
                                metric.name(),
                                set.len(),
                                base.value,
                                &e,
                            ))
                        }
                        Err(e) => Err(e),
                    },
                )
                .collect::<Result<Vec<_>>>()?;
            let records = ranks
                .iter()
                .map(|&rank| RankRecord {
                    rank,
                    num_candidates: spec.candidate_size,
                    side: Some(Side::Right),
                })
                .collect();
            Ok((rows, (label, records)))
        })
        .collect();

    let mut output = SimulationOutput {
        table: ResultTable::default(),
        ranks: Vec::with_capacity(cells.len()),
    };
    for result in results {
        let (rows, ranks) = result?;
        output.table.rows.extend(rows);
        output.ranks.push(ranks);
    }
    Ok(output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::null_models::reciprocal_rank_moments;

    fn spec(kind: RankerKind, n: usize, size: u64, seed: u64) -> SyntheticRankerSpec {
        SyntheticRankerSpec {
            kind,
            num_tasks: n,
            candidate_size: size,
            seed,
        }
    }

    #[test]
    fn oracle_and_uniform() {
        let r = sample_ranks(&spec(RankerKind::Oracle, 50, 40_559, 1)).unwrap();
        assert!(r.iter().all(|&x| x == 1.0));
        let r = sample_ranks(&spec(RankerKind::UniformRandom, 10_000, 14, 2)).unwrap();
        assert!(r
            .iter()
            .all(|&x| (1.0..=14.0).contains(&x) && x.fract() == 0.0));
        let mrr = r.iter().map(|x| 1.0 / x).sum::<f64>() / r.len() as f64;
        let (e, v) = reciprocal_rank_moments(14);
        assert!((mrr - e).abs() <= 3.0 * (v / 1e4).sqrt());
    }

    #[test]
    fn deterministic() {
        let s = spec(RankerKind::GaussianSeparation { d: 2.0 }, 500, 1000, 9);
        assert_eq!(sample_ranks(&s).unwrap(), sample_ranks(&s).unwrap());
        let other = SyntheticRankerSpec { seed: 10, ..s };
        assert_ne!(sample_ranks(&s).unwrap(), sample_ranks(&other).unwrap());
    }

    #[test]
    fn binomial_sampling_matches_explicit_negatives() {
        // both routes estimate E[1/r]; compare within a joint 4-sigma band
        for (d, size) in [(0.0, 20u64), (1.0, 50), (2.0, 200)] {
            let s = spec(RankerKind::GaussianSeparation { d }, 20_000, size, 3);
            let fast = sample_ranks(&s).unwrap();
            let slow = sample_ranks_explicit(&s, TiePolicy::Realistic).unwrap();
            let stats = |r: &[f64]| {
                let xs: Vec<f64> = r.iter().map(|x| 1.0 / x).collect();
                crate::null_models::sample_mean_variance(&xs)
            };
            let ((m1, v1), (m2, v2)) = (stats(&fast), stats(&slow));
            let se = ((v1 + v2) / 20_000.0).sqrt();
            assert!((m1 - m2).abs() <= 4.0 * se, "d={d} N={size}: {m1} vs {m2}");
            let mean = |r: &[f64]| r.iter().sum::<f64>() / r.len() as f64;
            assert!((mean(&fast) - mean(&slow)).abs() <= 0.05 * mean(&slow) + 0.05);
        }
    }

    #[test]
    fn zero_separation_is_uniform() {
        let s = spec(RankerKind::GaussianSeparation { d: 0.0 }, 20_000, 10, 5);
        let r = sample_ranks(&s).unwrap();
        let mut counts = [0usize; 10];
        for x in r {
            counts[x as usize - 1] += 1;
        }
        for c in counts {
            assert!(
                (c as f64 - 2000.0).abs() < 4.0 * (2000.0f64 * 0.9).sqrt() + 1.0,
                "{counts:?}"
            );
        }
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("oracle".parse::<RankerKind>().unwrap(), RankerKind::Oracle);
        assert_eq!(
            "gaussian:2".parse::<RankerKind>().unwrap(),
            RankerKind::GaussianSeparation { d: 2.0 }
        );
        assert_eq!(
            "gaussian_separation:d=0.5".parse::<RankerKind>().unwrap(),
            RankerKind::GaussianSeparation { d: 0.5 }
        );
        assert!("gaussian:-1".parse::<RankerKind>().is_err());
        assert!("sometimes".parse::<RankerKind>().is_err());
    }

    #[test]
    fn simulate_grid_is_ordered() {
        let grid = SimulationGrid {
            kinds: vec![RankerKind::Oracle, RankerKind::UniformRandom],
            sizes: vec![14, 104],
            num_tasks: 200,
            seed: 1,
            metrics: vec!["mrr".parse().unwrap(), "mr".parse().unwrap()],
            null_options: NullOptions::default(),
        };
        let out = simulate(&grid).unwrap();
        let labels: Vec<(&str, &str)> = out
            .table
            .rows
            .iter()
            .map(|r| (r.label.as_str(), r.metric.as_str()))
            .collect();
        assert_eq!(
            labels,
            [
                ("oracle:N=14", "mrr"),
                ("oracle:N=14", "mr"),
                ("oracle:N=104", "mrr"),
                ("oracle:N=104", "mr"),
                ("uniform_random:N=14", "mrr"),
                ("uniform_random:N=14", "mr"),
                ("uniform_random:N=104", "mrr"),
                ("uniform_random:N=104", "mr"),
            ]
        );
        for row in &out.table.rows[..4] {
            assert_eq!(row.value, 1.0);
            assert_eq!(row.adjusted_index, Some(1.0));
        }
        assert_eq!(out.ranks.len(), 4);
    }
}
