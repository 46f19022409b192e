//! Metric statistics under random predictions.
//!
//! The null model draws each rank independently and uniformly,
//! `rᵢ ~ U{1, …, Nᵢ}`. Closed forms exist for MR, MRR and hits@k; every other
//! composition is estimated by Monte Carlo.
//!
//! Variances are variances of the *mean* over tasks, i.e. they carry a
//! `1/n²` factor in front of the per-task sum.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::metrics::{BuiltinMetric, MetricDefinition};
use crate::rng;

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0;

/// How a [`NullStatistics`] value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NullMethod {
    ClosedExact,
    ClosedPaperContinuous,
    MonteCarlo,
}

impl NullMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NullMethod::ClosedExact => "closed_exact",
            NullMethod::ClosedPaperContinuous => "closed_paper_continuous",
            NullMethod::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for NullMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NullMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_exact" => Ok(NullMethod::ClosedExact),
            "closed_paper_continuous" => Ok(NullMethod::ClosedPaperContinuous),
            "monte_carlo" => Ok(NullMethod::MonteCarlo),
            other => Err(Error::InvalidArgument(format!(
                "unknown null method {other:?}"
            ))),
        }
    }
}

/// Which expectation of the reciprocal rank to use for MRR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MrrMode {
    /// `H(N)/N`, exact for discrete uniform ranks.
    #[default]
    ExactDiscrete,
    /// `ln N / (N − 1)`, the continuous inverse-uniform approximation.
    PaperContinuous,
}

impl FromStr for MrrMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact_discrete" | "exact" => Ok(MrrMode::ExactDiscrete),
            "paper_continuous" | "continuous" => Ok(MrrMode::PaperContinuous),
            other => Err(Error::InvalidArgument(format!(
                "unknown mrr mode {other:?}"
            ))),
        }
    }
}

/// Expectation and variance of a metric under the null model.
#[derive(Debug, Clone, PartialEq)]
pub struct NullStatistics {
    pub expectation: f64,
    pub variance: f64,
    pub method: NullMethod,
    /// Zero for closed forms.
    pub samples: u64,
    /// Only meaningful for Monte Carlo.
    pub seed: u64,
    pub metric_name: String,
    pub sizes_digest: String,
}

impl NullStatistics {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    /// Null statistics supplied by hand, e.g. copied from a publication.
    pub fn external(metric_name: impl Into<String>, expectation: f64, variance: f64) -> Self {
        NullStatistics {
            expectation,
            variance,
            method: NullMethod::ClosedExact,
            samples: 0,
            seed: 0,
            metric_name: metric_name.into(),
            sizes_digest: String::new(),
        }
    }
}

/// Monte Carlo settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// Options for [`null_statistics`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NullOptions {
    pub mrr_mode: MrrMode,
    pub monte_carlo: MonteCarloConfig,
}

/// `E[r] = (N + 1) / 2`.
pub fn expected_rank(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidSize(n));
    }
    Ok((n as f64 + 1.0) / 2.0)
}

/// `Var[r] = (N² − 1) / 12`.
pub fn rank_variance(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidSize(n));
    }
    let n = n as f64;
    Ok((n * n - 1.0) / 12.0)
}

/// Content hash of the size sequence N₁…Nₙ (SHA-256 of little-endian u64s).
pub fn sizes_digest(sizes: &[u64]) -> String {
    let mut hasher = Sha256::new();
    for n in sizes {
        hasher.update(n.to_le_bytes());
    }
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

fn check_sizes(sizes: &[u64]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::EmptyInput("no candidate set sizes".into()));
    }
    if let Some(&bad) = sizes.iter().find(|&&n| n == 0) {
        return Err(Error::InvalidSize(bad));
    }
    Ok(())
}

/// Distinct sizes with multiplicities; per-task moments only depend on Nᵢ.
fn size_histogram(sizes: &[u64]) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for &n in sizes {
        *hist.entry(n).or_insert(0) += 1;
    }
    hist
}

/// Mean and variance of (1/n)·ΣXᵢ for independent Xᵢ with the given
/// per-task moments.
fn mean_of_independent<F>(sizes: &[u64], per_task: F) -> Result<(f64, f64)>
where
    F: Fn(u64) -> Result<(f64, f64)>,
{
    let n = sizes.len() as f64;
    let mut expectation = 0.0;
    let mut variance = 0.0;
    for (size, count) in size_histogram(sizes) {
        let (e, v) = per_task(size)?;
        expectation += count as f64 * e;
        variance += count as f64 * v;
    }
    Ok((expectation / n, variance / (n * n)))
}

/// Exact moments of 1/r for r ~ U{1..N}: `(H(N)/N, (1/N)Σ1/j² − (H(N)/N)²)`.
pub fn reciprocal_rank_moments(n: u64) -> (f64, f64) {
    let mut h1 = 0.0;
    let mut h2 = 0.0;
    // smallest terms first
    for j in (1..=n).rev() {
        let inv = 1.0 / j as f64;
        h1 += inv;
        h2 += inv * inv;
    }
    let size = n as f64;
    let mean = h1 / size;
    (mean, (h2 / size - mean * mean).max(0.0))
}

/// Continuous inverse-uniform approximation: `(ln N/(N−1), 1/N − (ln N/(N−1))²)`.
pub fn reciprocal_rank_moments_continuous(n: u64) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::DegenerateSize);
    }
    let size = n as f64;
    let mean = size.ln() / (size - 1.0);
    Ok((mean, (1.0 / size - mean * mean).max(0.0)))
}

/// Probability that r ~ U{1..N} satisfies r ≤ k.
fn hit_probability(k: u64, n: u64) -> f64 {
    k.min(n) as f64 / n as f64
}

/// Closed-form null statistics for MR, MRR (both forms) and hits@k.
pub fn null_statistics_closed(
    metric: &MetricDefinition,
    sizes: &[u64],
    mrr_mode: MrrMode,
) -> Result<NullStatistics> {
    check_sizes(sizes)?;
    let kind = metric
        .as_builtin()
        .ok_or_else(|| Error::NoClosedForm(metric.name().to_string()))?;
    let mut method = NullMethod::ClosedExact;
    let (expectation, variance) = match kind {
        BuiltinMetric::MeanRank => {
            mean_of_independent(sizes, |n| Ok((expected_rank(n)?, rank_variance(n)?)))?
        }
        BuiltinMetric::HitsAt(k) => mean_of_independent(sizes, |n| {
            let q = hit_probability(k, n);
            Ok((q, q * (1.0 - q)))
        })?,
        BuiltinMetric::MeanReciprocalRank | BuiltinMetric::MeanReciprocalRankColloquial => {
            match mrr_mode {
                MrrMode::ExactDiscrete => {
                    mean_of_independent(sizes, |n| Ok(reciprocal_rank_moments(n)))?
                }
                MrrMode::PaperContinuous => {
                    method = NullMethod::ClosedPaperContinuous;
                    mean_of_independent(sizes, reciprocal_rank_moments_continuous)?
                }
            }
        }
        _ => return Err(Error::NoClosedForm(metric.name().to_string())),
    };
    Ok(NullStatistics {
        expectation,
        variance,
        method,
        samples: 0,
        seed: 0,
        metric_name: metric.name().to_string(),
        sizes_digest: sizes_digest(sizes),
    })
}

/// Monte Carlo null statistics: `samples` replicates, each drawing one rank
/// per task. Replicate `j` uses stream `j` of `seed`, and the reduction runs
/// in replicate order, so the result does not depend on thread scheduling.
pub fn null_statistics_monte_carlo(
    metric: &MetricDefinition,
    sizes: &[u64],
    samples: usize,
    seed: u64,
) -> Result<NullStatistics> {
    if samples < 2 {
        return Err(Error::InsufficientSamples(samples));
    }
    check_sizes(sizes)?;
    // rejects e.g. indicator with p <= 0
    metric.evaluate(&crate::ranking::RankSet::from_pairs([(1.0, 1)])?)?;

    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(sizes.len()),
            |ranks, j| {
                let mut rng = rng::stream(seed, j);
                ranks.clear();
                ranks.extend(sizes.iter().map(|&n| rng.random_range(1..=n) as f64));
                metric.evaluate_slice(ranks)
            },
        )
        .collect();
    let (expectation, variance) = sample_mean_variance(&values);
    Ok(NullStatistics {
        expectation,
        variance,
        method: NullMethod::MonteCarlo,
        samples: samples as u64,
        seed,
        metric_name: metric.name().to_string(),
        sizes_digest: sizes_digest(sizes),
    })
}

/// Sample mean and unbiased sample variance (two-pass).
pub(crate) fn sample_mean_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (
        mean,
        if values.len() > 1 {
            ss / (n - 1.0)
        } else {
            0.0
        },
    )
}

/// Closed form when one exists, Monte Carlo otherwise.
pub fn null_statistics(
    metric: &MetricDefinition,
    sizes: &[u64],
    options: &NullOptions,
) -> Result<NullStatistics> {
    match null_statistics_closed(metric, sizes, options.mrr_mode) {
        Err(Error::NoClosedForm(_)) => null_statistics_monte_carlo(
            metric,
            sizes,
            options.monte_carlo.samples,
            options.monte_carlo.seed,
        ),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metric(name: &str) -> MetricDefinition {
        name.parse().unwrap()
    }

    fn brute_moments(n: u64, f: impl Fn(f64) -> f64) -> (f64, f64) {
        let xs: Vec<f64> = (1..=n).map(|r| f(r as f64)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        (mean, var)
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()) + 1e-300
    }

    #[test]
    fn rank_moments_match_brute_force() {
        for n in [1u64, 2, 14, 100] {
            let (e, v) = brute_moments(n, |r| r);
            assert!(close(expected_rank(n).unwrap(), e, 1e-15));
            assert!(close(rank_variance(n).unwrap(), v, 1e-12));
        }
        assert_eq!(expected_rank(14).unwrap(), 7.5);
        assert_eq!(expected_rank(1).unwrap(), 1.0);
        assert_eq!(expected_rank(100).unwrap(), 50.5);
        assert_eq!(rank_variance(1).unwrap(), 0.0);
        assert_eq!(rank_variance(2).unwrap(), 0.25);
        assert_eq!(rank_variance(14).unwrap(), 16.25);
        assert_eq!(expected_rank(0).unwrap_err().code(), "invalid-size");
        assert_eq!(rank_variance(0).unwrap_err().code(), "invalid-size");
    }

    #[test]
    fn reciprocal_moments_match_brute_force() {
        for n in [1u64, 2, 5, 14, 333] {
            let (e, v) = brute_moments(n, f64::recip);
            let (ce, cv) = reciprocal_rank_moments(n);
            assert!(close(ce, e, 1e-13), "n={n}");
            assert!(close(cv, v, 1e-11), "n={n}");
        }
        let (e14, v14) = reciprocal_rank_moments(14);
        let h14: f64 = (1..=14).map(|j| 1.0 / j as f64).sum();
        let h14_2: f64 = (1..=14).map(|j| 1.0 / (j * j) as f64).sum();
        assert!((e14 - 0.232254).abs() < 1e-6);
        assert!(close(v14, h14_2 / 14.0 - (h14 / 14.0).powi(2), 1e-12));
    }

    #[test]
    fn closed_form_examples() {
        let mrr = metric("mrr");
        let s = null_statistics_closed(&mrr, &[2], MrrMode::ExactDiscrete).unwrap();
        assert_eq!(s.expectation, 0.75);
        assert_eq!(s.method, NullMethod::ClosedExact);
        let s = null_statistics_closed(&mrr, &[2], MrrMode::PaperContinuous).unwrap();
        assert!(close(s.expectation, std::f64::consts::LN_2, 1e-15));
        assert_eq!(s.method, NullMethod::ClosedPaperContinuous);

        let hits = metric("hits@10");
        for n in [1usize, 7, 250] {
            let s = null_statistics_closed(&hits, &vec![100; n], MrrMode::default()).unwrap();
            assert!(close(s.expectation, 0.1, 1e-14));
        }

        let mr = metric("mr");
        let s = null_statistics_closed(&mr, &[14, 14], MrrMode::default()).unwrap();
        // brute force over all 196 rank pairs
        let mut vals = Vec::new();
        for a in 1..=14 {
            for b in 1..=14 {
                vals.push((a + b) as f64 / 2.0);
            }
        }
        let mean = vals.iter().sum::<f64>() / 196.0;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 196.0;
        assert!(close(s.expectation, mean, 1e-15) && s.expectation == 7.5);
        assert!(close(s.variance, var, 1e-13) && close(s.variance, 8.125, 1e-15));
    }

    #[test]
    fn hits_saturates() {
        let s =
            null_statistics_closed(&metric("hits@10"), &[3, 10, 7], MrrMode::default()).unwrap();
        assert_eq!((s.expectation, s.variance), (1.0, 0.0));
    }

    #[test]
    fn expectation_of_mr_ignores_task_count() {
        let mr = metric("mr");
        let one = null_statistics_closed(&mr, &[40], MrrMode::default()).unwrap();
        let many = null_statistics_closed(&mr, &[40; 64], MrrMode::default()).unwrap();
        assert_eq!(one.expectation, many.expectation);
        assert!(close(one.variance / 64.0, many.variance, 1e-14));
    }

    #[test]
    fn closed_form_errors() {
        for name in ["gmr", "igmr", "hmr", "imr"] {
            let err = null_statistics_closed(&metric(name), &[5], MrrMode::default()).unwrap_err();
            assert_eq!(err.code(), "no-closed-form");
        }
        let err =
            null_statistics_closed(&metric("mrr"), &[1, 4], MrrMode::PaperContinuous).unwrap_err();
        assert_eq!(err.code(), "degenerate-size");
        assert_eq!(
            null_statistics_closed(&metric("mr"), &[], MrrMode::default())
                .unwrap_err()
                .code(),
            "empty-input"
        );
        assert_eq!(
            null_statistics_closed(&metric("mr"), &[3, 0], MrrMode::default())
                .unwrap_err()
                .code(),
            "invalid-size"
        );
    }

    #[test]
    fn approximation_gap() {
        let mrr = metric("mrr");
        let at = |n: u64, mode| {
            null_statistics_closed(&mrr, &[n], mode)
                .unwrap()
                .expectation
        };
        // H(N) ~ ln N + gamma, so the relative gap only decays like gamma / ln N
        let euler_gamma = 0.5772156649015329;
        for n in [10_000u64, 40_559] {
            let exact = at(n, MrrMode::ExactDiscrete);
            let continuous = at(n, MrrMode::PaperContinuous);
            let gap = (exact - continuous) / exact;
            let predicted = euler_gamma / ((n as f64).ln() + euler_gamma);
            assert!((gap - predicted).abs() < 1e-3, "n={n} gap={gap}");
        }
        assert!(at(2, MrrMode::ExactDiscrete) - at(2, MrrMode::PaperContinuous) > 0.05);
    }

    #[test]
    fn monte_carlo_examples() {
        let mr = metric("mr");
        let sizes = vec![100; 1000];
        let s = null_statistics_monte_carlo(&mr, &sizes, 10_000, 1).unwrap();
        let closed = null_statistics_closed(&mr, &sizes, MrrMode::default()).unwrap();
        let se = (closed.variance / 10_000.0).sqrt();
        assert!((s.expectation - 50.5).abs() <= 3.0 * se);
        assert!(close(s.variance, closed.variance, 0.1));
        assert_eq!(s.method, NullMethod::MonteCarlo);
        assert_eq!((s.samples, s.seed), (10_000, 1));

        let g = null_statistics_monte_carlo(&metric("gmr"), &[1; 5], 50, 99).unwrap();
        assert_eq!((g.expectation, g.variance), (1.0, 0.0));

        let m = null_statistics_monte_carlo(&metric("mrr"), &[2], 100_000, 5).unwrap();
        let se = (0.0625f64 / 100_000.0).sqrt();
        assert!((m.expectation - 0.75).abs() <= 3.0 * se);
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let gmr = metric("gmr");
        let sizes: Vec<u64> = (1..200).collect();
        let a = null_statistics_monte_carlo(&gmr, &sizes, 500, 11).unwrap();
        let b = null_statistics_monte_carlo(&gmr, &sizes, 500, 11).unwrap();
        let c = null_statistics_monte_carlo(&gmr, &sizes, 500, 12).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.expectation.to_bits(), b.expectation.to_bits());
        assert_ne!(a.expectation, c.expectation);
        let serial = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let d = serial.install(|| null_statistics_monte_carlo(&gmr, &sizes, 500, 11).unwrap());
        assert_eq!(a, d);
    }

    #[test]
    fn monte_carlo_variance_matches_one_over_n_scaling() {
        let mr = metric("mr");
        for n in [1usize, 10, 100] {
            let sizes = vec![50; n];
            let mc = null_statistics_monte_carlo(&mr, &sizes, 20_000, 3).unwrap();
            let closed = null_statistics_closed(&mr, &sizes, MrrMode::default()).unwrap();
            assert!(close(mc.variance, closed.variance, 0.05), "n={n}");
            // the literal 1/n scaling would be off by a factor n
            if n > 1 {
                assert!(!close(mc.variance, closed.variance * n as f64, 0.5));
            }
        }
    }

    #[test]
    fn monte_carlo_errors() {
        assert_eq!(
            null_statistics_monte_carlo(&metric("mr"), &[4], 1, 0)
                .unwrap_err()
                .code(),
            "insufficient-samples"
        );
        assert_eq!(
            null_statistics_monte_carlo(&metric("mr"), &[], 10, 0)
                .unwrap_err()
                .code(),
            "empty-input"
        );
    }

    #[test]
    fn dispatch_prefers_closed_forms() {
        let opts = NullOptions {
            monte_carlo: MonteCarloConfig {
                samples: 100,
                seed: 4,
            },
            ..Default::default()
        };
        let s = null_statistics(&metric("mr"), &[10], &opts).unwrap();
        assert_eq!(s.method, NullMethod::ClosedExact);
        let s = null_statistics(&metric("hmr"), &[10], &opts).unwrap();
        assert_eq!(
            (s.method, s.samples, s.seed),
            (NullMethod::MonteCarlo, 100, 4)
        );
    }

    #[test]
    fn digest_is_order_sensitive() {
        assert_eq!(sizes_digest(&[1, 2]), sizes_digest(&[1, 2]));
        assert_ne!(sizes_digest(&[1, 2]), sizes_digest(&[2, 1]));
        assert!(sizes_digest(&[14]).starts_with("sha256:"));
    }
}
