//! Ranking tasks and score-to-rank conversion.
//!
//! A ranking task is one evaluation event: the true candidate is scored
//! together with every other candidate, candidates are sorted by descending
//! score, and the true candidate receives its 1-indexed position. In the
//! filtered setting, other known-true candidates are removed before counting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One evaluation event: the rank of the true candidate among
/// `num_candidates` scored candidates.
///
/// Ranks are real-valued so that the realistic tie policy can report
/// half-integer positions. Closed-form null statistics are exact only for
/// integer ranks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankingTask {
    pub rank: f64,
    pub num_candidates: u64,
}

impl RankingTask {
    pub fn new(rank: f64, num_candidates: u64) -> Result<Self> {
        let task = RankingTask {
            rank,
            num_candidates,
        };
        if task.is_valid() {
            Ok(task)
        } else {
            Err(Error::RankOutOfBounds { indices: vec![0] })
        }
    }

    pub fn is_valid(&self) -> bool {
        self.num_candidates >= 1
            && self.rank.is_finite()
            && self.rank >= 1.0
            && self.rank <= self.num_candidates as f64
    }
}

/// Which side of a triple was predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
    #[default]
    Unspecified,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Both => "both",
            Side::Unspecified => "unspecified",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "both" => Ok(Side::Both),
            "unspecified" => Ok(Side::Unspecified),
            other => Err(Error::InvalidArgument(format!("unknown side {other:?}"))),
        }
    }
}

/// A validated, non-empty collection of ranking tasks.
#[derive(Debug, Clone, PartialEq)]
pub struct RankSet {
    tasks: Vec<RankingTask>,
    side: Side,
}

impl RankSet {
    pub fn new(tasks: Vec<RankingTask>, side: Side) -> Result<Self> {
        if tasks.is_empty() {
            return Err(Error::EmptySet);
        }
        let bad: Vec<usize> = tasks
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_valid())
            .map(|(i, _)| i)
            .collect();
        if !bad.is_empty() {
            return Err(Error::RankOutOfBounds { indices: bad });
        }
        Ok(RankSet { tasks, side })
    }

    /// Convenience constructor from `(rank, num_candidates)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, u64)>,
    {
        let tasks = pairs
            .into_iter()
            .map(|(rank, num_candidates)| RankingTask {
                rank,
                num_candidates,
            })
            .collect();
        RankSet::new(tasks, Side::Unspecified)
    }

    pub fn tasks(&self) -> &[RankingTask] {
        &self.tasks
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }

    pub fn ranks(&self) -> Vec<f64> {
        self.tasks.iter().map(|t| t.rank).collect()
    }

    /// Candidate set sizes N₁…Nₙ, the only input the null model needs.
    pub fn sizes(&self) -> Vec<u64> {
        self.tasks.iter().map(|t| t.num_candidates).collect()
    }
}

/// Validates raw tasks into a [`RankSet`], reporting every offending index.
pub fn validate_rank_set(tasks: &[RankingTask]) -> Result<RankSet> {
    RankSet::new(tasks.to_vec(), Side::Unspecified)
}

/// How to place the true candidate among candidates with an equal score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TiePolicy {
    /// Ahead of every tied candidate.
    Optimistic,
    /// Behind every tied candidate.
    Pessimistic,
    /// Mean of the optimistic and pessimistic positions.
    #[default]
    Realistic,
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimistic" => Ok(TiePolicy::Optimistic),
            "pessimistic" => Ok(TiePolicy::Pessimistic),
            "realistic" => Ok(TiePolicy::Realistic),
            other => Err(Error::InvalidArgument(format!(
                "unknown tie policy {other:?}"
            ))),
        }
    }
}

/// Ranks the true candidate among `candidate_scores` (which include the true
/// candidate itself). Entries with `filter_mask[j] == true` are removed before
/// counting. Scores are compared with exact equality.
pub fn score_to_rank(
    true_score: f64,
    candidate_scores: &[f64],
    filter_mask: &[bool],
    tie_policy: TiePolicy,
) -> Result<RankingTask> {
    if !filter_mask.is_empty() && filter_mask.len() != candidate_scores.len() {
        return Err(Error::MaskLengthMismatch {
            scores: candidate_scores.len(),
            mask: filter_mask.len(),
        });
    }
    if !true_score.is_finite() {
        return Err(Error::InvalidScore { index: usize::MAX });
    }
    let masked = |j: usize| filter_mask.get(j).copied().unwrap_or(false);

    let mut num_candidates = 0u64;
    let mut above = 0u64;
    let mut below = 0u64;
    let mut equal = 0u64;
    for (j, &score) in candidate_scores.iter().enumerate() {
        if !score.is_finite() {
            return Err(Error::InvalidScore { index: j });
        }
        if masked(j) {
            continue;
        }
        num_candidates += 1;
        if score > true_score {
            above += 1;
        } else if score < true_score {
            below += 1;
        } else {
            equal += 1;
        }
    }
    if num_candidates == 0 {
        return Err(Error::EmptyCandidates);
    }
    if equal == 0 {
        return Err(Error::TrueCandidateMissing { score: true_score });
    }

    let optimistic = 1 + above;
    let pessimistic = num_candidates - below;
    let rank = match tie_policy {
        TiePolicy::Optimistic => optimistic as f64,
        TiePolicy::Pessimistic => pessimistic as f64,
        TiePolicy::Realistic => 0.5 * (optimistic + pessimistic) as f64,
    };
    Ok(RankingTask {
        rank,
        num_candidates,
    })
}
