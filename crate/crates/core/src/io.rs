//! Rank and score file formats.
//!
//! Ranks: JSON lines `{"rank": 3, "num_candidates": 14, "side": "left"}`
//! (side optional), or CSV with header `rank,num_candidates[,side]`.
//!
//! Scores: JSON lines
//! `{"true_score": 0.7, "candidate_scores": [..], "mask": [..]}` where
//! `candidate_scores` includes the true candidate and `mask` (optional) marks
//! filtered candidates.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::{score_to_rank, RankSet, RankingTask, Side, TiePolicy};

/// One parsed line of a ranks file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankRecord {
    pub rank: f64,
    pub num_candidates: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

impl RankRecord {
    pub fn task(&self) -> RankingTask {
        RankingTask {
            rank: self.rank,
            num_candidates: self.num_candidates,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankFormat {
    JsonLines,
    Csv,
}

impl RankFormat {
    /// Guesses from the first non-blank line: JSON objects start with `{`.
    pub fn sniff(first_line: &str) -> Self {
        if first_line.trim_start().starts_with('{') {
            RankFormat::JsonLines
        } else {
            RankFormat::Csv
        }
    }
}

fn parse_err(source_name: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        source_name: source_name.to_string(),
        line,
        message: message.into(),
    }
}

/// Reads a ranks file in either format.
pub fn read_rank_records<R: BufRead>(reader: R, source_name: &str) -> Result<Vec<RankRecord>> {
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::storage(format!("reading {source_name}"), e))?;
        if !line.trim().is_empty() {
            lines.push((i + 1, line));
        }
    }
    let Some((_, first)) = lines.first() else {
        return Err(Error::EmptyInput(format!(
            "{source_name} contains no ranks"
        )));
    };
    let format = RankFormat::sniff(first);
    let records = match format {
        RankFormat::JsonLines => lines
            .iter()
            .map(|(no, line)| {
                serde_json::from_str::<RankRecord>(line)
                    .map_err(|e| parse_err(source_name, *no, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?,
        RankFormat::Csv => parse_rank_csv(&lines, source_name)?,
    };
    let data_lines = match format {
        RankFormat::JsonLines => &lines[..],
        RankFormat::Csv => &lines[1..],
    };
    for (record, (no, _)) in records.iter().zip(data_lines) {
        if !record.task().is_valid() {
            return Err(parse_err(
                source_name,
                *no,
                format!(
                    "rank-out-of-bounds: rank {} with {} candidates",
                    record.rank, record.num_candidates
                ),
            ));
        }
    }
    Ok(records)
}

fn parse_rank_csv(lines: &[(usize, String)], source_name: &str) -> Result<Vec<RankRecord>> {
    let (header_no, header) = &lines[0];
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let has_side = match columns.as_slice() {
        ["rank", "num_candidates"] => false,
        ["rank", "num_candidates", "side"] => true,
        _ => {
            return Err(parse_err(
                source_name,
                *header_no,
                "expected header rank,num_candidates[,side]",
            ))
        }
    };
    lines[1..]
        .iter()
        .map(|(no, line)| {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != columns.len() {
                return Err(parse_err(
                    source_name,
                    *no,
                    format!("expected {} fields, found {}", columns.len(), fields.len()),
                ));
            }
            let rank = fields[0]
                .parse::<f64>()
                .map_err(|e| parse_err(source_name, *no, format!("rank: {e}")))?;
            let num_candidates = fields[1]
                .parse::<u64>()
                .map_err(|e| parse_err(source_name, *no, format!("num_candidates: {e}")))?;
            let side = if has_side && !fields[2].is_empty() {
                Some(
                    fields[2]
                        .parse::<Side>()
                        .map_err(|e| parse_err(source_name, *no, e.to_string()))?,
                )
            } else {
                None
            };
            Ok(RankRecord {
                rank,
                num_candidates,
                side,
            })
        })
        .collect()
}

/// Builds a rank set from records, keeping only `side` when given.
pub fn rank_set(records: &[RankRecord], side: Option<Side>) -> Result<RankSet> {
    let tasks: Vec<RankingTask> = records
        .iter()
        .filter(|r| side.is_none_or(|s| r.side == Some(s)))
        .map(RankRecord::task)
        .collect();
    let label = match side {
        Some(s) => s,
        None => {
            let mut sides = records.iter().map(|r| r.side);
            match sides.next().flatten() {
                Some(first) if sides.all(|s| s == Some(first)) => first,
                _ if records.iter().all(|r| r.side.is_some()) => Side::Both,
                _ => Side::Unspecified,
            }
        }
    };
    RankSet::new(tasks, label)
}

/// Writes JSON lines, one task per line.
pub fn write_rank_records<W: Write>(mut out: W, records: &[RankRecord]) -> Result<()> {
    for record in records {
        let line = serde_json::to_string(record).expect("rank records serialize");
        writeln!(out, "{line}").map_err(|e| Error::storage("writing ranks", e))?;
    }
    Ok(())
}

/// One line of a scores file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub true_score: f64,
    pub candidate_scores: Vec<f64>,
    #[serde(default)]
    pub mask: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

pub fn read_score_records<R: BufRead>(reader: R, source_name: &str) -> Result<Vec<ScoreRecord>> {
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::storage(format!("reading {source_name}"), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ScoreRecord = serde_json::from_str(&line)
            .map_err(|e| parse_err(source_name, i + 1, e.to_string()))?;
        records.push((i + 1, record));
    }
    if records.is_empty() {
        return Err(Error::EmptyInput(format!(
            "{source_name} contains no scores"
        )));
    }
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

/// Ranks every line of a scores file.
pub fn rank_scores(records: &[ScoreRecord], tie_policy: TiePolicy) -> Result<Vec<RankRecord>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no score records".into()));
    }
    records
        .iter()
        .map(|r| {
            let task = score_to_rank(r.true_score, &r.candidate_scores, &r.mask, tie_policy)?;
            Ok(RankRecord {
                rank: task.rank,
                num_candidates: task.num_candidates,
                side: r.side,
            })
        })
        .collect()
}
