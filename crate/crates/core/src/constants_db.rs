//! Flat-file database of precomputed null statistics.
//!
//! One JSON object per line, keyed by (dataset, split, side, metric):
//!
//! ```text
//! {"dataset":"nations","split":"test","side":"both","metric":"mr","expectation":7.5000000000000000e0,"variance":...,"method":"closed_exact","samples":0,"seed":0,"sizes_digest":"sha256:...","n":201,"min_N":14,"max_N":14}
//! ```
//!
//! Floats carry 17 significant digits, so values survive a round trip
//! bit for bit. The sizes themselves are not stored, only their digest and
//! a summary. Writes go to a temporary file that is renamed over the
//! database.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metrics::MetricDefinition;
use crate::null_models::{null_statistics, sizes_digest, NullMethod, NullOptions, NullStatistics};
use crate::ranking::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Split {
    Train,
    Test,
    Validation,
    Custom,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
            Split::Validation => "validation",
            Split::Custom => "custom",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" | "training" => Ok(Split::Train),
            "test" | "testing" => Ok(Split::Test),
            "validation" | "valid" => Ok(Split::Validation),
            "custom" => Ok(Split::Custom),
            other => Err(Error::InvalidArgument(format!("unknown split {other:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for Split {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Summary of the sizes a record was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeSummary {
    pub n: u64,
    pub min_n: u64,
    pub max_n: u64,
}

impl SizeSummary {
    pub fn of(sizes: &[u64]) -> Self {
        SizeSummary {
            n: sizes.len() as u64,
            min_n: sizes.iter().copied().min().unwrap_or(0),
            max_n: sizes.iter().copied().max().unwrap_or(0),
        }
    }

    /// True when the tasks do not all share one candidate set size.
    pub fn distinct_sizes(&self) -> bool {
        self.min_n != self.max_n
    }
}

/// One database entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsRecord {
    pub dataset: String,
    pub split: Split,
    pub side: Side,
    pub metric_name: String,
    pub stats: NullStatistics,
    pub summary: SizeSummary,
}

impl ConstantsRecord {
    /// Builds a record for statistics computed from `sizes`.
    pub fn new(
        dataset: impl Into<String>,
        split: Split,
        side: Side,
        stats: NullStatistics,
        sizes: &[u64],
    ) -> Result<Self> {
        if side == Side::Unspecified {
            return Err(Error::InvalidArgument(
                "constants records need side left, right or both".into(),
            ));
        }
        if stats.sizes_digest != sizes_digest(sizes) {
            return Err(Error::InvalidArgument(format!(
                "statistics for {} were computed from different sizes",
                stats.metric_name
            )));
        }
        Ok(ConstantsRecord {
            dataset: dataset.into(),
            split,
            side,
            metric_name: stats.metric_name.clone(),
            stats,
            summary: SizeSummary::of(sizes),
        })
    }

    pub fn key(&self) -> (&str, Split, Side, &str) {
        (&self.dataset, self.split, self.side, &self.metric_name)
    }

    fn key_label(&self) -> String {
        format!(
            "{}/{}/{}/{}",
            self.dataset, self.split, self.side, self.metric_name
        )
    }

    /// Serializes to one JSON line (without the trailing newline).
    pub fn to_json_line(&self) -> String {
        let s = |v: &str| serde_json::to_string(v).expect("strings always serialize");
        format!(
            concat!(
                "{{\"dataset\":{},\"split\":{},\"side\":{},\"metric\":{},",
                "\"expectation\":{:.16e},\"variance\":{:.16e},\"method\":{},",
                "\"samples\":{},\"seed\":{},\"sizes_digest\":{},",
                "\"n\":{},\"min_N\":{},\"max_N\":{}}}"
            ),
            s(&self.dataset),
            s(self.split.as_str()),
            s(self.side.as_str()),
            s(&self.metric_name),
            self.stats.expectation,
            self.stats.variance,
            s(self.stats.method.as_str()),
            self.stats.samples,
            self.stats.seed,
            s(&self.stats.sizes_digest),
            self.summary.n,
            self.summary.min_n,
            self.summary.max_n,
        )
    }

    pub fn from_json_line(line: &str) -> std::result::Result<Self, String> {
        let raw: RawRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
        let side: Side = raw.side.parse().map_err(|e: Error| e.to_string())?;
        if side == Side::Unspecified {
            return Err("side must be left, right or both".into());
        }
        let method: NullMethod = raw.method.parse().map_err(|e: Error| e.to_string())?;
        Ok(ConstantsRecord {
            dataset: raw.dataset,
            split: raw.split,
            side,
            metric_name: raw.metric.clone(),
            stats: NullStatistics {
                expectation: raw.expectation,
                variance: raw.variance,
                method,
                samples: raw.samples,
                seed: raw.seed,
                metric_name: raw.metric,
                sizes_digest: raw.sizes_digest,
            },
            summary: SizeSummary {
                n: raw.n,
                min_n: raw.min_n,
                max_n: raw.max_n,
            },
        })
    }

    /// Bitwise comparison of the statistics, used for idempotent stores.
    fn same_contents(&self, other: &ConstantsRecord) -> bool {
        self.to_json_line() == other.to_json_line()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    dataset: String,
    split: Split,
    side: String,
    metric: String,
    expectation: f64,
    variance: f64,
    method: String,
    samples: u64,
    seed: u64,
    sizes_digest: String,
    n: u64,
    #[serde(rename = "min_N")]
    min_n: u64,
    #[serde(rename = "max_N")]
    max_n: u64,
}

/// Reads every record. A missing file is an empty database.
pub fn load_all(db_path: &Path) -> Result<Vec<ConstantsRecord>> {
    let text = match fs::read_to_string(db_path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::storage(format!("reading {}", db_path.display()), e)),
    };
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record =
            ConstantsRecord::from_json_line(line).map_err(|message| Error::CorruptDatabase {
                path: db_path.to_path_buf(),
                line: i + 1,
                message,
            })?;
        records.push(record);
    }
    Ok(records)
}

fn write_all(db_path: &Path, records: &[ConstantsRecord]) -> Result<()> {
    let dir = match db_path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let context = || format!("writing {}", db_path.display());
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::storage(context(), e))?;
    for record in records {
        writeln!(tmp, "{}", record.to_json_line()).map_err(|e| Error::storage(context(), e))?;
    }
    tmp.as_file()
        .sync_all()
        .map_err(|e| Error::storage(context(), e))?;
    tmp.persist(db_path)
        .map_err(|e| Error::storage(context(), e.error))?;
    Ok(())
}

/// What [`store`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoreOutcome {
    Inserted,
    Unchanged,
    Replaced,
}

/// Upserts one record.
pub fn store(record: &ConstantsRecord, db_path: &Path, overwrite: bool) -> Result<StoreOutcome> {
    let mut outcomes = store_many(std::slice::from_ref(record), db_path, overwrite)?;
    Ok(outcomes.pop().expect("one outcome per record"))
}

/// Upserts several records in a single atomic rewrite. Fails without
/// writing anything if any record conflicts and `overwrite` is off.
pub fn store_many(
    records: &[ConstantsRecord],
    db_path: &Path,
    overwrite: bool,
) -> Result<Vec<StoreOutcome>> {
    let mut existing = load_all(db_path)?;
    let mut outcomes = Vec::with_capacity(records.len());
    for record in records {
        match existing.iter_mut().find(|r| r.key() == record.key()) {
            Some(current) if current.same_contents(record) => {
                outcomes.push(StoreOutcome::Unchanged)
            }
            Some(_) if !overwrite => return Err(Error::ConflictingRecord(record.key_label())),
            Some(current) => {
                *current = record.clone();
                outcomes.push(StoreOutcome::Replaced);
            }
            None => {
                existing.push(record.clone());
                outcomes.push(StoreOutcome::Inserted);
            }
        }
    }
    if outcomes.iter().any(|o| *o != StoreOutcome::Unchanged) {
        write_all(db_path, &existing)?;
    }
    Ok(outcomes)
}

/// Finds the record for a key.
pub fn lookup(
    dataset: &str,
    split: Split,
    side: Side,
    metric_name: &str,
    db_path: &Path,
) -> Result<ConstantsRecord> {
    if !db_path.exists() {
        return Err(Error::NotFound(format!(
            "no database at {}",
            db_path.display()
        )));
    }
    load_all(db_path)?
        .into_iter()
        .find(|r| r.key() == (dataset, split, side, metric_name))
        .ok_or_else(|| Error::NotFound(format!("{dataset}/{split}/{side}/{metric_name}")))
}

/// Candidate set sizes for one (split, side) stratum of a dataset.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Stratum {
    pub split: Split,
    pub side: Side,
    pub sizes: Vec<u64>,
}

/// A dataset described by its strata.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct DatasetSpec {
    pub name: String,
    pub strata: Vec<Stratum>,
}

/// A (stratum, metric) pair that could not be built.
#[derive(Debug)]
pub struct BuildFailure {
    pub split: Split,
    pub side: Side,
    pub metric_name: String,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct BuildReport {
    pub written: usize,
    pub records: Vec<ConstantsRecord>,
    pub failures: Vec<BuildFailure>,
}

/// Computes and stores one record per (stratum, metric). Closed forms are
/// used where they exist, Monte Carlo otherwise. A failing stratum is
/// reported and skipped; the others are still written.
pub fn build_constants(
    dataset: &DatasetSpec,
    metrics: &[MetricDefinition],
    options: &NullOptions,
    db_path: &Path,
    overwrite: bool,
) -> Result<BuildReport> {
    let mut report = BuildReport::default();
    for stratum in &dataset.strata {
        for metric in metrics {
            let built = null_statistics(metric, &stratum.sizes, options).and_then(|stats| {
                ConstantsRecord::new(
                    &dataset.name,
                    stratum.split,
                    stratum.side,
                    stats,
                    &stratum.sizes,
                )
            });
            match built {
                Ok(record) => report.records.push(record),
                Err(error) => report.failures.push(BuildFailure {
                    split: stratum.split,
                    side: stratum.side,
                    metric_name: metric.name().to_string(),
                    error,
                }),
            }
        }
    }
    let outcomes = store_many(&report.records, db_path, overwrite)?;
    report.written = outcomes.len();
    Ok(report)
}
