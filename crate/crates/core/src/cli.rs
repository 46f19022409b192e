//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 numerical or degenerate
//! condition, 3 I/O failure.

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adjustments::adjust;
use crate::constants_db::{self, DatasetSpec, Split, Stratum};
use crate::error::{Error, ErrorClass, Result};
use crate::io::{self as files, RankRecord};
use crate::metrics::{MetricDefinition, MetricValue};
use crate::null_models::{
    null_statistics, MonteCarloConfig, MrrMode, NullOptions, NullStatistics, DEFAULT_SAMPLES,
};
use crate::ranking::{Side, TiePolicy};
use crate::report::{
    format_significant, OutputFormat, ResultRow, ResultTable, CSV_SIGNIFICANT_DIGITS,
};
use crate::sim::{simulate, RankerKind, SimulationGrid, BENCHMARK_SIZES};

#[derive(Debug, Parser)]
#[command(
    name = "rank-adjust",
    version,
    about = "Rank-based link prediction metrics with chance adjustments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert per-task candidate scores into ranks.
    Rank(RankArgs),
    /// Compute metrics and their adjustments from a ranks file.
    Compute(ComputeArgs),
    /// Null-model expectation and variance for a set of candidate set sizes.
    Null(NullArgs),
    /// Adjust an already computed metric value.
    Adjust(AdjustArgs),
    /// Run synthetic rankers over a grid of candidate set sizes.
    Simulate(SimulateArgs),
    /// Precompute null statistics into a constants database.
    BuildConstants(BuildConstantsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum MrrModeArg {
    ExactDiscrete,
    PaperContinuous,
}

impl From<MrrModeArg> for MrrMode {
    fn from(m: MrrModeArg) -> Self {
        match m {
            MrrModeArg::ExactDiscrete => MrrMode::ExactDiscrete,
            MrrModeArg::PaperContinuous => MrrMode::PaperContinuous,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum TiePolicyArg {
    Optimistic,
    Pessimistic,
    Realistic,
}

impl From<TiePolicyArg> for TiePolicy {
    fn from(t: TiePolicyArg) -> Self {
        match t {
            TiePolicyArg::Optimistic => TiePolicy::Optimistic,
            TiePolicyArg::Pessimistic => TiePolicy::Pessimistic,
            TiePolicyArg::Realistic => TiePolicy::Realistic,
        }
    }
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Seed for every random draw.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Args)]
pub struct NullModelArgs {
    /// Monte Carlo samples for metrics without a closed form.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = MrrModeArg::ExactDiscrete)]
    pub mrr_mode: MrrModeArg,
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    /// JSON lines with true_score, candidate_scores and optional mask.
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long, value_enum, default_value_t = TiePolicyArg::Realistic)]
    pub tie_policy: TiePolicyArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// Ranks file (JSON lines or CSV).
    #[arg(long)]
    pub ranks: PathBuf,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "mr,mrr,hits@1,hits@3,hits@10"
    )]
    pub metrics: Vec<String>,
    /// Only use tasks of this side.
    #[arg(long)]
    pub side: Option<String>,
    /// Constants database; nulls are computed from the ranks file when omitted.
    #[arg(long)]
    pub constants: Option<PathBuf>,
    #[arg(long, requires = "constants")]
    pub dataset: Option<String>,
    #[arg(long, default_value = "test")]
    pub split: String,
    /// Label for the rows; defaults to the file stem.
    #[arg(long)]
    pub label: Option<String>,
    #[command(flatten)]
    pub null: NullModelArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NullArgs {
    /// Sizes file: one integer per line, or a ranks file.
    #[arg(long, conflicts_with_all = ["uniform_size", "num_tasks"])]
    pub sizes: Option<PathBuf>,
    #[arg(long, requires = "num_tasks")]
    pub uniform_size: Option<u64>,
    #[arg(long, requires = "uniform_size")]
    pub num_tasks: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "mr,mrr,hits@10")]
    pub metrics: Vec<String>,
    /// Also store the results in this constants database.
    #[arg(long, requires = "dataset")]
    pub db: Option<PathBuf>,
    #[arg(long)]
    pub dataset: Option<String>,
    #[arg(long, default_value = "test")]
    pub split: String,
    #[arg(long, default_value = "both")]
    pub side: String,
    #[arg(long)]
    pub overwrite: bool,
    #[command(flatten)]
    pub null: NullModelArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AdjustArgs {
    #[arg(long)]
    pub metric: String,
    #[arg(long, allow_hyphen_values = true)]
    pub value: f64,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "constants")]
    pub expectation: Option<f64>,
    #[arg(long, requires = "expectation")]
    pub variance: Option<f64>,
    #[arg(long, requires = "dataset")]
    pub constants: Option<PathBuf>,
    #[arg(long)]
    pub dataset: Option<String>,
    #[arg(long, default_value = "test")]
    pub split: String,
    #[arg(long, default_value = "both")]
    pub side: String,
    /// Number of tasks behind the value, for the report only.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, value_delimiter = ',', default_values_t = BENCHMARK_SIZES.to_vec())]
    pub sizes: Vec<u64>,
    /// Rankers: oracle, uniform_random, gaussian:<d>.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "oracle,uniform_random,gaussian:2"
    )]
    pub rankers: Vec<String>,
    #[arg(long, default_value_t = 10_000)]
    pub num_tasks: usize,
    #[arg(long, value_delimiter = ',', default_value = "mrr,mr,hits@10")]
    pub metrics: Vec<String>,
    /// Write each cell's ranks as JSON lines into this directory.
    #[arg(long)]
    pub ranks_dir: Option<PathBuf>,
    #[command(flatten)]
    pub null: NullModelArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BuildConstantsArgs {
    #[arg(long)]
    pub db: PathBuf,
    /// JSON file: {"name": .., "strata": [{"split": .., "side": .., "sizes": [..]}]}.
    #[arg(long, conflicts_with = "ranks")]
    pub dataset_spec: Option<PathBuf>,
    /// Derive strata from a ranks file (one per side present, plus both).
    #[arg(long, requires = "dataset")]
    pub ranks: Option<PathBuf>,
    #[arg(long)]
    pub dataset: Option<String>,
    #[arg(long, default_value = "test")]
    pub split: String,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "mr,mrr,mrr_colloquial,hits@1,hits@3,hits@5,hits@10,imr,hmr,gmr,igmr"
    )]
    pub metrics: Vec<String>,
    #[arg(long)]
    pub overwrite: bool,
    #[command(flatten)]
    pub null: NullModelArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_metrics(names: &[String]) -> Result<Vec<MetricDefinition>> {
    names.iter().map(|n| n.parse()).collect()
}

fn null_options(null: &NullModelArgs, seed: u64) -> NullOptions {
    NullOptions {
        mrr_mode: null.mrr_mode.into(),
        monte_carlo: MonteCarloConfig {
            samples: null.samples,
            seed,
        },
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::storage(format!("opening {}", path.display()), e))
}

fn read_ranks(path: &Path) -> Result<Vec<RankRecord>> {
    files::read_rank_records(open(path)?, &path.display().to_string())
}

/// Where command output goes.
struct Sink<'a> {
    stdout: &'a mut dyn Write,
    path: Option<&'a Path>,
}

impl Sink<'_> {
    fn emit(&mut self, text: &str) -> Result<()> {
        match self.path {
            Some(path) => fs::write(path, text)
                .map_err(|e| Error::storage(format!("writing {}", path.display()), e)),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::storage("writing stdout", e)),
        }
    }
}

fn render(table: &ResultTable, format: FormatArg) -> String {
    match format {
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => table.to_json() + "\n",
    }
}

/// Outcome of a command that may have partially failed.
struct Partial {
    failures: usize,
}

fn cmd_rank(args: &RankArgs, sink: &mut Sink<'_>) -> Result<Partial> {
    let source = args.scores.display().to_string();
    let scores = files::read_score_records(open(&args.scores)?, &source)?;
    let ranks = files::rank_scores(&scores, args.tie_policy.into())?;
    let text = match args.common.format {
        FormatArg::Json => {
            let mut buf = Vec::new();
            files::write_rank_records(&mut buf, &ranks)?;
            String::from_utf8(buf).expect("json is utf-8")
        }
        FormatArg::Csv => {
            let with_side = ranks.iter().any(|r| r.side.is_some());
            let mut out = String::from(if with_side {
                "rank,num_candidates,side\n"
            } else {
                "rank,num_candidates\n"
            });
            for r in &ranks {
                out.push_str(&format!("{},{}", r.rank, r.num_candidates));
                if with_side {
                    out.push(',');
                    out.push_str(r.side.map(|s| s.as_str()).unwrap_or(""));
                }
                out.push('\n');
            }
            out
        }
    };
    sink.emit(&text)?;
    Ok(Partial { failures: 0 })
}

/// Computes the result table for a ranks file. Null-model failures for one
/// metric are recorded in that metric's row and do not stop the others.
pub fn compute_table(args: &ComputeArgs, warnings: &mut dyn Write) -> Result<ResultTable> {
    let records = read_ranks(&args.ranks)?;
    let side = args.side.as_deref().map(str::parse::<Side>).transpose()?;
    let ranks = files::rank_set(&records, side)?;
    let metrics = parse_metrics(&args.metrics)?;
    let label = args.label.clone().unwrap_or_else(|| {
        args.ranks
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "ranks".into())
    });
    let options = null_options(&args.null, args.common.seed);
    let sizes = ranks.sizes();

    let mut table = ResultTable::default();
    for metric in &metrics {
        let base = metric.evaluate(&ranks)?;
        let null = match (&args.constants, &args.dataset) {
            (Some(db), Some(dataset)) => {
                let key_side = side.unwrap_or(match ranks.side() {
                    Side::Unspecified => Side::Both,
                    s => s,
                });
                constants_db::lookup(dataset, args.split.parse()?, key_side, metric.name(), db).map(
                    |record| {
                        if record.stats.sizes_digest != crate::null_models::sizes_digest(&sizes) {
                            let _ = writeln!(
                            warnings,
                            "warning: {} constants were built from different candidate set sizes",
                            metric.name()
                        );
                        }
                        record.stats
                    },
                )
            }
            (Some(_), None) => Err(Error::InvalidArgument("--constants needs --dataset".into())),
            _ => null_statistics(metric, &sizes, &options),
        };
        match null {
            Ok(null) => table.push(ResultRow::from_adjusted(
                label.clone(),
                &adjust(&base, &null),
            )),
            Err(e) => {
                let _ = writeln!(warnings, "warning: {}: {e}", metric.name());
                table.push(ResultRow::base_only(
                    label.clone(),
                    metric.name(),
                    base.n,
                    base.value,
                    &e,
                ));
            }
        }
    }
    Ok(table)
}

fn cmd_compute(
    args: &ComputeArgs,
    sink: &mut Sink<'_>,
    warnings: &mut dyn Write,
) -> Result<Partial> {
    let table = compute_table(args, warnings)?;
    sink.emit(&render(&table, args.common.format))?;
    Ok(Partial {
        failures: table.rows.iter().filter(|r| r.error.is_some()).count(),
    })
}

fn read_sizes(path: &Path) -> Result<Vec<u64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::storage(format!("reading {}", path.display()), e))?;
    let non_blank: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if non_blank.is_empty() {
        return Err(Error::EmptyInput(format!(
            "{} contains no sizes",
            path.display()
        )));
    }
    if non_blank[0].1.trim().parse::<u64>().is_ok() {
        non_blank
            .iter()
            .map(|(i, l)| {
                l.trim().parse::<u64>().map_err(|e| Error::Parse {
                    source_name: path.display().to_string(),
                    line: i + 1,
                    message: e.to_string(),
                })
            })
            .collect()
    } else {
        Ok(
            files::read_rank_records(text.as_bytes(), &path.display().to_string())?
                .iter()
                .map(|r| r.num_candidates)
                .collect(),
        )
    }
}

fn null_report(stats: &[NullStatistics], sizes_len: usize, format: FormatArg) -> String {
    match format {
        FormatArg::Json => {
            let rows: Vec<serde_json::Value> = stats
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "metric": s.metric_name,
                        "expectation": s.expectation,
                        "variance": s.variance,
                        "std_dev": s.std_dev(),
                        "method": s.method.as_str(),
                        "samples": s.samples,
                        "seed": s.seed,
                        "n": sizes_len,
                        "sizes_digest": s.sizes_digest,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("json") + "\n"
        }
        FormatArg::Csv => {
            let num = |x: f64| format_significant(x, CSV_SIGNIFICANT_DIGITS);
            let mut out = String::from(
                "metric,expectation,variance,std_dev,method,samples,seed,n,sizes_digest\n",
            );
            for s in stats {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    s.metric_name,
                    num(s.expectation),
                    num(s.variance),
                    num(s.std_dev()),
                    s.method,
                    s.samples,
                    s.seed,
                    sizes_len,
                    s.sizes_digest
                ));
            }
            out
        }
    }
}

fn cmd_null(args: &NullArgs, sink: &mut Sink<'_>, warnings: &mut dyn Write) -> Result<Partial> {
    let sizes = match (&args.sizes, args.uniform_size, args.num_tasks) {
        (Some(path), _, _) => read_sizes(path)?,
        (None, Some(size), Some(n)) => vec![size; n],
        _ => {
            return Err(Error::InvalidArgument(
                "give --sizes or both --uniform-size and --num-tasks".into(),
            ))
        }
    };
    let metrics = parse_metrics(&args.metrics)?;
    let options = null_options(&args.null, args.common.seed);
    let mut stats = Vec::new();
    let mut first_error = None;
    for metric in &metrics {
        match null_statistics(metric, &sizes, &options) {
            Ok(s) => stats.push(s),
            Err(e) => {
                let _ = writeln!(warnings, "warning: {}: {e}", metric.name());
                first_error.get_or_insert(e);
            }
        }
    }
    if stats.is_empty() {
        return Err(first_error.unwrap_or_else(|| Error::EmptyInput("no metrics requested".into())));
    }
    if let (Some(db), Some(dataset)) = (&args.db, &args.dataset) {
        let split: Split = args.split.parse()?;
        let side: Side = args.side.parse()?;
        let records = stats
            .iter()
            .map(|s| constants_db::ConstantsRecord::new(dataset, split, side, s.clone(), &sizes))
            .collect::<Result<Vec<_>>>()?;
        constants_db::store_many(&records, db, args.overwrite)?;
    }
    sink.emit(&null_report(&stats, sizes.len(), args.common.format))?;
    Ok(Partial {
        failures: metrics.len() - stats.len(),
    })
}

fn cmd_adjust(args: &AdjustArgs, sink: &mut Sink<'_>) -> Result<Partial> {
    let metric: MetricDefinition = args.metric.parse()?;
    let null = match (&args.constants, &args.dataset, args.expectation) {
        (Some(db), Some(dataset), _) => {
            constants_db::lookup(
                dataset,
                args.split.parse()?,
                args.side.parse()?,
                metric.name(),
                db,
            )?
            .stats
        }
        (None, _, Some(expectation)) => {
            NullStatistics::external(metric.name(), expectation, args.variance.unwrap_or(0.0))
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give --expectation [--variance] or --constants with --dataset".into(),
            ))
        }
    };
    let value = MetricValue::external(metric, args.value, args.n);
    let adjusted = adjust(&value, &null);
    let mut row = ResultRow::from_adjusted("adjust", &adjusted);
    if args.variance.is_none() && args.constants.is_none() {
        row.variance = None;
    }
    // an index that cannot be formed is a hard error here: it is the point of the command
    if adjusted.adjusted_index.is_none() {
        return Err(Error::DegenerateAdjustment {
            expectation: null.expectation,
        });
    }
    if args.variance.is_some() && adjusted.z_score.is_none() {
        return Err(Error::ZeroVariance);
    }
    let mut table = ResultTable::default();
    table.push(row);
    sink.emit(&render(&table, args.common.format))?;
    Ok(Partial { failures: 0 })
}

fn cmd_simulate(args: &SimulateArgs, sink: &mut Sink<'_>) -> Result<Partial> {
    let kinds = args
        .rankers
        .iter()
        .map(|r| r.parse::<RankerKind>())
        .collect::<Result<Vec<_>>>()?;
    let grid = SimulationGrid {
        kinds,
        sizes: args.sizes.clone(),
        num_tasks: args.num_tasks,
        seed: args.common.seed,
        metrics: parse_metrics(&args.metrics)?,
        null_options: null_options(&args.null, args.common.seed),
    };
    let output = simulate(&grid)?;
    if let Some(dir) = &args.ranks_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Error::storage(format!("creating {}", dir.display()), e))?;
        for (label, ranks) in &output.ranks {
            let name: String = label
                .chars()
                .map(|c| {
                    if c.is_ascii_alphanumeric() || c == '.' || c == '_' {
                        c
                    } else {
                        '_'
                    }
                })
                .collect();
            let path = dir.join(format!("{name}.jsonl"));
            let file = File::create(&path)
                .map_err(|e| Error::storage(format!("creating {}", path.display()), e))?;
            files::write_rank_records(std::io::BufWriter::new(file), ranks)?;
        }
    }
    sink.emit(&render(&output.table, args.common.format))?;
    Ok(Partial {
        failures: output
            .table
            .rows
            .iter()
            .filter(|r| r.error.is_some())
            .count(),
    })
}

fn dataset_from_ranks(path: &Path, name: &str, split: Split) -> Result<DatasetSpec> {
    let records = read_ranks(path)?;
    let mut strata = Vec::new();
    for side in [Side::Left, Side::Right] {
        let sizes: Vec<u64> = records
            .iter()
            .filter(|r| r.side == Some(side))
            .map(|r| r.num_candidates)
            .collect();
        if !sizes.is_empty() {
            strata.push(Stratum { split, side, sizes });
        }
    }
    strata.push(Stratum {
        split,
        side: Side::Both,
        sizes: records.iter().map(|r| r.num_candidates).collect(),
    });
    Ok(DatasetSpec {
        name: name.to_string(),
        strata,
    })
}

fn cmd_build_constants(
    args: &BuildConstantsArgs,
    sink: &mut Sink<'_>,
    warnings: &mut dyn Write,
) -> Result<Partial> {
    let dataset = match (&args.dataset_spec, &args.ranks, &args.dataset) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::storage(format!("reading {}", path.display()), e))?;
            serde_json::from_str::<DatasetSpec>(&text).map_err(|e| Error::Parse {
                source_name: path.display().to_string(),
                line: e.line(),
                message: e.to_string(),
            })?
        }
        (None, Some(ranks), Some(name)) => dataset_from_ranks(ranks, name, args.split.parse()?)?,
        _ => {
            return Err(Error::InvalidArgument(
                "give --dataset-spec or --ranks with --dataset".into(),
            ))
        }
    };
    let metrics = parse_metrics(&args.metrics)?;
    let report = constants_db::build_constants(
        &dataset,
        &metrics,
        &null_options(&args.null, args.common.seed),
        &args.db,
        args.overwrite,
    )?;
    for f in &report.failures {
        let _ = writeln!(
            warnings,
            "warning: {}/{}/{}: {}",
            f.split, f.side, f.metric_name, f.error
        );
    }
    let text = match args.common.format {
        FormatArg::Json => {
            serde_json::json!({
                "written": report.written,
                "failed": report.failures.len(),
                "db": args.db.display().to_string(),
            })
            .to_string()
                + "\n"
        }
        FormatArg::Csv => format!(
            "written,failed,db\n{},{},{}\n",
            report.written,
            report.failures.len(),
            args.db.display()
        ),
    };
    sink.emit(&text)?;
    Ok(Partial {
        failures: report.failures.len(),
    })
}

fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Input => 1,
        ErrorClass::Numerical => 2,
        ErrorClass::Io => 3,
    }
}

/// Runs a parsed command, returning the process exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let output = match &cli.command {
        Command::Rank(a) => a.common.output.as_deref(),
        Command::Compute(a) => a.common.output.as_deref(),
        Command::Null(a) => a.common.output.as_deref(),
        Command::Adjust(a) => a.common.output.as_deref(),
        Command::Simulate(a) => a.common.output.as_deref(),
        Command::BuildConstants(a) => a.common.output.as_deref(),
    };
    let mut sink = Sink {
        stdout,
        path: output,
    };
    let result = match &cli.command {
        Command::Rank(a) => cmd_rank(a, &mut sink),
        Command::Compute(a) => cmd_compute(a, &mut sink, stderr),
        Command::Null(a) => cmd_null(a, &mut sink, stderr),
        Command::Adjust(a) => cmd_adjust(a, &mut sink),
        Command::Simulate(a) => cmd_simulate(a, &mut sink),
        Command::BuildConstants(a) => cmd_build_constants(a, &mut sink, stderr),
    };
    match result {
        Ok(Partial { failures: 0 }) => 0,
        Ok(_) => 2,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(e.class())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdout, stderr),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                1
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            }
        }
    }
}
