//! File-based pipeline stages behind the `d2t-curriculum` binary.
//!
//! ```text
//! ingest   --input e2e.csv|corpus.jsonl          --output DIR  -> corpus.jsonl
//! score    --input corpus.jsonl --metric M --side S --output DIR  -> scores.csv [model.json]
//! schedule --input scores.csv --lambda L --steps N --output DIR   -> schedule.jsonl
//! analyze  --input corpus.jsonl [--metric M[:S]]... --output DIR -> bins.csv, histogram_M_S.csv
//! ```
//!
//! Settings resolve as flags, then the JSON file given by `--config`, then
//! defaults. Every command writes the resolved settings to
//! `<command>.config.json` next to its outputs. When a command fails, the
//! files it already wrote are removed.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{cdf_histogram, compare_metrics, write_bin_reports_csv, write_histogram_csv};
use crate::corpus::{load_e2e, load_jsonl, Corpus, Side};
use crate::curriculum::{cdf_normalize, generate_schedule, CompetenceParams};
use crate::error::{Error, Result};
use crate::metrics::{
    read_scores_csv, score_corpus_with_default_model, write_scores_csv, MetricKind,
};

pub const DEFAULT_BATCH_SIZE: usize = 28;
pub const DEFAULT_BUCKETS: usize = 20;
pub const DEFAULT_LAMBDA: f64 = 1000.0;
pub const DEFAULT_STEPS: u64 = 1000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "d2t-curriculum",
    version,
    about = "Difficulty scoring and curriculum schedules for data-to-text corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize an E2E CSV or flattened JSONL corpus into corpus.jsonl
    Ingest(Flags),
    /// Score every sample with one difficulty metric
    Score(Flags),
    /// Generate a competence-gated batch schedule from a scores file
    Schedule(Flags),
    /// Bin-size report and CDF histograms for one or more metrics
    Analyze(Flags),
}

#[derive(Debug, Default, Clone, Args)]
pub struct Flags {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// length, rarity, dld, ped or sed; `analyze` accepts several, optionally as METRIC:SIDE
    #[arg(long)]
    pub metric: Vec<MetricRequest>,
    #[arg(long)]
    pub side: Option<Side>,
    #[arg(long)]
    pub c0: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub buckets: Option<usize>,
    /// JSON file with any of the settings above (flags win)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum InputFormat {
    #[serde(rename = "e2e-csv")]
    #[value(name = "e2e-csv")]
    E2eCsv,
    #[serde(rename = "jsonl")]
    Jsonl,
}

impl InputFormat {
    fn infer(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::E2eCsv,
            _ => InputFormat::Jsonl,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Ingest,
    Score,
    Schedule,
    Analyze,
}

impl CommandKind {
    fn as_str(self) -> &'static str {
        match self {
            CommandKind::Ingest => "ingest",
            CommandKind::Score => "score",
            CommandKind::Schedule => "schedule",
            CommandKind::Analyze => "analyze",
        }
    }
}

/// A metric with an optional explicit side, written `sed` or `rarity:text`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricRequest {
    pub kind: MetricKind,
    pub side: Option<Side>,
}

impl MetricRequest {
    /// Side precedence: the request's own side, then `--side`, then joint
    /// for joint-only metrics or `fallback` otherwise.
    fn resolve(self, flag_side: Option<Side>, fallback: Side) -> (MetricKind, Side) {
        let side = self
            .side
            .or(flag_side)
            .unwrap_or(if self.kind.is_joint_only() {
                Side::Joint
            } else {
                fallback
            });
        (self.kind, side)
    }
}

impl FromStr for MetricRequest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((kind, side)) => Ok(MetricRequest {
                kind: kind.trim().parse()?,
                side: Some(side.trim().parse()?),
            }),
            None => Ok(MetricRequest {
                kind: s.trim().parse()?,
                side: None,
            }),
        }
    }
}

impl fmt::Display for MetricRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Some(side) => write!(f, "{}:{}", self.kind, side),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl Serialize for MetricRequest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MetricRequest {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    format: Option<InputFormat>,
    #[serde(default)]
    metric: Vec<MetricRequest>,
    side: Option<Side>,
    c0: Option<f64>,
    lambda: Option<f64>,
    batch_size: Option<usize>,
    steps: Option<u64>,
    seed: Option<u64>,
    buckets: Option<usize>,
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: PathBuf,
    pub output: PathBuf,
    pub format: InputFormat,
    pub metrics: Vec<(MetricKind, Side)>,
    pub side: Side,
    pub c0: f64,
    pub lambda: f64,
    pub batch_size: usize,
    pub num_steps: u64,
    pub seed: u64,
    pub num_buckets: usize,
}

impl RunConfig {
    /// Merges flags over the optional config file over defaults, and checks
    /// paths and parameter ranges before any work starts.
    pub fn resolve(command: CommandKind, flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => {
                let reader = BufReader::new(File::open(path).map_err(|e| Error::io(path, e))?);
                serde_json::from_reader(reader)
                    .map_err(|e| Error::config(format!("{}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };

        let input = flags
            .input
            .clone()
            .or(file.input)
            .ok_or_else(|| Error::config("--input is required"))?;
        let output = flags
            .output
            .clone()
            .or(file.output)
            .ok_or_else(|| Error::config("--output is required"))?;
        if !input.is_file() {
            return Err(Error::config(format!(
                "input file {} does not exist",
                input.display()
            )));
        }
        if output.exists() && !output.is_dir() {
            return Err(Error::config(format!(
                "output {} exists and is not a directory",
                output.display()
            )));
        }

        let format = flags
            .format
            .or(file.format)
            .unwrap_or_else(|| InputFormat::infer(&input));
        let side = flags.side.or(file.side);
        let requests = if flags.metric.is_empty() {
            file.metric
        } else {
            flags.metric.clone()
        };

        let metrics: Vec<(MetricKind, Side)> = match command {
            CommandKind::Analyze if requests.is_empty() => MetricKind::all_combinations(),
            CommandKind::Analyze => requests
                .iter()
                .map(|r| r.resolve(side, Side::Text))
                .collect(),
            CommandKind::Score => {
                if requests.len() > 1 {
                    return Err(Error::config("score takes a single --metric"));
                }
                let request = requests.first().copied().unwrap_or(MetricRequest {
                    kind: MetricKind::Sed,
                    side: None,
                });
                vec![request.resolve(side, Side::Joint)]
            }
            CommandKind::Ingest | CommandKind::Schedule => Vec::new(),
        };
        for (kind, side) in &metrics {
            kind.check_side(*side)?;
        }

        let config = RunConfig {
            command,
            input,
            output,
            format,
            side: metrics.first().map(|m| m.1).or(side).unwrap_or(Side::Joint),
            metrics,
            c0: flags.c0.or(file.c0).unwrap_or(CompetenceParams::DEFAULT_C0),
            lambda: flags.lambda.or(file.lambda).unwrap_or(DEFAULT_LAMBDA),
            batch_size: flags
                .batch_size
                .or(file.batch_size)
                .unwrap_or(DEFAULT_BATCH_SIZE),
            num_steps: flags.steps.or(file.steps).unwrap_or(DEFAULT_STEPS),
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            num_buckets: flags.buckets.or(file.buckets).unwrap_or(DEFAULT_BUCKETS),
        };
        CompetenceParams::new(config.c0, config.lambda)?;
        if config.batch_size == 0 {
            return Err(Error::config("--batch-size must be at least 1"));
        }
        if config.num_steps == 0 {
            return Err(Error::config("--steps must be at least 1"));
        }
        if config.num_buckets == 0 {
            return Err(Error::config("--buckets must be at least 1"));
        }
        Ok(config)
    }

    fn params(&self) -> Result<CompetenceParams> {
        CompetenceParams::new(self.c0, self.lambda)
    }
}

/// Tracks files written by a command and deletes them unless the command
/// commits.
struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
    committed: bool,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        Ok(Outputs {
            dir: dir.to_owned(),
            written: Vec::new(),
            committed: false,
        })
    }

    fn write<F>(&mut self, name: &str, body: F) -> Result<PathBuf>
    where
        F: FnOnce(&mut BufWriter<File>) -> Result<()>,
    {
        let path = self.dir.join(name);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        self.written.push(path.clone());
        let mut out = BufWriter::new(file);
        body(&mut out)?;
        out.flush().map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    fn commit(mut self) -> Vec<PathBuf> {
        self.committed = true;
        std::mem::take(&mut self.written)
    }
}

impl Drop for Outputs {
    fn drop(&mut self) {
        if !self.committed {
            for path in &self.written {
                let _ = fs::remove_file(path);
            }
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub message: String,
    pub files: Vec<PathBuf>,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.message)?;
        for file in &self.files {
            writeln!(f, "  wrote {}", file.display())?;
        }
        Ok(())
    }
}

fn echo_config(outputs: &mut Outputs, config: &RunConfig) -> Result<()> {
    let name = format!("{}.config.json", config.command.as_str());
    outputs.write(&name, |w| {
        serde_json::to_writer_pretty(&mut *w, config)?;
        w.write_all(b"\n").map_err(|e| Error::io(&name, e))
    })?;
    Ok(())
}

pub fn load_corpus(path: &Path, format: InputFormat) -> Result<Corpus> {
    match format {
        InputFormat::E2eCsv => load_e2e(path),
        InputFormat::Jsonl => load_jsonl(path),
    }
}

fn non_empty(corpus: Corpus, path: &Path) -> Result<Corpus> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus(format!(
            "{} has no samples",
            path.display()
        )));
    }
    Ok(corpus)
}

pub fn cmd_ingest(config: &RunConfig) -> Result<Summary> {
    let corpus = load_corpus(&config.input, config.format)?;
    let mut outputs = Outputs::new(&config.output)?;
    outputs.write("corpus.jsonl", |w| corpus.write_jsonl(w))?;
    echo_config(&mut outputs, config)?;
    Ok(Summary {
        message: format!("M = {}", corpus.len()),
        files: outputs.commit(),
    })
}

pub fn cmd_score(config: &RunConfig) -> Result<Summary> {
    let &[(kind, side)] = config.metrics.as_slice() else {
        return Err(Error::config("score takes exactly one metric"));
    };
    let corpus = non_empty(load_corpus(&config.input, config.format)?, &config.input)?;
    let (scores, model) = score_corpus_with_default_model(&corpus, kind, side)?;

    let mut outputs = Outputs::new(&config.output)?;
    outputs.write("scores.csv", |w| write_scores_csv(w, &scores, kind, side))?;
    if let Some(model) = &model {
        outputs.write("model.json", |w| model.write_json(w))?;
    }
    echo_config(&mut outputs, config)?;
    Ok(Summary {
        message: format!("scored M = {} samples with {kind}/{side}", scores.len()),
        files: outputs.commit(),
    })
}

pub fn cmd_schedule(config: &RunConfig) -> Result<Summary> {
    let params = config.params()?;
    let file = File::open(&config.input).map_err(|e| Error::io(&config.input, e))?;
    let (kind, side, scores) = read_scores_csv(BufReader::new(file))?;
    let cdf = cdf_normalize(&scores)?;
    let schedule = generate_schedule(
        &cdf,
        &params,
        config.num_steps,
        config.batch_size,
        config.seed,
    )?;

    let mut outputs = Outputs::new(&config.output)?;
    outputs.write("schedule.jsonl", |w| schedule.write_jsonl(w, kind, side))?;
    echo_config(&mut outputs, config)?;
    let full = schedule.steps.iter().position(|s| s.competence >= 1.0);
    Ok(Summary {
        message: format!(
            "{} steps of {} from {kind}/{side} scores; competence reaches 1 at {}",
            schedule.steps.len(),
            config.batch_size,
            full.map(|i| format!("t = {}", schedule.steps[i].t))
                .unwrap_or_else(|| "no step".into()),
        ),
        files: outputs.commit(),
    })
}

pub fn cmd_analyze(config: &RunConfig) -> Result<Summary> {
    let corpus = non_empty(load_corpus(&config.input, config.format)?, &config.input)?;
    let reports = compare_metrics(&corpus, &config.metrics)?;

    let mut outputs = Outputs::new(&config.output)?;
    outputs.write("bins.csv", |w| write_bin_reports_csv(w, &reports))?;
    for &(kind, side) in &config.metrics {
        let (scores, _) = score_corpus_with_default_model(&corpus, kind, side)?;
        let histogram = cdf_histogram(&cdf_normalize(&scores)?, config.num_buckets)?;
        outputs.write(&format!("histogram_{kind}_{side}.csv"), |w| {
            write_histogram_csv(w, &histogram)
        })?;
    }
    echo_config(&mut outputs, config)?;
    Ok(Summary {
        message: format!(
            "{} metric reports over M = {} samples",
            reports.len(),
            corpus.len()
        ),
        files: outputs.commit(),
    })
}

pub fn run(cli: &Cli) -> Result<Summary> {
    let (kind, flags) = match &cli.command {
        Command::Ingest(f) => (CommandKind::Ingest, f),
        Command::Score(f) => (CommandKind::Score, f),
        Command::Schedule(f) => (CommandKind::Schedule, f),
        Command::Analyze(f) => (CommandKind::Analyze, f),
    };
    let config = RunConfig::resolve(kind, flags)?;
    match kind {
        CommandKind::Ingest => cmd_ingest(&config),
        CommandKind::Score => cmd_score(&config),
        CommandKind::Schedule => cmd_schedule(&config),
        CommandKind::Analyze => cmd_analyze(&config),
    }
}
