//! Competence-gated batch scheduling.
//!
//! Raw difficulties are mapped to empirical CDF values `d̄ ∈ (0, 1]`. At
//! training step `t` a batch is drawn uniformly from the samples with
//! `d̄ <= c(t)`, where
//!
//! ```text
//! c(t) = min(1, sqrt(t * (1 - c0²) / λ + c0²))
//! ```
//!
//! Once `c(t)` reaches 1 every sample is eligible and sampling continues
//! uniformly over the whole corpus.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::Side;
use crate::error::{Error, Result};
use crate::metrics::{DifficultyScore, MetricKind};
use crate::rng::ScheduleRng;

/// Empirical CDF of raw difficulty scores.
///
/// `d̄(s_i) = |{ j : d(s_j) <= d(s_i) }| / M`, so tied scores share the upper
/// rank and the hardest bin sits at exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfTable {
    len: usize,
    /// sample id -> number of samples with a score <= this one
    ranks: BTreeMap<usize, usize>,
    /// (rank, id), ascending
    by_rank: Vec<(usize, usize)>,
    distinct_scores: Vec<f64>,
}

impl CdfTable {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, sample_id: usize) -> Option<f64> {
        self.ranks.get(&sample_id).map(|&r| self.rank_to_value(r))
    }

    /// Upper rank of the sample's score, in `1..=len()`.
    pub fn rank(&self, sample_id: usize) -> Option<usize> {
        self.ranks.get(&sample_id).copied()
    }

    /// `(sample_id, d̄)` in ascending id order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.ranks
            .iter()
            .map(|(&id, &r)| (id, self.rank_to_value(r)))
    }

    pub fn distinct_scores(&self) -> &[f64] {
        &self.distinct_scores
    }

    pub fn min_value(&self) -> f64 {
        self.rank_to_value(self.by_rank[0].0)
    }

    fn rank_to_value(&self, rank: usize) -> f64 {
        rank as f64 / self.len as f64
    }
}

/// Builds the empirical CDF. Rejects empty input, duplicate ids, and
/// negative or non-finite scores.
pub fn cdf_normalize(scores: &[DifficultyScore]) -> Result<CdfTable> {
    if scores.is_empty() {
        return Err(Error::EmptyCorpus("no scores to normalize".into()));
    }
    if let Some(bad) = scores
        .iter()
        .find(|s| !s.value.is_finite() || s.value < 0.0)
    {
        return Err(Error::InvalidScore {
            sample_id: bad.sample_id,
            value: bad.value,
        });
    }

    let mut sorted: Vec<f64> = scores.iter().map(|s| s.value).collect();
    sorted.sort_by(f64::total_cmp);

    let mut ranks = BTreeMap::new();
    let mut by_rank = Vec::with_capacity(scores.len());
    for score in scores {
        // -0.0 and 0.0 compare equal under `<=`, which is what ties need
        let rank = sorted.partition_point(|&v| v <= score.value);
        if ranks.insert(score.sample_id, rank).is_some() {
            return Err(Error::config(format!(
                "duplicate sample id {}",
                score.sample_id
            )));
        }
        by_rank.push((rank, score.sample_id));
    }
    by_rank.sort_unstable();

    let mut distinct_scores = sorted;
    distinct_scores.dedup_by(|a, b| a == b);

    Ok(CdfTable {
        len: scores.len(),
        ranks,
        by_rank,
        distinct_scores,
    })
}

/// Parameters of the square-root competence function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompetenceParams {
    c0: f64,
    lambda: f64,
}

impl CompetenceParams {
    pub const DEFAULT_C0: f64 = 0.1;

    /// `c0` in `(0, 1]`; `lambda` (curriculum length in steps) positive and finite.
    pub fn new(c0: f64, lambda: f64) -> Result<Self> {
        if !(c0 > 0.0 && c0 <= 1.0) {
            return Err(Error::config(format!("c0 must be in (0, 1], got {c0}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::config(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        Ok(CompetenceParams { c0, lambda })
    }

    pub fn with_lambda(lambda: f64) -> Result<Self> {
        Self::new(Self::DEFAULT_C0, lambda)
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// `c(t) = min(1, sqrt(t (1 - c0²) / λ + c0²))`.
pub fn competence(t: u64, params: &CompetenceParams) -> f64 {
    let t = t as f64;
    // the radicand is >= 1 from here on; returning 1 directly avoids a
    // rounding error leaving c(λ) a hair under 1
    if t >= params.lambda {
        return 1.0;
    }
    let c0_sq = params.c0 * params.c0;
    (t * (1.0 - c0_sq) / params.lambda + c0_sq).sqrt().min(1.0)
}

/// Ids with `d̄ <= c`, ascending. When none qualify, falls back to every
/// id in the easiest bin so the pool is never empty.
pub fn eligible_set(cdf: &CdfTable, c: f64) -> Vec<usize> {
    let cut = cdf
        .by_rank
        .partition_point(|&(rank, _)| cdf.rank_to_value(rank) <= c);
    let mut ids: Vec<usize> = if cut > 0 {
        cdf.by_rank[..cut].iter().map(|&(_, id)| id).collect()
    } else {
        let min_rank = cdf.by_rank[0].0;
        cdf.by_rank
            .iter()
            .take_while(|&&(rank, _)| rank == min_rank)
            .map(|&(_, id)| id)
            .collect()
    };
    ids.sort_unstable();
    ids
}

/// Draws `batch_size` ids uniformly from `eligible`: without replacement
/// when the pool is large enough, with replacement otherwise.
///
/// Panics if `eligible` is empty or `batch_size` is zero.
pub fn sample_batch(eligible: &[usize], batch_size: usize, rng: &mut ScheduleRng) -> Vec<usize> {
    assert!(!eligible.is_empty(), "cannot sample from an empty pool");
    assert!(batch_size > 0, "batch size must be positive");

    if eligible.len() < batch_size {
        return (0..batch_size)
            .map(|_| eligible[rng.below(eligible.len() as u64) as usize])
            .collect();
    }

    // partial Fisher-Yates over a copy of the pool
    let mut pool = eligible.to_vec();
    for i in 0..batch_size {
        let j = i + rng.below((pool.len() - i) as u64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(batch_size);
    pool
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub t: u64,
    pub competence: f64,
    pub ids: Vec<usize>,
}

/// A precomputed sequence of batches, one per training step.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub steps: Vec<ScheduleStep>,
    pub seed: u64,
    pub batch_size: usize,
    pub params: CompetenceParams,
}

/// First line of a schedule file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleHeader {
    pub seed: u64,
    pub batch_size: usize,
    pub c0: f64,
    pub lambda: f64,
    pub metric: MetricKind,
    pub side: Side,
}

/// Runs the curriculum loop for steps `1..=num_steps`.
pub fn generate_schedule(
    cdf: &CdfTable,
    params: &CompetenceParams,
    num_steps: u64,
    batch_size: usize,
    seed: u64,
) -> Result<Schedule> {
    if num_steps == 0 {
        return Err(Error::config("number of steps must be at least 1"));
    }
    if batch_size == 0 {
        return Err(Error::config("batch size must be at least 1"));
    }
    let mut rng = ScheduleRng::new(seed);
    let mut steps = Vec::with_capacity(num_steps as usize);
    let mut pool: Option<(usize, Vec<usize>)> = None;

    for t in 1..=num_steps {
        let c = competence(t, params);
        // the pool only changes when the cut point moves
        let cut = cdf
            .by_rank
            .partition_point(|&(rank, _)| cdf.rank_to_value(rank) <= c);
        if pool.as_ref().map(|(k, _)| *k) != Some(cut) {
            pool = Some((cut, eligible_set(cdf, c)));
        }
        let eligible = &pool.as_ref().expect("set above").1;
        steps.push(ScheduleStep {
            t,
            competence: c,
            ids: sample_batch(eligible, batch_size, &mut rng),
        });
    }

    Ok(Schedule {
        steps,
        seed,
        batch_size,
        params: *params,
    })
}

impl Schedule {
    pub fn header(&self, metric: MetricKind, side: Side) -> ScheduleHeader {
        ScheduleHeader {
            seed: self.seed,
            batch_size: self.batch_size,
            c0: self.params.c0(),
            lambda: self.params.lambda(),
            metric,
            side,
        }
    }

    /// Header line, then one `{"t", "competence", "ids"}` line per step.
    pub fn write_jsonl<W: Write>(&self, mut out: W, metric: MetricKind, side: Side) -> Result<()> {
        let io_err = |e| Error::io("<schedule output>", e);
        serde_json::to_writer(&mut out, &self.header(metric, side))?;
        out.write_all(b"\n").map_err(io_err)?;
        for step in &self.steps {
            serde_json::to_writer(&mut out, step)?;
            out.write_all(b"\n").map_err(io_err)?;
        }
        out.flush().map_err(io_err)?;
        Ok(())
    }

    /// Parses a schedule file, checking that steps are numbered `1, 2, ...`
    /// and every batch has `batch_size` ids.
    pub fn read_jsonl<R: BufRead>(input: R) -> Result<(ScheduleHeader, Schedule)> {
        let mut lines = input.lines().enumerate();
        let line_err = |line: usize, message: String| Error::Line { line, message };

        let header: ScheduleHeader = match lines.next() {
            Some((_, line)) => {
                let line = line.map_err(|e| line_err(1, e.to_string()))?;
                serde_json::from_str(&line).map_err(|e| line_err(1, e.to_string()))?
            }
            None => return Err(line_err(1, "missing schedule header".into())),
        };
        let params = CompetenceParams::new(header.c0, header.lambda)?;

        let mut steps = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line.map_err(|e| line_err(line_no, e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let step: ScheduleStep =
                serde_json::from_str(&line).map_err(|e| line_err(line_no, e.to_string()))?;
            if step.t != steps.len() as u64 + 1 {
                return Err(line_err(
                    line_no,
                    format!("step {} out of sequence", step.t),
                ));
            }
            if step.ids.len() != header.batch_size {
                return Err(line_err(
                    line_no,
                    format!(
                        "batch has {} ids, expected {}",
                        step.ids.len(),
                        header.batch_size
                    ),
                ));
            }
            steps.push(step);
        }

        let schedule = Schedule {
            steps,
            seed: header.seed,
            batch_size: header.batch_size,
            params,
        };
        Ok((header, schedule))
    }
}
