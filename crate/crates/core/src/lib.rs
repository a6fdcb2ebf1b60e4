//! Difficulty scoring and competence-gated batch scheduling for data-to-text
//! training corpora.
//!
//! The pipeline runs in four stages, each usable on its own:
//!
//! 1. [`corpus`] loads E2E CSV or flattened JSONL into [`Corpus`].
//! 2. [`metrics`] scores each sample with one of five difficulty metrics
//!    (length, rarity, restricted Damerau-Levenshtein, plain edit distance,
//!    soft edit distance), using unigram weights from [`stats`].
//! 3. [`curriculum`] maps scores to empirical CDF values and draws
//!    fixed-size batches whose members satisfy `d̄ <= c(t)`.
//! 4. [`analysis`] summarizes how finely a metric separates samples.
//!
//! See the `examples/` directory for one runnable program per stage, and
//! [`cli`] for the file-based command-line front end.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod curriculum;
pub mod error;
pub mod metrics;
pub mod rng;
pub mod stats;
pub mod synthetic;

pub use corpus::{Corpus, Sample, Side, SlotValue, Token};
pub use curriculum::{CdfTable, CompetenceParams, Schedule};
pub use error::{Error, Result};
pub use metrics::{DifficultyScore, MetricKind};
pub use stats::UnigramModel;
