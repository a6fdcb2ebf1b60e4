//! Add-one smoothed unigram models and their `-ln p(w)` token weights.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Side, Token};
use crate::error::{Error, Result};

/// Unigram counts over one side of a corpus.
///
/// `prob(w) = (count(w) + 1) / (total + vocab_size + 1)`; an unseen token
/// gets `1 / (total + vocab_size + 1)`. The extra denominator slot keeps the
/// seen mass plus one unseen share at exactly 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnigramModel {
    side: Side,
    total: u64,
    counts: BTreeMap<String, u64>,
}

impl UnigramModel {
    /// Counts tokens of `side` over every sample. `Joint` counts each
    /// sample's data tokens and text tokens once each.
    pub fn fit(corpus: &Corpus, side: Side) -> Result<Self> {
        if corpus.is_empty() {
            return Err(Error::EmptyCorpus(
                "cannot fit a unigram model on zero samples".into(),
            ));
        }
        let mut counts = BTreeMap::new();
        for sample in corpus.samples() {
            for token in sample.tokens(side).iter() {
                *counts.entry(token.as_str().to_owned()).or_insert(0u64) += 1;
            }
        }
        Self::from_counts(side, counts)
    }

    pub fn from_counts(side: Side, counts: BTreeMap<String, u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyCorpus(format!("no tokens on the {side} side")));
        }
        if let Some((token, _)) = counts.iter().find(|(_, &c)| c == 0) {
            return Err(Error::config(format!(
                "zero count stored for token {token:?}"
            )));
        }
        let total = counts.values().sum();
        Ok(UnigramModel {
            side,
            total,
            counts,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn vocab_size(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, token: &str) -> u64 {
        self.counts.get(token).copied().unwrap_or(0)
    }

    fn denominator(&self) -> f64 {
        (self.total + self.counts.len() as u64 + 1) as f64
    }

    pub fn prob(&self, token: &str) -> f64 {
        (self.count(token) + 1) as f64 / self.denominator()
    }

    pub fn unseen_prob(&self) -> f64 {
        1.0 / self.denominator()
    }

    /// `-ln prob(token)` in nats. Always finite and strictly positive.
    pub fn neg_log_prob(&self, token: &Token) -> f64 {
        self.neg_log_prob_str(token.as_str())
    }

    pub fn neg_log_prob_str(&self, token: &str) -> f64 {
        -self.prob(token).ln()
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        let raw: UnigramModel = serde_json::from_reader(input)?;
        let model = Self::from_counts(raw.side, raw.counts)?;
        if model.total != raw.total {
            return Err(Error::config(format!(
                "model total {} does not match summed counts {}",
                raw.total, model.total
            )));
        }
        Ok(model)
    }
}
