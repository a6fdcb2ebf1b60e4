//! Difficulty metrics over token sequences.
//!
//! | metric   | sides              | value                                           |
//! |----------|--------------------|-------------------------------------------------|
//! | `length` | data, text, joint  | token count                                     |
//! | `rarity` | data, text, joint  | `-Σ ln p(w)` under a unigram model              |
//! | `dld`    | joint              | restricted Damerau-Levenshtein (OSA), unit cost |
//! | `ped`    | joint              | insert/delete-only edit distance, unit cost     |
//! | `sed`    | joint              | insert/delete edit distance, `-ln p(w)` costs   |
//!
//! The three edit metrics transform the linearized data tokens into the text
//! tokens. Tokens match on exact surface equality.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Sample, Side, Token};
use crate::error::{Error, Result};
use crate::stats::UnigramModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Length,
    Rarity,
    Dld,
    Ped,
    Sed,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] = [
        MetricKind::Length,
        MetricKind::Rarity,
        MetricKind::Dld,
        MetricKind::Ped,
        MetricKind::Sed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricKind::Length => "length",
            MetricKind::Rarity => "rarity",
            MetricKind::Dld => "dld",
            MetricKind::Ped => "ped",
            MetricKind::Sed => "sed",
        }
    }

    pub fn is_joint_only(self) -> bool {
        matches!(self, MetricKind::Dld | MetricKind::Ped | MetricKind::Sed)
    }

    pub fn needs_model(self) -> bool {
        matches!(self, MetricKind::Rarity | MetricKind::Sed)
    }

    /// Integer-valued metrics bin by exact equality.
    pub fn is_integer_valued(self) -> bool {
        matches!(self, MetricKind::Length | MetricKind::Dld | MetricKind::Ped)
    }

    /// Side the unigram model is fitted on by default: side-matched for
    /// rarity, joint for SED (deletions weigh data tokens, insertions text
    /// tokens).
    pub fn default_model_side(self, side: Side) -> Option<Side> {
        match self {
            MetricKind::Rarity => Some(side),
            MetricKind::Sed => Some(Side::Joint),
            _ => None,
        }
    }

    pub fn check_side(self, side: Side) -> Result<()> {
        if self.is_joint_only() && side != Side::Joint {
            return Err(Error::config(format!(
                "metric {self} is computed jointly on data and text; side must be joint, got {side}"
            )));
        }
        Ok(())
    }

    /// Every valid `(metric, side)` combination.
    pub fn all_combinations() -> Vec<(MetricKind, Side)> {
        MetricKind::ALL
            .iter()
            .flat_map(|&k| Side::ALL.iter().map(move |&s| (k, s)))
            .filter(|(k, s)| k.check_side(*s).is_ok())
            .collect()
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown metric {s:?} (expected length, rarity, dld, ped or sed)"
                ))
            })
    }
}

/// Raw difficulty `d(s_i)` of one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifficultyScore {
    pub sample_id: usize,
    pub value: f64,
}

pub fn d_length(seq: &[Token]) -> usize {
    seq.len()
}

pub fn d_rarity(seq: &[Token], model: &UnigramModel) -> f64 {
    // left-to-right from +0.0, the same accumulation order as an SED table border
    seq.iter().fold(0.0, |acc, w| acc + model.neg_log_prob(w))
}

/// Restricted Damerau-Levenshtein (optimal string alignment) distance with
/// unit-cost substitution, insertion, deletion and adjacent transposition.
pub fn d_dld<T: PartialEq>(data: &[T], text: &[T]) -> usize {
    let (m, n) = (data.len(), text.len());
    // Three rolling rows: i-2, i-1, i.
    let mut two_back = vec![0usize; n + 1];
    let mut prev: Vec<usize> = (0..=n).collect();
    let mut cur = vec![0usize; n + 1];

    for i in 1..=m {
        cur[0] = i;
        for j in 1..=n {
            let subst = usize::from(data[i - 1] != text[j - 1]);
            let mut best = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + subst);
            if i > 1 && j > 1 && data[i - 1] == text[j - 2] && data[i - 2] == text[j - 1] {
                best = best.min(two_back[j - 2] + 1);
            }
            cur[j] = best;
        }
        std::mem::swap(&mut two_back, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n]
}

/// Plain edit distance: unit-cost insertions and deletions only.
pub fn d_ped<T: PartialEq>(data: &[T], text: &[T]) -> usize {
    let n = text.len();
    let mut prev: Vec<usize> = (0..=n).collect();
    let mut cur = vec![0usize; n + 1];
    for (i, a) in data.iter().enumerate() {
        cur[0] = i + 1;
        for (j, b) in text.iter().enumerate() {
            let mut best = (prev[j + 1] + 1).min(cur[j] + 1);
            if a == b {
                best = best.min(prev[j]);
            }
            cur[j + 1] = best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n]
}

/// Wagner-Fischer table for insert/delete edits with per-token costs.
///
/// `cell(i, j)` is the cheapest way to turn the first `i` data tokens into
/// the first `j` text tokens:
///
/// ```text
/// cell(i, j) = min(cell(i-1, j)   + delete(data[i]),
///                  cell(i, j-1)   + insert(text[j]),
///                  cell(i-1, j-1)                      if data[i] == text[j])
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct EditTable {
    rows: usize,
    cols: usize,
    cells: Vec<f64>,
}

impl EditTable {
    pub fn build<T, D, I>(data: &[T], text: &[T], delete: D, insert: I) -> Self
    where
        T: PartialEq,
        D: Fn(&T) -> f64,
        I: Fn(&T) -> f64,
    {
        let (rows, cols) = (data.len() + 1, text.len() + 1);
        let mut cells = vec![0.0; rows * cols];
        for j in 1..cols {
            cells[j] = cells[j - 1] + insert(&text[j - 1]);
        }
        for i in 1..rows {
            let del = delete(&data[i - 1]);
            cells[i * cols] = cells[(i - 1) * cols] + del;
            for j in 1..cols {
                let mut best = (cells[(i - 1) * cols + j] + del)
                    .min(cells[i * cols + j - 1] + insert(&text[j - 1]));
                if data[i - 1] == text[j - 1] {
                    best = best.min(cells[(i - 1) * cols + j - 1]);
                }
                cells[i * cols + j] = best;
            }
        }
        EditTable { rows, cols, cells }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.cols + j]
    }

    /// `(data.len() + 1, text.len() + 1)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn distance(&self) -> f64 {
        self.cells[self.cells.len() - 1]
    }
}

/// Soft edit distance: deleting data token `w` or inserting text token `w`
/// costs `-ln p(w)`; matching tokens cost nothing.
pub fn d_sed(data: &[Token], text: &[Token], model: &UnigramModel) -> f64 {
    sed_table(data, text, model).distance()
}

pub fn sed_table(data: &[Token], text: &[Token], model: &UnigramModel) -> EditTable {
    EditTable::build(
        data,
        text,
        |w| model.neg_log_prob(w),
        |w| model.neg_log_prob(w),
    )
}

fn score_sample(
    sample: &Sample,
    kind: MetricKind,
    side: Side,
    model: Option<&UnigramModel>,
) -> f64 {
    let (data, text) = (&sample.data_tokens, &sample.text_tokens);
    match kind {
        MetricKind::Length => d_length(&sample.tokens(side)) as f64,
        MetricKind::Rarity => d_rarity(&sample.tokens(side), model.expect("checked by caller")),
        MetricKind::Dld => d_dld(data, text) as f64,
        MetricKind::Ped => d_ped(data, text) as f64,
        MetricKind::Sed => d_sed(data, text, model.expect("checked by caller")),
    }
}

/// One score per sample, in id order. Rarity and SED require `model`; the
/// other metrics reject one.
pub fn score_corpus(
    corpus: &Corpus,
    kind: MetricKind,
    side: Side,
    model: Option<&UnigramModel>,
) -> Result<Vec<DifficultyScore>> {
    kind.check_side(side)?;
    match (kind.needs_model(), model.is_some()) {
        (true, false) => {
            return Err(Error::config(format!(
                "metric {kind} needs a unigram model"
            )))
        }
        (false, true) => {
            return Err(Error::config(format!(
                "metric {kind} takes no unigram model"
            )))
        }
        _ => {}
    }
    Ok(corpus
        .samples()
        .par_iter()
        .map(|s| DifficultyScore {
            sample_id: s.id,
            value: score_sample(s, kind, side, model),
        })
        .collect())
}

/// Fits the default model for `kind` (if any) and scores the corpus.
pub fn score_corpus_with_default_model(
    corpus: &Corpus,
    kind: MetricKind,
    side: Side,
) -> Result<(Vec<DifficultyScore>, Option<UnigramModel>)> {
    kind.check_side(side)?;
    let model = kind
        .default_model_side(side)
        .map(|model_side| UnigramModel::fit(corpus, model_side))
        .transpose()?;
    let scores = score_corpus(corpus, kind, side, model.as_ref())?;
    Ok((scores, model))
}

#[derive(Debug, Serialize, Deserialize)]
struct ScoreRow {
    sample_id: usize,
    metric: MetricKind,
    side: Side,
    value: String,
}

/// Writes `sample_id,metric,side,value` with nine decimal digits.
pub fn write_scores_csv<W: Write>(
    out: W,
    scores: &[DifficultyScore],
    kind: MetricKind,
    side: Side,
) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for score in scores {
        writer.serialize(ScoreRow {
            sample_id: score.sample_id,
            metric: kind,
            side,
            value: format!("{:.9}", score.value),
        })?;
    }
    writer
        .flush()
        .map_err(|e| Error::io("<scores output>", e))?;
    Ok(())
}

/// Reads a scores CSV; every row must name the same metric and side.
pub fn read_scores_csv<R: Read>(input: R) -> Result<(MetricKind, Side, Vec<DifficultyScore>)> {
    let mut reader = csv::Reader::from_reader(input);
    let mut scores = Vec::new();
    let mut label: Option<(MetricKind, Side)> = None;
    for (idx, row) in reader.deserialize::<ScoreRow>().enumerate() {
        let row_no = idx + 1;
        let row = row.map_err(|e| Error::Row {
            row: row_no,
            message: e.to_string(),
        })?;
        match label {
            None => label = Some((row.metric, row.side)),
            Some(l) if l != (row.metric, row.side) => {
                return Err(Error::Row {
                    row: row_no,
                    message: format!(
                        "mixed metrics in one file: {}/{} after {}/{}",
                        row.metric, row.side, l.0, l.1
                    ),
                })
            }
            _ => {}
        }
        let value = row.value.trim().parse::<f64>().map_err(|e| Error::Row {
            row: row_no,
            message: format!("bad value {:?}: {e}", row.value),
        })?;
        scores.push(DifficultyScore {
            sample_id: row.sample_id,
            value,
        });
    }
    let (kind, side) = label.ok_or_else(|| Error::EmptyCorpus("scores file has no rows".into()))?;
    Ok((kind, side, scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_e2e_mr, SlotValue};
    use std::collections::BTreeMap;

    fn toks(s: &str) -> Vec<Token> {
        s.split_whitespace()
            .map(|w| Token::new(w).unwrap())
            .collect()
    }

    /// prob(a) = 0.5, prob(b) = 0.25, prob(c) = 1/6.
    fn abc_model() -> UnigramModel {
        let counts = BTreeMap::from([
            ("a".to_owned(), 5),
            ("b".to_owned(), 2),
            ("c".to_owned(), 1),
        ]);
        let model = UnigramModel::from_counts(Side::Joint, counts).unwrap();
        assert!((model.prob("a") - 0.5).abs() < 1e-15);
        assert!((model.prob("b") - 0.25).abs() < 1e-15);
        model
    }

    /// -ln 0.5 for `a`, -ln 0.25 for everything else. No add-one model puts
    /// all of its mass on three seen tokens, so these weights go through the
    /// table directly.
    fn half_quarter_weight(w: &Token) -> f64 {
        if w.as_str() == "a" {
            -(0.5f64).ln()
        } else {
            -(0.25f64).ln()
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(d_length(&toks("The Vaults is a pub")), 5);
        assert_eq!(d_length(&[]), 0);
        let sample = Sample::new(
            0,
            parse_e2e_mr("name[The Vaults], x[y]").unwrap(),
            "a b c d e f",
        );
        assert_eq!(sample.data_tokens.len(), 5);
        assert_eq!(d_length(&sample.tokens(Side::Joint)), 11);
    }

    #[test]
    fn rarity_examples() {
        let model = abc_model();
        assert_eq!(d_rarity(&[], &model).to_bits(), 0.0f64.to_bits());
        assert!((d_rarity(&toks("a b"), &model) - 2.079442).abs() < 1e-6);
        assert!(d_rarity(&toks("a"), &model) > 0.0);
    }

    #[test]
    fn dld_examples() {
        assert_eq!(d_dld(&toks("a b c"), &toks("a b c")), 0);
        assert_eq!(d_dld(&toks("a b"), &toks("b a")), 1);
        assert_eq!(d_dld(&toks("k i t t e n"), &toks("s i t t i n g")), 3);
        // OSA cannot edit a transposed pair again: unrestricted DL would give 2.
        assert_eq!(d_dld(&toks("c a"), &toks("a b c")), 3);
        assert_eq!(d_dld(&toks(""), &toks("a b")), 2);
        assert_eq!(d_dld(&toks("a b"), &toks("")), 2);
    }

    #[test]
    fn ped_examples() {
        assert_eq!(d_ped(&toks("a b c"), &toks("a b c")), 0);
        assert_eq!(d_ped(&toks("a b"), &toks("c d e")), 5);
        assert_eq!(d_ped(&toks("a b"), &toks("b a")), 2);
    }

    #[test]
    fn sed_examples() {
        let model = abc_model();
        assert_eq!(d_sed(&toks("a b c"), &toks("a b c"), &model), 0.0);
        let text = toks("b c a a");
        assert_eq!(d_sed(&[], &text, &model), d_rarity(&text, &model));
        let v = EditTable::build(
            &toks("a b"),
            &toks("b c"),
            half_quarter_weight,
            half_quarter_weight,
        )
        .distance();
        assert!((v - 2.079442).abs() < 1e-6, "{v}");
        // same shape under the fitted model: delete a (ln 2) + insert c (ln 6)
        let v = d_sed(&toks("a b"), &toks("b c"), &model);
        assert!((v - (2f64.ln() + 6f64.ln())).abs() < 1e-12, "{v}");
    }

    #[test]
    fn sed_table_borders_are_prefix_rarity() {
        let model = abc_model();
        let (data, text) = (toks("a b a"), toks("c b"));
        let table = sed_table(&data, &text, &model);
        assert_eq!(table.dims(), (4, 3));
        for i in 0..4 {
            assert!((table.get(i, 0) - d_rarity(&data[..i], &model)).abs() < 1e-12);
        }
        for j in 0..3 {
            assert!((table.get(0, j) - d_rarity(&text[..j], &model)).abs() < 1e-12);
        }
    }

    fn toy_corpus() -> Corpus {
        let sv = |slot: &str, v: &str| SlotValue {
            slot: slot.into(),
            value_tokens: toks(v),
        };
        Corpus::from_pairs([
            (vec![sv("a", "b")], "b c"),
            (vec![sv("c", "a a")], "a b a"),
            (vec![sv("b", "c")], "c"),
        ])
    }

    #[test]
    fn score_corpus_length_text() {
        let corpus = toy_corpus();
        let scores = score_corpus(&corpus, MetricKind::Length, Side::Text, None).unwrap();
        assert_eq!(
            scores.iter().map(|s| s.value).collect::<Vec<_>>(),
            [2.0, 3.0, 1.0]
        );
        assert_eq!(
            scores.iter().map(|s| s.sample_id).collect::<Vec<_>>(),
            [0, 1, 2]
        );
    }

    #[test]
    fn score_corpus_config_errors() {
        let corpus = toy_corpus();
        let model = abc_model();
        for kind in [MetricKind::Dld, MetricKind::Ped] {
            for side in [Side::Data, Side::Text] {
                assert!(matches!(
                    score_corpus(&corpus, kind, side, None),
                    Err(Error::Config(_))
                ));
            }
        }
        assert!(score_corpus(&corpus, MetricKind::Sed, Side::Text, Some(&model)).is_err());
        assert!(score_corpus(&corpus, MetricKind::Sed, Side::Joint, None).is_err());
        assert!(score_corpus(&corpus, MetricKind::Length, Side::Text, Some(&model)).is_err());
    }

    #[test]
    fn score_corpus_sed_matches_pointwise() {
        let corpus = toy_corpus();
        let model = abc_model();
        let scores = score_corpus(&corpus, MetricKind::Sed, Side::Joint, Some(&model)).unwrap();
        for (score, sample) in scores.iter().zip(corpus.samples()) {
            let direct = d_sed(&sample.data_tokens, &sample.text_tokens, &model);
            assert_eq!(score.value.to_bits(), direct.to_bits());
        }
    }

    #[test]
    fn combinations_are_nine() {
        let combos = MetricKind::all_combinations();
        assert_eq!(combos.len(), 9);
        assert!(combos.contains(&(MetricKind::Sed, Side::Joint)));
        assert!(!combos.contains(&(MetricKind::Dld, Side::Text)));
    }

    #[test]
    fn scores_csv_format() {
        let scores = [
            DifficultyScore {
                sample_id: 0,
                value: 2.0794415416798357,
            },
            DifficultyScore {
                sample_id: 1,
                value: 3.0,
            },
        ];
        let mut buf = Vec::new();
        write_scores_csv(&mut buf, &scores, MetricKind::Sed, Side::Joint).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "sample_id,metric,side,value\n0,sed,joint,2.079441542\n1,sed,joint,3.000000000\n"
        );
        let (kind, side, back) = read_scores_csv(buf.as_slice()).unwrap();
        assert_eq!((kind, side), (MetricKind::Sed, Side::Joint));
        assert_eq!(back[1].value, 3.0);

        let mixed = "sample_id,metric,side,value\n0,sed,joint,1\n1,ped,joint,2\n";
        assert!(read_scores_csv(mixed.as_bytes()).is_err());
    }
}
