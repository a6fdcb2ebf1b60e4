//! Bin statistics and CDF histograms.
//!
//! A bin is the set of samples sharing one raw difficulty score. Metrics that
//! hand the same score to many samples produce large bins, and ordering inside
//! a bin is left to chance.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{Corpus, Side};
use crate::curriculum::CdfTable;
use crate::error::{Error, Result};
use crate::metrics::{score_corpus_with_default_model, DifficultyScore, MetricKind};

/// Scores within this distance of a bin's smallest member share the bin.
pub const BIN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinReport {
    pub metric: MetricKind,
    pub side: Side,
    pub num_bins: usize,
    pub avg_bin_size: f64,
    pub max_bin_size: usize,
}

/// Sizes of the score bins, in ascending score order. Each bin is anchored at
/// its smallest score so tolerance never chains across a long run of
/// near-equal values.
pub fn bin_sizes(scores: &[DifficultyScore], tolerance: f64) -> Vec<usize> {
    let mut values: Vec<f64> = scores.iter().map(|s| s.value).collect();
    values.sort_by(f64::total_cmp);
    let mut sizes = Vec::new();
    let mut anchor = f64::NAN;
    for v in values {
        if sizes.is_empty() || v - anchor > tolerance {
            sizes.push(1);
            anchor = v;
        } else {
            *sizes.last_mut().expect("non-empty") += 1;
        }
    }
    sizes
}

/// Corpus size divided by the number of distinct scores. Zero for no scores.
pub fn avg_bin_size(scores: &[DifficultyScore]) -> f64 {
    let bins = bin_sizes(scores, BIN_TOLERANCE).len();
    if bins == 0 {
        return 0.0;
    }
    scores.len() as f64 / bins as f64
}

pub fn bin_report(scores: &[DifficultyScore], metric: MetricKind, side: Side) -> Result<BinReport> {
    if scores.is_empty() {
        return Err(Error::EmptyCorpus("no scores to bin".into()));
    }
    let tolerance = if metric.is_integer_valued() {
        0.0
    } else {
        BIN_TOLERANCE
    };
    let sizes = bin_sizes(scores, tolerance);
    Ok(BinReport {
        metric,
        side,
        num_bins: sizes.len(),
        avg_bin_size: scores.len() as f64 / sizes.len() as f64,
        max_bin_size: sizes.iter().copied().max().unwrap_or(0),
    })
}

/// One histogram bucket `(low, high]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBucket {
    #[serde(rename = "bucket_low")]
    pub low: f64,
    #[serde(rename = "bucket_high")]
    pub high: f64,
    pub count: usize,
}

/// Counts CDF values in `num_buckets` equal-width right-closed buckets over
/// `[0, 1]`. Bucketing works on exact ranks, so a value sitting on a bucket
/// edge (`0.3` with ten buckets) lands in the bucket it closes.
pub fn cdf_histogram(cdf: &CdfTable, num_buckets: usize) -> Result<Vec<HistogramBucket>> {
    if num_buckets == 0 {
        return Err(Error::config("histogram needs at least one bucket"));
    }
    let (m, n) = (cdf.len(), num_buckets);
    let mut counts = vec![0usize; n];
    for (id, _) in cdf.entries() {
        let rank = cdf.rank(id).expect("id from entries");
        // smallest k with rank / m <= k / n, i.e. ceil(rank * n / m)
        let k = (rank * n).div_ceil(m);
        counts[k.clamp(1, n) - 1] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBucket {
            low: i as f64 / n as f64,
            high: (i + 1) as f64 / n as f64,
            count,
        })
        .collect())
}

/// Scores the corpus once per requested `(metric, side)` pair, fitting the
/// metric's default unigram model where needed.
pub fn compare_metrics(corpus: &Corpus, kinds: &[(MetricKind, Side)]) -> Result<Vec<BinReport>> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus(
            "cannot compare metrics on zero samples".into(),
        ));
    }
    for (kind, side) in kinds {
        kind.check_side(*side)?;
    }
    kinds
        .par_iter()
        .map(|&(kind, side)| {
            let (scores, _) = score_corpus_with_default_model(corpus, kind, side)?;
            bin_report(&scores, kind, side)
        })
        .collect()
}

/// `metric,side,num_bins,avg_bin_size,max_bin_size`
pub fn write_bin_reports_csv<W: Write>(out: W, reports: &[BinReport]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["metric", "side", "num_bins", "avg_bin_size", "max_bin_size"])?;
    for r in reports {
        writer.write_record([
            r.metric.as_str().to_owned(),
            r.side.as_str().to_owned(),
            r.num_bins.to_string(),
            format!("{:.6}", r.avg_bin_size),
            r.max_bin_size.to_string(),
        ])?;
    }
    writer
        .flush()
        .map_err(|e| Error::io("<bin report output>", e))?;
    Ok(())
}

/// `bucket_low,bucket_high,count`
pub fn write_histogram_csv<W: Write>(out: W, buckets: &[HistogramBucket]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["bucket_low", "bucket_high", "count"])?;
    for b in buckets {
        writer.write_record([
            format!("{:.6}", b.low),
            format!("{:.6}", b.high),
            b.count.to_string(),
        ])?;
    }
    writer
        .flush()
        .map_err(|e| Error::io("<histogram output>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curriculum::cdf_normalize;

    fn scores(values: &[f64]) -> Vec<DifficultyScore> {
        values
            .iter()
            .enumerate()
            .map(|(sample_id, &value)| DifficultyScore { sample_id, value })
            .collect()
    }

    #[test]
    fn avg_bin_size_examples() {
        assert_eq!(avg_bin_size(&scores(&[2.0, 2.0, 4.0])), 1.5);
        assert_eq!(avg_bin_size(&scores(&[1.0, 2.0, 3.0])), 1.0);
        assert_eq!(avg_bin_size(&scores(&[7.0; 5])), 5.0);
    }

    #[test]
    fn near_equal_reals_share_a_bin() {
        let a = 0.1 + 0.2;
        let b = 0.3;
        assert_ne!(a, b);
        assert_eq!(avg_bin_size(&scores(&[a, b, 1.0])), 1.5);
        // anchored bins: 0, 0.6e-9, 1.2e-9 do not all chain together
        assert_eq!(bin_sizes(&scores(&[0.0, 0.6e-9, 1.2e-9]), 1e-9), [2, 1]);
    }

    #[test]
    fn bin_report_fields() {
        let r = bin_report(
            &scores(&[1.0, 1.0, 1.0, 2.0]),
            MetricKind::Length,
            Side::Text,
        )
        .unwrap();
        assert_eq!(r.num_bins, 2);
        assert_eq!(r.avg_bin_size, 2.0);
        assert_eq!(r.max_bin_size, 3);
        assert!(bin_report(&[], MetricKind::Length, Side::Text).is_err());
    }

    #[test]
    fn histogram_examples() {
        let cdf = cdf_normalize(&scores(&[1.0, 2.0, 3.0])).unwrap();
        let h = cdf_histogram(&cdf, 2).unwrap();
        assert_eq!(h.iter().map(|b| b.count).collect::<Vec<_>>(), [1, 2]);
        assert_eq!((h[0].low, h[0].high, h[1].high), (0.0, 0.5, 1.0));

        let one = cdf_histogram(&cdf, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].count, 3);

        let flat = cdf_normalize(&scores(&[4.0; 6])).unwrap();
        let h = cdf_histogram(&flat, 10).unwrap();
        assert_eq!(h[9].count, 6);
        assert!(h[..9].iter().all(|b| b.count == 0));

        assert!(cdf_histogram(&cdf, 0).is_err());
    }

    #[test]
    fn histogram_edges_are_right_closed() {
        // d̄ = 0.1, 0.2, ..., 1.0 with ten buckets: exactly one per bucket
        let values: Vec<f64> = (1..=10).map(f64::from).collect();
        let cdf = cdf_normalize(&scores(&values)).unwrap();
        let h = cdf_histogram(&cdf, 10).unwrap();
        assert!(h.iter().all(|b| b.count == 1), "{h:?}");
    }

    #[test]
    fn csv_outputs() {
        let reports = [BinReport {
            metric: MetricKind::Sed,
            side: Side::Joint,
            num_bins: 3,
            avg_bin_size: 4.0 / 3.0,
            max_bin_size: 2,
        }];
        let mut buf = Vec::new();
        write_bin_reports_csv(&mut buf, &reports).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "metric,side,num_bins,avg_bin_size,max_bin_size\nsed,joint,3,1.333333,2\n"
        );

        let mut buf = Vec::new();
        write_histogram_csv(
            &mut buf,
            &[HistogramBucket {
                low: 0.0,
                high: 0.5,
                count: 1,
            }],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "bucket_low,bucket_high,count\n0.000000,0.500000,1\n"
        );
    }

    #[test]
    fn compare_metrics_rows() {
        let corpus = crate::synthetic::synthetic_corpus(&crate::synthetic::SyntheticConfig {
            num_samples: 50,
            ..Default::default()
        });
        let rows = compare_metrics(&corpus, &[(MetricKind::Length, Side::Text)]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(compare_metrics(&corpus, &[]).unwrap().is_empty());
        assert!(compare_metrics(&corpus, &[(MetricKind::Dld, Side::Data)]).is_err());
        assert!(compare_metrics(&Corpus::default(), &[]).is_err());
    }
}
