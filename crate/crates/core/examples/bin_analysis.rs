//! Report how many samples share each difficulty score, per metric, and a
//! CDF histogram for SED.

use d2t_curriculum::analysis::{cdf_histogram, compare_metrics, write_bin_reports_csv};
use d2t_curriculum::curriculum::cdf_normalize;
use d2t_curriculum::metrics::score_corpus_with_default_model;
use d2t_curriculum::synthetic::{synthetic_corpus, SyntheticConfig};
use d2t_curriculum::{MetricKind, Side};

fn main() -> d2t_curriculum::Result<()> {
    let corpus = synthetic_corpus(&SyntheticConfig::default());
    let reports = compare_metrics(&corpus, &MetricKind::all_combinations())?;
    write_bin_reports_csv(std::io::stdout().lock(), &reports)?;

    let (scores, _) = score_corpus_with_default_model(&corpus, MetricKind::Sed, Side::Joint)?;
    let cdf = cdf_normalize(&scores)?;
    println!();
    for bucket in cdf_histogram(&cdf, 10)? {
        println!(
            "({:.1}, {:.1}] {:>4} {}",
            bucket.low,
            bucket.high,
            bucket.count,
            "#".repeat(bucket.count / 5)
        );
    }
    Ok(())
}
