//! Score a corpus under every metric/side combination and write one of them
//! as CSV to stdout.

use d2t_curriculum::corpus::load_e2e;
use d2t_curriculum::metrics::{score_corpus_with_default_model, write_scores_csv};
use d2t_curriculum::{MetricKind, Side};

fn main() -> d2t_curriculum::Result<()> {
    let corpus = load_e2e(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/e2e_sample.csv"
    ))?;
    for (kind, side) in MetricKind::all_combinations() {
        let (scores, _) = score_corpus_with_default_model(&corpus, kind, side)?;
        let values: Vec<String> = scores
            .iter()
            .take(5)
            .map(|s| format!("{:.2}", s.value))
            .collect();
        println!("{:>6}/{:<5} {}", kind.as_str(), side.as_str(), values.join(" "));
    }
    println!();
    let (scores, _) = score_corpus_with_default_model(&corpus, MetricKind::Sed, Side::Joint)?;
    write_scores_csv(
        std::io::stdout().lock(),
        &scores,
        MetricKind::Sed,
        Side::Joint,
    )
}
