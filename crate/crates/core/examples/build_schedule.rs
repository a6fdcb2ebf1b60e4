//! Build a competence-gated batch schedule over a synthetic corpus and show
//! how the eligible pool grows.

use d2t_curriculum::curriculum::{cdf_normalize, eligible_set, generate_schedule};
use d2t_curriculum::metrics::score_corpus_with_default_model;
use d2t_curriculum::synthetic::{synthetic_corpus, SyntheticConfig};
use d2t_curriculum::{CompetenceParams, MetricKind, Side};

fn main() -> d2t_curriculum::Result<()> {
    let corpus = synthetic_corpus(&SyntheticConfig::default());
    let (scores, _) = score_corpus_with_default_model(&corpus, MetricKind::Sed, Side::Joint)?;
    let cdf = cdf_normalize(&scores)?;
    let params = CompetenceParams::new(0.1, 200.0)?;
    let schedule = generate_schedule(&cdf, &params, 250, 8, 42)?;

    for step in schedule.steps.iter().filter(|s| s.t == 1 || s.t % 50 == 0) {
        let pool = eligible_set(&cdf, step.competence).len();
        let hardest = step
            .ids
            .iter()
            .map(|&id| cdf.get(id).unwrap_or(0.0))
            .fold(0.0, f64::max);
        println!(
            "t={:>3} c={:.3} pool={:>4} hardest in batch={:.3} ids={:?}",
            step.t, step.competence, pool, hardest, step.ids
        );
    }

    let mut out = Vec::new();
    schedule.write_jsonl(&mut out, MetricKind::Sed, Side::Joint)?;
    let text = String::from_utf8_lossy(&out);
    println!("\nfirst lines of the schedule file:");
    for line in text.lines().take(3) {
        println!("{line}");
    }
    Ok(())
}
