//! Fit an add-one unigram model and show the -ln p weight of each token.

use d2t_curriculum::corpus::read_e2e;
use d2t_curriculum::{Side, UnigramModel};

const CSV: &str = "mr,ref
\"name[Alimentum], food[Thai]\",Alimentum serves Thai food.
\"name[Alimentum], area[riverside]\",Alimentum is by the riverside.
\"name[Zizzi], food[Thai]\",Zizzi serves Thai food too.
";

fn main() -> d2t_curriculum::Result<()> {
    let corpus = read_e2e(CSV.as_bytes())?;
    for side in Side::ALL {
        let model = UnigramModel::fit(&corpus, side)?;
        println!(
            "{side}: {} tokens, {} types, unseen weight {:.4}",
            model.total(),
            model.vocab_size(),
            -model.unseen_prob().ln()
        );
    }

    let model = UnigramModel::fit(&corpus, Side::Text)?;
    let mut weights: Vec<(&str, f64)> =
        ["serves", "Thai", "Alimentum", "Zizzi", "riverside", "pizza"]
            .into_iter()
            .map(|w| (w, model.neg_log_prob_str(w)))
            .collect();
    weights.sort_by(|a, b| a.1.total_cmp(&b.1));
    for (w, cost) in weights {
        println!("  {w:<10} count {:>2}  -ln p = {cost:.4}", model.count(w));
    }
    Ok(())
}
