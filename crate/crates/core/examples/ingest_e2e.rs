//! Parse E2E meaning representations and references into a corpus.
//!
//! Run with `cargo run --example ingest_e2e [path/to/file.csv]`.

use d2t_curriculum::corpus::{load_e2e, parse_e2e_mr, tokenize};
use d2t_curriculum::Side;

fn main() -> d2t_curriculum::Result<()> {
    let mr = "name[The Mill], customer rating[5 out of 5], near[Café Rouge]";
    for pair in parse_e2e_mr(mr)? {
        let value: Vec<&str> = pair.value_tokens.iter().map(|t| t.as_str()).collect();
        println!("{:<18} -> {:?}", pair.slot_token().as_str(), value);
    }
    let text: Vec<String> = tokenize("The Mill (near Café Rouge) is rated 5!")
        .iter()
        .map(|t| t.as_str().to_owned())
        .collect();
    println!("text tokens: {text:?}\n");

    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/e2e_sample.csv").into()
    });
    let corpus = load_e2e(&path)?;
    println!("{path}: M = {}", corpus.len());
    for sample in corpus.samples().iter().take(3) {
        println!(
            "#{} data={} text={} joint={}",
            sample.id,
            sample.tokens(Side::Data).len(),
            sample.tokens(Side::Text).len(),
            sample.tokens(Side::Joint).len()
        );
    }
    Ok(())
}
