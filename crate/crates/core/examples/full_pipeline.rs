//! Ingest, score, schedule and analyze through the command-line entry point,
//! writing every artifact under a temporary directory.

use clap::Parser;
use d2t_curriculum::cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    let out = std::env::temp_dir().join(format!("d2t-curriculum-demo-{}", std::process::id()));
    let csv = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/e2e_sample.csv");
    let dir = |name: &str| out.join(name).to_string_lossy().into_owned();
    let corpus = out
        .join("ingest/corpus.jsonl")
        .to_string_lossy()
        .into_owned();
    let scores = out.join("score/scores.csv").to_string_lossy().into_owned();

    let commands: [Vec<String>; 4] = [
        args(&["ingest", "--input", csv, "--output", &dir("ingest")]),
        args(&[
            "score",
            "--input",
            &corpus,
            "--metric",
            "sed:joint",
            "--output",
            &dir("score"),
        ]),
        args(&[
            "schedule",
            "--input",
            &scores,
            "--lambda",
            "20",
            "--steps",
            "25",
            "--batch-size",
            "4",
            "--output",
            &dir("schedule"),
        ]),
        args(&[
            "analyze",
            "--input",
            &corpus,
            "--buckets",
            "5",
            "--output",
            &dir("analyze"),
        ]),
    ];
    for argv in commands {
        let cli = Cli::try_parse_from(&argv)?;
        println!("$ {}", argv.join(" "));
        println!("{}", run(&cli)?);
    }
    println!("artifacts in {}", out.display());
    Ok(())
}

fn args(rest: &[&str]) -> Vec<String> {
    std::iter::once("d2t-curriculum")
        .chain(rest.iter().copied())
        .map(str::to_owned)
        .collect()
}
