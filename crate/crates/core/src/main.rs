use clap::Parser;

use d2t_curriculum::cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let summary = run(&cli)?;
    print!("{summary}");
    Ok(())
}
