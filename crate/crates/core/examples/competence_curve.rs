//! Print the square-root competence curve for a few starting competences.

use d2t_curriculum::curriculum::competence;
use d2t_curriculum::CompetenceParams;

fn main() -> d2t_curriculum::Result<()> {
    let lambda = 1000.0;
    let curves: Vec<CompetenceParams> = [0.01, 0.1, 0.5]
        .into_iter()
        .map(|c0| CompetenceParams::new(c0, lambda))
        .collect::<Result<_, _>>()?;
    println!(
        "{:>6} {:>8} {:>8} {:>8}",
        "t", "c0=0.01", "c0=0.1", "c0=0.5"
    );
    for t in (0..=1200).step_by(100) {
        print!("{t:>6}");
        for p in &curves {
            print!(" {:>8.4}", competence(t, p));
        }
        println!();
    }
    Ok(())
}
