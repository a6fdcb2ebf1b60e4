//! Compare the edit-based difficulty metrics on one data/text pair and print
//! the weighted DP table behind SED.

use d2t_curriculum::corpus::{linearize_data, parse_e2e_mr, tokenize};
use d2t_curriculum::metrics::{d_dld, d_length, d_ped, d_rarity, d_sed, sed_table};
use d2t_curriculum::{Corpus, Side, UnigramModel};

fn main() -> d2t_curriculum::Result<()> {
    let corpus = Corpus::from_pairs([
        (
            parse_e2e_mr("name[Zizzi], food[Thai]")?,
            "Zizzi serves Thai food.",
        ),
        (
            parse_e2e_mr("name[Zizzi], area[city centre]")?,
            "Zizzi is in the city centre.",
        ),
        (
            parse_e2e_mr("name[Bibimbap], food[Thai]")?,
            "Thai food at Bibimbap.",
        ),
    ]);
    let model = UnigramModel::fit(&corpus, Side::Joint)?;

    let data = linearize_data(&parse_e2e_mr("name[Zizzi], food[Thai]")?);
    let text = tokenize("Zizzi serves Thai food.");
    println!("data: {}", join(&data));
    println!("text: {}\n", join(&text));
    println!("length(text)  = {}", d_length(&text));
    println!("rarity(text)  = {:.4}", d_rarity(&text, &model));
    println!("dld           = {}", d_dld(&data, &text));
    println!("ped           = {}", d_ped(&data, &text));
    println!("sed           = {:.4}\n", d_sed(&data, &text, &model));

    let table = sed_table(&data, &text, &model);
    let (rows, cols) = table.dims();
    print!("{:>8}", "");
    for j in 0..cols {
        print!("{:>8}", if j == 0 { "-" } else { text[j - 1].as_str() });
    }
    println!();
    for i in 0..rows {
        print!("{:>8}", if i == 0 { "-" } else { data[i - 1].as_str() });
        for j in 0..cols {
            print!("{:>8.3}", table.get(i, j));
        }
        println!();
    }
    Ok(())
}

fn join(tokens: &[d2t_curriculum::Token]) -> String {
    tokens
        .iter()
        .map(|t| t.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}
