#![allow(dead_code)]

pub mod golden;
pub mod oracle;

use std::path::PathBuf;

use d2t_curriculum::rng::ScheduleRng;
use d2t_curriculum::Token;

pub fn toks(words: &[&str]) -> Vec<Token> {
    words.iter().map(|w| Token::new(*w).unwrap()).collect()
}

/// Every sequence over `alphabet` with length `0..=max_len`.
pub fn all_sequences(alphabet: &[&str], max_len: usize) -> Vec<Vec<Token>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::<Token>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for sym in alphabet {
                let mut s = seq.clone();
                s.push(Token::new(*sym).unwrap());
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn random_sequence(rng: &mut ScheduleRng, alphabet: &[&str], max_len: usize) -> Vec<Token> {
    let len = rng.below(max_len as u64 + 1) as usize;
    (0..len)
        .map(|_| Token::new(alphabet[rng.below(alphabet.len() as u64) as usize]).unwrap())
        .collect()
}

pub fn unit(rng: &mut ScheduleRng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}
