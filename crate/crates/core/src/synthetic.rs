//! Deterministic synthetic data-to-text corpora.
//!
//! Each sample picks a random subset of slots, fills them with Zipf-distributed
//! values, and realizes a text that mentions the values in shuffled order with
//! Zipf-distributed filler words in between. Lengths, token frequencies and
//! data/text alignment all vary, so every metric gets a non-degenerate score
//! distribution.

use crate::corpus::{tokenize, Corpus, SlotValue};
use crate::rng::ScheduleRng;

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub num_samples: usize,
    /// Slot inventory size; each sample uses between `min_pairs` and `num_slots` of them.
    pub num_slots: usize,
    pub min_pairs: usize,
    pub values_per_slot: usize,
    pub filler_vocab: usize,
    pub zipf_exponent: f64,
    /// Chance that a value is left out of the text.
    pub drop_rate: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            num_samples: 1000,
            num_slots: 8,
            min_pairs: 3,
            values_per_slot: 40,
            filler_vocab: 200,
            zipf_exponent: 1.1,
            drop_rate: 0.1,
            seed: 42,
        }
    }
}

struct Zipf {
    cumulative: Vec<f64>,
}

impl Zipf {
    fn new(n: usize, exponent: f64) -> Self {
        let mut acc = 0.0;
        let cumulative = (1..=n)
            .map(|k| {
                acc += 1.0 / (k as f64).powf(exponent);
                acc
            })
            .collect();
        Zipf { cumulative }
    }

    fn draw(&self, rng: &mut ScheduleRng) -> usize {
        let total = *self.cumulative.last().expect("non-empty support");
        let u = unit(rng) * total;
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }
}

/// Uniform in `[0, 1)` from the top 53 bits of one word.
fn unit(rng: &mut ScheduleRng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

const SLOT_NAMES: &[&str] = &[
    "name",
    "eatType",
    "food",
    "priceRange",
    "customer rating",
    "area",
    "familyFriendly",
    "near",
    "cuisine",
    "openHours",
    "seating",
    "parking",
];

fn slot_name(i: usize) -> String {
    SLOT_NAMES
        .get(i)
        .map(|s| (*s).to_owned())
        .unwrap_or_else(|| format!("slot{i}"))
}

/// Value `k` of slot `s`: one to three tokens.
fn value_text(slot: usize, k: usize) -> String {
    (0..=(k % 3))
        .map(|part| format!("v{slot}x{k}p{part}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn synthetic_corpus(config: &SyntheticConfig) -> Corpus {
    assert!(config.num_slots >= config.min_pairs && config.min_pairs >= 1);
    let mut rng = ScheduleRng::new(config.seed);
    let values = Zipf::new(config.values_per_slot, config.zipf_exponent);
    let fillers = Zipf::new(config.filler_vocab, config.zipf_exponent);

    let mut pairs = Vec::with_capacity(config.num_samples);
    for _ in 0..config.num_samples {
        let span = (config.num_slots - config.min_pairs + 1) as u64;
        let num_pairs = config.min_pairs + rng.below(span) as usize;

        let mut slots: Vec<usize> = (0..config.num_slots).collect();
        for i in 0..num_pairs {
            let j = i + rng.below((slots.len() - i) as u64) as usize;
            slots.swap(i, j);
        }
        slots.truncate(num_pairs);

        let data: Vec<(usize, String)> = slots
            .iter()
            .map(|&s| (s, value_text(s, values.draw(&mut rng))))
            .collect();

        let mut order: Vec<usize> = (0..data.len()).collect();
        for i in (1..order.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            order.swap(i, j);
        }
        let mut words = Vec::new();
        for &idx in &order {
            for _ in 0..=rng.below(3) {
                words.push(format!("w{}", fillers.draw(&mut rng)));
            }
            if unit(&mut rng) >= config.drop_rate {
                words.push(data[idx].1.clone());
            }
        }
        words.push(".".to_owned());

        let data = data
            .into_iter()
            .map(|(s, v)| SlotValue {
                slot: slot_name(s),
                value_tokens: tokenize(&v),
            })
            .collect();
        pairs.push((data, words.join(" ")));
    }
    Corpus::from_pairs(pairs)
}
