//! Deterministic synthetic corpora for examples, demos and tests.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::{LabelVector, RawRecord, EMOTIONS};

/// One strongly indicative Bangla keyword per emotion, canonical order.
pub const EMOTION_KEYWORDS: [&str; 6] = [
    "ভালোবাসা", // love
    "আনন্দ",  // joy
    "অবাক",   // surprise
    "রাগ",    // anger
    "দুঃখ",   // sadness
    "ভয়",    // fear
];

const FILLERS: [&str; 10] = [
    "আজ",
    "খুব",
    "একটা",
    "মনে",
    "হচ্ছে",
    "দিন",
    "কথা",
    "মানুষ",
    "সময়",
    "তাই",
];

/// A corpus where each emotion is perfectly separable by its keyword:
/// every record contains the keywords of exactly the emotions it is
/// labeled with, padded with shared filler words. Every `multi_every`-th
/// record carries a second emotion as well.
pub fn keyword_corpus(per_label: usize, multi_every: usize, seed: u64) -> Vec<RawRecord> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(per_label * 6);
    let mut id = 0u32;
    for (j, &emotion) in EMOTIONS.iter().enumerate() {
        for k in 0..per_label {
            let mut labels = LabelVector::only(emotion);
            let mut words: Vec<&str> = Vec::new();
            for _ in 0..rng.random_range(2..=4) {
                words.push(FILLERS.choose(&mut rng).expect("fillers are non-empty"));
            }
            let position = rng.random_range(0..=words.len());
            words.insert(position, EMOTION_KEYWORDS[j]);
            if multi_every > 0 && k % multi_every == multi_every - 1 {
                let other = (j + 1 + rng.random_range(0..5)) % 6;
                labels.set(EMOTIONS[other], true);
                words.push(EMOTION_KEYWORDS[other]);
            }
            records.push(RawRecord::new(id, words.join(" "), labels));
            id += 1;
        }
    }
    records
}

/// A corpus with independent Bernoulli labels at the given rates and
/// label-uncorrelated filler text. Useful for split and metric tests.
pub fn random_multilabel_corpus(n: usize, positive_rates: [f64; 6], seed: u64) -> Vec<RawRecord> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let mut labels = LabelVector::default();
            for (j, &e) in EMOTIONS.iter().enumerate() {
                labels.set(e, rng.random_range(0.0..1.0) < positive_rates[j]);
            }
            let count = rng.random_range(3..=8);
            let words: Vec<&str> = (0..count)
                .map(|_| *FILLERS.choose(&mut rng).expect("fillers are non-empty"))
                .collect();
            RawRecord::new(i as u32, words.join(" "), labels)
        })
        .collect()
}
