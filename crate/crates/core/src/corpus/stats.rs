//! Corpus statistics.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{preprocess, RawRecord, EMOTIONS};
use crate::error::{Error, Result};

/// Mean and population standard deviation of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self {
                mean: 0.0,
                std: 0.0,
            };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        Self {
            mean,
            std: var.max(0.0).sqrt(),
        }
    }
}

/// Aggregate statistics of a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub record_count: usize,
    /// Positive counts per emotion, canonical order.
    pub per_label_counts: [usize; 6],
    pub avg_sentences_per_entry: MeanStd,
    pub avg_words_per_sentence: MeanStd,
    /// Fraction of records carrying two or more labels.
    pub multi_label_fraction: f64,
    /// Share of records per platform, descending, when a platform tag exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub platform_shares: Option<Vec<(String, f64)>>,
    /// Most frequent preprocessed unigrams with their counts.
    pub top_terms: Vec<(String, u64)>,
}

/// Characters that terminate a sentence in the raw text.
fn is_sentence_terminal(c: char) -> bool {
    matches!(c, '\u{0964}' | '\u{0965}' | '.' | '!' | '?')
}

/// Compute corpus statistics.
///
/// Sentences are segmented on terminal punctuation (danda, '.', '!', '?')
/// of the raw text; word counts are whitespace tokens of the preprocessed
/// text of each sentence.
pub fn compute_stats(records: &[RawRecord], top_terms: usize) -> Result<CorpusStats> {
    if records.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let n = records.len();

    let mut per_label_counts = [0usize; 6];
    let mut multi = 0usize;
    let mut sentences_per_entry = Vec::with_capacity(n);
    let mut words_per_sentence = Vec::new();
    let mut term_counts: HashMap<String, u64> = HashMap::new();
    let mut platform_counts: HashMap<String, usize> = HashMap::new();
    let mut any_platform = false;

    for record in records {
        for (j, &e) in EMOTIONS.iter().enumerate() {
            if record.labels.get(e) {
                per_label_counts[j] += 1;
            }
        }
        if record.labels.count() >= 2 {
            multi += 1;
        }
        let sentences: Vec<&str> = record
            .text
            .split(is_sentence_terminal)
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        sentences_per_entry.push(sentences.len() as f64);
        for sentence in &sentences {
            let words = preprocess(sentence);
            words_per_sentence.push(words.split_whitespace().count() as f64);
        }
        for token in preprocess(&record.text).split_whitespace() {
            *term_counts.entry(token.to_string()).or_insert(0) += 1;
        }
        if let Some(p) = &record.platform {
            any_platform = true;
            *platform_counts.entry(p.clone()).or_insert(0) += 1;
        }
    }

    let mut ranked: Vec<(String, u64)> = term_counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(top_terms);

    let platform_shares = if any_platform {
        let mut shares: Vec<(String, f64)> = platform_counts
            .into_iter()
            .map(|(p, c)| (p, c as f64 / n as f64))
            .collect();
        shares.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
        Some(shares)
    } else {
        None
    };

    Ok(CorpusStats {
        record_count: n,
        per_label_counts,
        avg_sentences_per_entry: MeanStd::of(&sentences_per_entry),
        avg_words_per_sentence: MeanStd::of(&words_per_sentence),
        multi_label_fraction: multi as f64 / n as f64,
        platform_shares,
        top_terms: ranked,
    })
}
