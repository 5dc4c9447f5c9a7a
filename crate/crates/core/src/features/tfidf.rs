//! TF-IDF model fitting, transformation and persistence.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{extract_ngrams, tokenize, SparseVector};
use crate::error::{Error, Result};
use crate::persist;

/// Configuration for fitting a [`TfidfModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TfidfConfig {
    /// Lowest n-gram order, 1..=3.
    #[serde(default = "default_one")]
    pub ngram_low: usize,
    /// Highest n-gram order, `ngram_low..=3`.
    #[serde(default = "default_one")]
    pub ngram_high: usize,
    /// Keep terms appearing in at least this many documents.
    #[serde(default = "default_min_df")]
    pub min_df: u32,
    /// Keep only this many highest-df terms (ties broken lexicographically).
    #[serde(default)]
    pub max_features: Option<usize>,
    /// L2-normalize transformed vectors.
    #[serde(default = "default_true")]
    pub normalize: bool,
    /// Fold Latin letters to lowercase during tokenization.
    #[serde(default)]
    pub lowercase: bool,
}

fn default_one() -> usize {
    1
}
fn default_min_df() -> u32 {
    1
}
fn default_true() -> bool {
    true
}

impl Default for TfidfConfig {
    fn default() -> Self {
        Self {
            ngram_low: 1,
            ngram_high: 1,
            min_df: 1,
            max_features: None,
            normalize: true,
            lowercase: false,
        }
    }
}

impl TfidfConfig {
    pub fn with_ngrams(low: usize, high: usize) -> Self {
        Self {
            ngram_low: low,
            ngram_high: high,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ngram_low < 1 || self.ngram_low > self.ngram_high || self.ngram_high > 3 {
            return Err(Error::InvalidConfig(format!(
                "n-gram range ({}, {}) must satisfy 1 <= low <= high <= 3",
                self.ngram_low, self.ngram_high
            )));
        }
        if self.min_df < 1 {
            return Err(Error::InvalidConfig("min_df must be >= 1".into()));
        }
        if self.max_features == Some(0) {
            return Err(Error::InvalidConfig("max_features must be >= 1".into()));
        }
        Ok(())
    }
}

/// The fitted term space: a bijection between n-gram strings and column
/// indices `0..V`, with per-term document frequencies.
///
/// Indices are assigned by lexicographic term order, which makes fitting
/// deterministic regardless of document order.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    terms: Vec<String>,
    term_to_index: HashMap<String, u32>,
    document_frequency: Vec<u32>,
    ngram_range: (usize, usize),
}

impl Vocabulary {
    fn new(entries: Vec<(String, u32)>, ngram_range: (usize, usize)) -> Self {
        let mut term_to_index = HashMap::with_capacity(entries.len());
        let mut terms = Vec::with_capacity(entries.len());
        let mut document_frequency = Vec::with_capacity(entries.len());
        for (idx, (term, df)) in entries.into_iter().enumerate() {
            term_to_index.insert(term.clone(), idx as u32);
            terms.push(term);
            document_frequency.push(df);
        }
        Self {
            terms,
            term_to_index,
            document_frequency,
            ngram_range,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<u32> {
        self.term_to_index.get(term).copied()
    }

    pub fn term(&self, index: u32) -> &str {
        &self.terms[index as usize]
    }

    pub fn document_frequency(&self, index: u32) -> u32 {
        self.document_frequency[index as usize]
    }

    pub fn ngram_range(&self) -> (usize, usize) {
        self.ngram_range
    }

    /// Terms in index order.
    pub fn terms(&self) -> &[String] {
        &self.terms
    }
}

/// A fitted, immutable TF-IDF transformer.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfModel {
    vocabulary: Vocabulary,
    idf: Vec<f64>,
    config: TfidfConfig,
}

/// Fit a TF-IDF model: vocabulary of n-grams with document frequency
/// of at least `min_df`, truncated to `max_features` highest-df terms, and
/// smoothed inverse document frequencies `idf(t) = ln((1+N)/(1+df(t))) + 1`.
pub fn fit_tfidf<S: AsRef<str>>(documents: &[S], config: &TfidfConfig) -> Result<TfidfModel> {
    config.validate()?;
    let n_docs = documents.len();
    let mut df: HashMap<String, u32> = HashMap::new();
    for doc in documents {
        let tokens = tokenize(doc.as_ref(), config.lowercase);
        let grams = extract_ngrams(&tokens, (config.ngram_low, config.ngram_high));
        let unique: HashSet<String> = grams.into_iter().collect();
        for term in unique {
            *df.entry(term).or_insert(0) += 1;
        }
    }

    let mut entries: Vec<(String, u32)> = df
        .into_iter()
        .filter(|&(_, count)| count >= config.min_df)
        .collect();
    if let Some(max) = config.max_features {
        if entries.len() > max {
            // Highest df first, ties broken lexicographically.
            entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            entries.truncate(max);
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    if entries.is_empty() {
        return Err(Error::EmptyVocabulary);
    }

    let idf = entries
        .iter()
        .map(|&(_, count)| ((1.0 + n_docs as f64) / (1.0 + count as f64)).ln() + 1.0)
        .collect();
    let vocabulary = Vocabulary::new(entries, (config.ngram_low, config.ngram_high));
    Ok(TfidfModel {
        vocabulary,
        idf,
        config: config.clone(),
    })
}

impl TfidfModel {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn config(&self) -> &TfidfConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.len()
    }

    /// Inverse document frequency of a term index.
    pub fn idf(&self, index: u32) -> f64 {
        self.idf[index as usize]
    }

    /// Encode one document: raw n-gram count times idf per in-vocabulary
    /// term, L2-normalized when configured. Out-of-vocabulary n-grams are
    /// ignored; a fully out-of-vocabulary document maps to the empty vector.
    pub fn transform(&self, document: &str) -> SparseVector {
        let tokens = tokenize(document, self.config.lowercase);
        let grams = extract_ngrams(&tokens, self.vocabulary.ngram_range());
        let mut counts: HashMap<u32, u32> = HashMap::new();
        for gram in &grams {
            if let Some(idx) = self.vocabulary.index_of(gram) {
                *counts.entry(idx).or_insert(0) += 1;
            }
        }
        let pairs = counts
            .into_iter()
            .map(|(idx, count)| (idx, count as f64 * self.idf[idx as usize]))
            .collect();
        let mut vector = SparseVector::from_pairs(self.vocabulary.len(), pairs)
            .expect("in-vocabulary indices are in range and idf values are finite");
        if self.config.normalize {
            let norm = vector.norm();
            if norm > 0.0 {
                vector.scale(1.0 / norm);
            }
        }
        vector
    }

    /// Transform a batch of documents.
    pub fn transform_all<S: AsRef<str>>(&self, documents: &[S]) -> Vec<SparseVector> {
        documents
            .iter()
            .map(|d| self.transform(d.as_ref()))
            .collect()
    }

    fn to_doc(&self) -> TfidfDoc {
        TfidfDoc {
            schema: SCHEMA.to_string(),
            config: self.config.clone(),
            config_hash: persist::config_hash(&self.config),
            vocabulary: self
                .vocabulary
                .terms
                .iter()
                .enumerate()
                .map(|(i, term)| VocabEntry {
                    term: term.clone(),
                    df: self.vocabulary.document_frequency[i],
                    idf: self.idf[i],
                })
                .collect(),
        }
    }

    fn from_doc(doc: TfidfDoc) -> Result<Self> {
        doc.config.validate()?;
        let entries: Vec<(String, u32)> = doc
            .vocabulary
            .iter()
            .map(|e| (e.term.clone(), e.df))
            .collect();
        for pair in entries.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(Error::MalformedDocument(
                    "vocabulary terms must be strictly increasing".into(),
                ));
            }
        }
        if entries.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        let idf = doc.vocabulary.iter().map(|e| e.idf).collect();
        Ok(Self {
            vocabulary: Vocabulary::new(entries, (doc.config.ngram_low, doc.config.ngram_high)),
            idf,
            config: doc.config,
        })
    }

    pub fn to_json(&self) -> String {
        persist::to_json_pretty(&self.to_doc())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TfidfDoc = persist::parse_document(text, SCHEMA)?;
        Self::from_doc(doc)
    }
}

impl Serialize for TfidfModel {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TfidfModel {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = TfidfDoc::deserialize(deserializer)?;
        if doc.schema != SCHEMA {
            return Err(serde::de::Error::custom(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                doc.schema
            )));
        }
        Self::from_doc(doc).map_err(serde::de::Error::custom)
    }
}

const SCHEMA: &str = "onubhuti/tfidf-model/v1";

#[derive(Serialize, Deserialize)]
struct TfidfDoc {
    schema: String,
    config: TfidfConfig,
    config_hash: String,
    vocabulary: Vec<VocabEntry>,
}

#[derive(Serialize, Deserialize)]
struct VocabEntry {
    term: String,
    df: u32,
    idf: f64,
}
