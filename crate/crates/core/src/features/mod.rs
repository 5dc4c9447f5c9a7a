//! Text features: tokenization, n-gram extraction and TF-IDF vectorization.
//!
//! The feature space is built from whitespace tokens of preprocessed text.
//! N-grams of configurable order (unigrams through trigrams) become
//! vocabulary terms; documents are encoded as sparse `count × idf` vectors,
//! optionally L2-normalized.
//!
//! ```
//! use onubhuti::features::{fit_tfidf, TfidfConfig};
//!
//! let docs = ["ভালো খুব ভালো", "খুব খারাপ"];
//! let model = fit_tfidf(&docs, &TfidfConfig::default()).unwrap();
//! let v = model.transform("ভালো খারাপ");
//! assert!(v.nnz() > 0);
//! ```

mod sparse;
mod tfidf;

pub use sparse::SparseVector;
pub use tfidf::{fit_tfidf, TfidfConfig, TfidfModel, Vocabulary};

/// Split preprocessed text on whitespace. Tokens are preserved verbatim;
/// when `lowercase_latin` is set, ASCII letters are folded to lowercase
/// (Bangla codepoints have no case and pass through unchanged).
pub fn tokenize(text: &str, lowercase_latin: bool) -> Vec<String> {
    text.split_whitespace()
        .map(|t| {
            if lowercase_latin {
                t.to_lowercase()
            } else {
                t.to_string()
            }
        })
        .collect()
}

/// All contiguous token windows of length `low..=high`, joined by a single
/// space, in document order (all n-grams of one order before the next).
pub fn extract_ngrams(tokens: &[String], range: (usize, usize)) -> Vec<String> {
    let (low, high) = range;
    assert!(low >= 1 && low <= high, "invalid n-gram range {range:?}");
    let mut out = Vec::new();
    for n in low..=high {
        if tokens.len() < n {
            continue;
        }
        for window in tokens.windows(n) {
            out.push(window.join(" "));
        }
    }
    out
}
