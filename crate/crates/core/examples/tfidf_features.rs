//! N-gram TF-IDF vectorization from scratch.
//!
//! ```bash
//! cargo run --example tfidf_features
//! ```

use onubhuti::features::{extract_ngrams, fit_tfidf, tokenize, TfidfConfig, TfidfModel};

fn main() {
    let corpus = ["ভালো খুব ভালো", "খুব খারাপ লাগলো", "ভালো লাগলো আজ", "আজ খারাপ দিন"];

    println!("== n-grams ==");
    let tokens = tokenize(corpus[0], false);
    for (low, high, tag) in [(1, 1, "unigrams"), (2, 2, "bigrams"), (1, 3, "uni..tri")] {
        println!("  {tag}: {:?}", extract_ngrams(&tokens, (low, high)));
    }

    println!("\n== unigram TF-IDF ==");
    let model = fit_tfidf(&corpus, &TfidfConfig::default()).expect("non-empty corpus");
    println!("  vocabulary ({} terms):", model.dim());
    for (i, term) in model.vocabulary().terms().iter().enumerate() {
        println!(
            "    [{i}] {term:<8} df={} idf={:.6}",
            model.vocabulary().document_frequency(i as u32),
            model.idf(i as u32)
        );
    }

    let doc = "ভালো খারাপ ভালো অচেনা";
    let vector = model.transform(doc);
    println!("\n  transform \"{doc}\" (unknown words are ignored):");
    for (index, value) in vector.iter() {
        println!("    {:<8} {value:.6}", model.vocabulary().term(index));
    }
    println!("  L2 norm: {:.12}", vector.norm());

    println!("\n== bigram model, persisted and reloaded ==");
    let bigram = fit_tfidf(&corpus, &TfidfConfig::with_ngrams(2, 2)).expect("non-empty corpus");
    let json = bigram.to_json();
    let reloaded = TfidfModel::from_json(&json).expect("document round-trips");
    println!(
        "  {} bigram terms, round-trip equal: {}",
        reloaded.dim(),
        reloaded == bigram
    );
    println!("  document bytes: {}", json.len());
}
