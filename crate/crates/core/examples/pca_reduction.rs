//! PCA over sparse TF-IDF features.
//!
//! ```bash
//! cargo run --example pca_reduction
//! ```

use onubhuti::corpus::{preprocess, synth};
use onubhuti::decomp::{fit_pca, fit_pca_auto};
use onubhuti::features::{fit_tfidf, TfidfConfig};

fn main() {
    let records = synth::keyword_corpus(10, 5, 21);
    let documents: Vec<String> = records.iter().map(|r| preprocess(&r.text)).collect();
    let tfidf = fit_tfidf(&documents, &TfidfConfig::default()).expect("non-empty corpus");
    let vectors = tfidf.transform_all(&documents);
    println!(
        "TF-IDF matrix: {} documents x {} terms",
        vectors.len(),
        tfidf.dim()
    );

    let model = fit_pca(&vectors, 8).expect("k within range");
    let total: f64 = model.explained_variance().iter().sum();
    println!("\ntop-8 components, explained variance:");
    let mut cumulative = 0.0;
    for (i, v) in model.explained_variance().iter().enumerate() {
        cumulative += v;
        println!(
            "  pc{i}: {v:.6}  (cumulative share {:.1}%)",
            100.0 * cumulative / total
        );
    }

    // Components are orthonormal rows.
    let g01: f64 = model
        .component(0)
        .iter()
        .zip(model.component(1))
        .map(|(a, b)| a * b)
        .sum();
    println!("\n<pc0, pc1> = {g01:.2e} (orthogonal)");

    let projected = model.project(&vectors[0]).expect("dimensions match");
    println!(
        "document 0 projected to {} coordinates: {:?}",
        projected.len(),
        projected
            .iter()
            .map(|v| (v * 1000.0).round() / 1000.0)
            .collect::<Vec<_>>()
    );

    // Automatic component count: smallest k reaching 95% of the variance.
    let auto = fit_pca_auto(&vectors, 0.95, 300).expect("fits");
    println!("\nauto-k at 95% variance keeps {} components", auto.k());
}
