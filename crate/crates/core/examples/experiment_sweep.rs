//! A full deterministic experiment sweep on a synthetic corpus.
//!
//! Writes a toy dataset and config into a temp directory, runs the same
//! grid the `onubhuti sweep` subcommand runs, and prints the tables.
//!
//! ```bash
//! cargo run --example experiment_sweep
//! ```

use std::fmt::Write as _;

use onubhuti::cli::{run_sweep, AppConfig};
use onubhuti::corpus::{synth, EMOTIONS};

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let data_path = dir.path().join("toy.csv");

    // Serialize the synthetic corpus as the CSV the CLI would ingest.
    let records = synth::keyword_corpus(25, 5, 3);
    let mut csv = String::from("text,love,joy,surprise,anger,sadness,fear\n");
    for r in &records {
        write!(csv, "{}", r.text).unwrap();
        for &e in EMOTIONS.iter() {
            write!(csv, ",{}", if r.labels.get(e) { 1 } else { 0 }).unwrap();
        }
        csv.push('\n');
    }
    std::fs::write(&data_path, csv).expect("writable temp dir");

    let mut config = AppConfig::default();
    config.dataset.path = Some(data_path);
    config.output.dir = dir.path().join("out");
    config.split.seed = 42;
    config.pca.k = Some(12);
    config.model.svm.lambda = 1e-2;
    config.model.svm.epochs = 150;
    config.model.knn.k = 3;
    config.model.forest.n_trees = 30;
    config.model.adaboost.n_estimators = 20;
    config.sweep.ngrams = vec![[1, 1], [2, 2]];
    println!("config:\n{}", config.to_toml());

    let outcome = run_sweep(&config, false).expect("sweep succeeds");

    println!("\n== {} ==", outcome.table_path.display());
    print!("{}", std::fs::read_to_string(&outcome.table_path).unwrap());
    if let Some(pair) = &outcome.pair_path {
        println!("\n== {} ==", pair.display());
        print!("{}", std::fs::read_to_string(pair).unwrap());
    }
    println!(
        "\nfull results document: {} ({} cells, every cell backed by a model artifact)",
        outcome.json_path.display(),
        outcome.results.cells.len() + outcome.results.pair.len()
    );
}
