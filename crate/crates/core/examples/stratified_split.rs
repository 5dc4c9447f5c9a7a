//! Deterministic multi-label stratified splitting.
//!
//! ```bash
//! cargo run --example stratified_split
//! ```

use onubhuti::corpus::{stratified_split, synth, RawRecord, EMOTIONS, SUBSET_NAMES};

fn main() {
    let rates = [0.30, 0.55, 0.12, 0.25, 0.40, 0.08];
    let records = synth::random_multilabel_corpus(1000, rates, 7);
    let report = stratified_split(&records, [0.80, 0.15, 0.05], 42).expect("valid ratios");
    let split = &report.split;

    println!(
        "split sizes: train {} / validation {} / test {}  (seed {})",
        split.train_ids.len(),
        split.validation_ids.len(),
        split.test_ids.len(),
        split.seed
    );

    let by_id: std::collections::HashMap<u32, &RawRecord> =
        records.iter().map(|r| (r.id, r)).collect();
    println!("\nper-label positive rates (global vs subsets):");
    println!("  label      global   train    valid    test");
    for &emotion in EMOTIONS.iter() {
        let global =
            records.iter().filter(|r| r.labels.get(emotion)).count() as f64 / records.len() as f64;
        print!("  {:<9} {global:>7.4}", emotion.name());
        for ids in split.subsets() {
            let rate = ids
                .iter()
                .filter(|id| by_id[id].labels.get(emotion))
                .count() as f64
                / ids.len() as f64;
            print!("  {rate:>7.4}");
        }
        println!();
    }

    // Same seed, same partition; that is the whole point.
    let again = stratified_split(&records, [0.80, 0.15, 0.05], 42).expect("valid ratios");
    println!(
        "\nrerun with the same seed is identical: {}",
        again.split == *split
    );
    for (name, ids) in SUBSET_NAMES.iter().zip(split.subsets()) {
        println!("  {name}: first ids {:?}", &ids[..5.min(ids.len())]);
    }
}
