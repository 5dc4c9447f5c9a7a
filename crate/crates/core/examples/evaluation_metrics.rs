//! Multi-label metrics: confusion counts and the three aggregation modes.
//!
//! ```bash
//! cargo run --example evaluation_metrics
//! ```

use onubhuti::corpus::{Emotion, LabelVector, EMOTIONS};
use onubhuti::eval::{aggregate, confusion, evaluate, prf, AggregateMode, ConfusionCounts};

fn main() {
    // Hand-built predictions over 8 instances.
    let gold: Vec<LabelVector> = [
        [1, 0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 1, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
    ]
    .iter()
    .map(|bits| LabelVector::new(bits.map(|b| b == 1)))
    .collect();
    let predictions: Vec<LabelVector> = [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
    ]
    .iter()
    .map(|bits| LabelVector::new(bits.map(|b| b == 1)))
    .collect();

    println!("label      tp fp fn tn   precision recall f1");
    for &emotion in EMOTIONS.iter() {
        let c = confusion(&predictions, &gold, emotion).expect("equal lengths");
        let p = prf(&c);
        println!(
            "{:<9} {:>3}{:>3}{:>3}{:>3}   {:>9.4} {:>6.4} {:>6.4}",
            emotion.name(),
            c.true_pos,
            c.false_pos,
            c.false_neg,
            c.true_neg,
            p.precision,
            p.recall,
            p.f1
        );
    }

    let report = evaluate(&predictions, &gold, true).expect("equal lengths");
    println!("\naggregates      precision recall f1");
    for (name, mode) in [
        ("micro", AggregateMode::Micro),
        ("macro", AggregateMode::Macro),
        ("weighted", AggregateMode::Weighted),
    ] {
        let p = report.aggregate(mode);
        println!(
            "{name:<15} {:>9.4} {:>6.4} {:>6.4}",
            p.precision, p.recall, p.f1
        );
    }
    println!("subset accuracy {:?}", report.subset_accuracy);

    // The standard micro/macro/weighted divergence example: two labels with
    // supports 9 and 1, F1 1.0 and 0.0.
    let mut counts = [ConfusionCounts::default(); 6];
    counts[Emotion::Joy.index()] = ConfusionCounts {
        true_pos: 9,
        false_pos: 0,
        false_neg: 0,
        true_neg: 1,
    };
    counts[Emotion::Fear.index()] = ConfusionCounts {
        true_pos: 0,
        false_pos: 0,
        false_neg: 1,
        true_neg: 9,
    };
    let weighted = aggregate(&counts, AggregateMode::Weighted);
    println!(
        "\nsupports 9 vs 1 with F1s 1.0 / 0.0 -> weighted F1 {:.4}, two-label macro {:.4}",
        weighted.f1,
        (prf(&counts[1]).f1 + prf(&counts[5]).f1) / 2.0
    );
}
