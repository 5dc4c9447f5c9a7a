//! Decision tree with and without AdaBoost on a noisy binary task.
//!
//! ```bash
//! cargo run --example adaboost_vs_tree
//! ```

use onubhuti::classifiers::{
    train_adaboost_traced, train_decision_tree, AdaBoostConfig, BinaryClassifier, TreeConfig,
};
use onubhuti::features::SparseVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() {
    // Two interleaved arcs that a depth-limited tree cannot carve exactly.
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 0..240 {
        let t = rng.random_range(0.0..std::f64::consts::PI);
        let label = i % 2 == 0;
        let (cx, cy) = if label { (0.0, 0.0) } else { (1.0, 0.35) };
        let sign = if label { 1.0 } else { -1.0 };
        x.push(SparseVector::from_dense(&[
            cx + t.cos() + rng.random_range(-0.18..0.18),
            cy + sign * t.sin() + rng.random_range(-0.18..0.18),
        ]));
        y.push(label);
    }

    let accuracy = |predict: &dyn Fn(&SparseVector) -> bool| {
        x.iter()
            .zip(y.iter())
            .filter(|(xi, &yi)| predict(xi) == yi)
            .count() as f64
            / y.len() as f64
    };

    let shallow = TreeConfig {
        max_depth: Some(2),
        min_samples_leaf: 1,
    };
    let tree = train_decision_tree(&x, &y, &shallow).expect("trains");
    println!(
        "plain depth-2 tree:        accuracy {:.4} ({} leaves)",
        accuracy(&|xi| tree.predict(xi)),
        tree.leaf_count()
    );

    let config = AdaBoostConfig {
        n_estimators: 40,
        weak_depth: 2,
        ..AdaBoostConfig::default()
    };
    let (boosted, rounds) = train_adaboost_traced(&x, &y, &config).expect("trains");
    println!(
        "boosted depth-2 trees:     accuracy {:.4} ({} stages)",
        accuracy(&|xi| boosted.predict(xi)),
        boosted.stages().len()
    );

    println!("\nround  weighted-error  alpha");
    for (m, round) in rounds.iter().enumerate().take(10) {
        println!(
            "{m:>5}  {:>14.4}  {:>6.4}",
            round.weighted_error, round.alpha
        );
    }
    if rounds.len() > 10 {
        println!("  ... {} more rounds", rounds.len() - 10);
    }
}
