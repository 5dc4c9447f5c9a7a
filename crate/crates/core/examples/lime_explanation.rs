//! LIME explanations of a boosted-tree emotion model.
//!
//! ```bash
//! cargo run --example lime_explanation
//! ```

use onubhuti::classifiers::{train_multilabel, AdaBoostConfig, FamilyConfig, PipelineConfig};
use onubhuti::corpus::{synth, EMOTIONS};
use onubhuti::explain::{explain_instance, LimeConfig};

fn main() {
    let records = synth::keyword_corpus(20, 6, 14);
    let model = train_multilabel(
        &records,
        &PipelineConfig::default(),
        &FamilyConfig::Adaboost(AdaBoostConfig {
            n_estimators: 20,
            ..AdaBoostConfig::default()
        }),
    )
    .expect("training succeeds");

    // An angry comment, padded with neutral filler words.
    let text = "আজ খুব রাগ হচ্ছে একটা কথা মনে";
    println!("text: {text}\n");

    let config = LimeConfig {
        num_samples: 1000,
        num_features: 5,
        seed: 9,
        ..LimeConfig::default()
    };
    for &emotion in EMOTIONS.iter() {
        let explanation = explain_instance(&model, text, emotion, &config).expect("explains");
        let verdict = if explanation.original_score > 0.0 {
            emotion.name().to_string()
        } else {
            format!("not {}", emotion.name())
        };
        println!(
            "[{verdict:>12}]  score {:+.3}  local fit R^2 {:.3}",
            explanation.original_score, explanation.local_fit_score
        );
        for (word, weight) in explanation.features.iter().take(3) {
            let bar_len = (weight.abs() * 40.0).min(30.0) as usize;
            let bar: String = std::iter::repeat_n('#', bar_len.max(1)).collect();
            println!("    {weight:+.4}  {word:<12} {bar}");
        }
    }

    // The export document is enough to re-render this listing later.
    let anger = explain_instance(&model, text, onubhuti::Emotion::Anger, &config).unwrap();
    println!(
        "\nexport document ({} bytes): deterministic under seed {}",
        anger.to_json(&config).len(),
        config.seed
    );
}
