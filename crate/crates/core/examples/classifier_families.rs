//! All five classifier families on one multi-label task.
//!
//! ```bash
//! cargo run --example classifier_families
//! ```

use onubhuti::classifiers::{
    train_multilabel, AdaBoostConfig, FamilyConfig, ForestConfig, KnnConfig, MultiLabelModel,
    PipelineConfig, SvmConfig, TreeConfig,
};
use onubhuti::corpus::{stratified_split, synth, RawRecord};
use onubhuti::eval::evaluate;

fn main() {
    // 6 emotions x 30 records, every 5th carrying a second label.
    let records = synth::keyword_corpus(30, 5, 4);
    let report = stratified_split(&records, [0.8, 0.15, 0.05], 11).expect("valid ratios");
    let by_id: std::collections::HashMap<u32, &RawRecord> =
        records.iter().map(|r| (r.id, r)).collect();
    let subset =
        |ids: &[u32]| -> Vec<RawRecord> { ids.iter().map(|id| by_id[id].clone()).collect() };
    let train = subset(&report.split.train_ids);
    let test = subset(&report.split.test_ids);
    println!("train {} / test {} records", train.len(), test.len());

    let families = [
        FamilyConfig::Svm(SvmConfig {
            lambda: 1e-2,
            epochs: 200,
            seed: 0,
        }),
        FamilyConfig::Knn(KnnConfig {
            k: 5,
            ..KnnConfig::default()
        }),
        FamilyConfig::Tree(TreeConfig {
            max_depth: None,
            min_samples_leaf: 1,
        }),
        FamilyConfig::Forest(ForestConfig {
            n_trees: 50,
            ..ForestConfig::default()
        }),
        FamilyConfig::Adaboost(AdaBoostConfig {
            n_estimators: 25,
            ..AdaBoostConfig::default()
        }),
    ];

    println!("\nmodel     micro-F1  macro-F1  weighted-F1");
    for family in families {
        let model = train_multilabel(&train, &PipelineConfig::default(), &family)
            .expect("training succeeds");
        let texts: Vec<&str> = test.iter().map(|r| r.text.as_str()).collect();
        let predictions = model.predict_batch(&texts).expect("prediction succeeds");
        let gold: Vec<_> = test.iter().map(|r| r.labels).collect();
        let metrics = evaluate(&predictions, &gold, false).expect("equal lengths");
        println!(
            "{:<9} {:>8.4}  {:>8.4}  {:>11.4}",
            model.family().name(),
            metrics.micro.f1,
            metrics.macro_avg.f1,
            metrics.weighted.f1
        );

        if model.family().name() == "adaboost" {
            // Models persist as versioned JSON documents and reload intact.
            let reloaded = MultiLabelModel::from_json(&model.to_json()).expect("round-trips");
            let same = test.iter().all(|r| {
                reloaded.predict_text(&r.text).unwrap() == model.predict_text(&r.text).unwrap()
            });
            println!("          (persisted + reloaded, predictions identical: {same})");
        }
    }
}
