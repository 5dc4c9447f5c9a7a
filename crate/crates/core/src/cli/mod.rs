//! Command implementations behind the `onubhuti` binary: stats, split,
//! train, evaluate, explain and full experiment sweeps.
//!
//! Every command is driven by one TOML config file (flat key/value
//! sections, documented in the README). Environment variables are never
//! consulted; a run is fully determined by the config file, the CLI
//! overrides and the dataset bytes. Every output document embeds the
//! config hash and seeds needed to regenerate it.

mod config;
mod sweep;

pub use config::{
    AppConfig, DatasetSection, EvalSection, FamilyName, ModelSection, OutputSection, Overrides,
    PcaSection, SplitSection, SweepSection, TuningSection,
};
pub use sweep::{run_sweep, CellOutcome, SweepOutcome};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classifiers::{train_multilabel, FamilyConfig, MultiLabelModel};
use crate::corpus::{
    compute_stats, load_dataset, stratified_split, CorpusStats, DatasetSplit, RawRecord,
    RejectedRow,
};
use crate::error::{Error, Result};
use crate::eval::{evaluate, AggregateMode, MetricsReport};
use crate::explain::explain_instance;
use crate::persist;

const STATS_SCHEMA: &str = "onubhuti/stats-report/v1";
const SPLIT_SCHEMA: &str = "onubhuti/split-manifest/v1";
const METRICS_SCHEMA: &str = "onubhuti/metrics-report/v1";

#[derive(Debug, Serialize, Deserialize)]
pub struct StatsDoc {
    pub schema: String,
    pub config_hash: String,
    pub dataset_path: PathBuf,
    pub rejected_rows: Vec<RejectedRow>,
    pub stats: CorpusStats,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SplitManifest {
    pub schema: String,
    pub config_hash: String,
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub split: DatasetSplit,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MetricsDoc {
    pub schema: String,
    pub config_hash: String,
    pub split_seed: u64,
    pub subset: String,
    pub model_artifact: PathBuf,
    pub report: MetricsReport,
}

/// Load the dataset named by the config.
pub fn load_records(
    config: &AppConfig,
    strict: bool,
) -> Result<(Vec<RawRecord>, Vec<RejectedRow>)> {
    let path =
        config.dataset.path.as_deref().ok_or_else(|| {
            Error::InvalidConfig("dataset.path is required for this command".into())
        })?;
    let report = load_dataset(path, &config.dataset.schema(), strict)?;
    Ok((report.records, report.rejected))
}

/// Split records per the config and materialize the three subsets.
pub fn split_subsets(
    config: &AppConfig,
    records: &[RawRecord],
) -> Result<(SplitManifest, [Vec<RawRecord>; 3])> {
    let report = stratified_split(records, config.split.ratios, config.split.seed)?;
    let by_id: std::collections::HashMap<u32, &RawRecord> =
        records.iter().map(|r| (r.id, r)).collect();
    let collect = |ids: &[u32]| -> Vec<RawRecord> {
        ids.iter()
            .map(|id| (*by_id.get(id).expect("split ids come from records")).clone())
            .collect()
    };
    let subsets = [
        collect(&report.split.train_ids),
        collect(&report.split.validation_ids),
        collect(&report.split.test_ids),
    ];
    let manifest = SplitManifest {
        schema: SPLIT_SCHEMA.to_string(),
        config_hash: persist::config_hash(&config.split),
        warnings: report.warnings,
        split: report.split,
    };
    Ok((manifest, subsets))
}

/// `stats`: dataset statistics report.
pub fn run_stats(config: &AppConfig, strict: bool) -> Result<PathBuf> {
    let (records, rejected) = load_records(config, strict)?;
    let stats = compute_stats(&records, config.eval.top_terms)?;
    let out_dir = ensure_out_dir(config)?;
    let doc = StatsDoc {
        schema: STATS_SCHEMA.to_string(),
        config_hash: persist::config_hash(config),
        dataset_path: config
            .dataset
            .path
            .clone()
            .expect("checked by load_records"),
        rejected_rows: rejected,
        stats,
    };
    let path = out_dir.join("stats.json");
    persist::write_document(&path, &doc)?;
    println!(
        "stats: {} records, multi-label fraction {:.4} -> {}",
        doc.stats.record_count,
        doc.stats.multi_label_fraction,
        path.display()
    );
    Ok(path)
}

/// `split`: write the split manifest.
pub fn run_split(config: &AppConfig, strict: bool) -> Result<PathBuf> {
    let (records, _) = load_records(config, strict)?;
    let (manifest, subsets) = split_subsets(config, &records)?;
    let out_dir = ensure_out_dir(config)?;
    let path = out_dir.join("split.json");
    persist::write_document(&path, &manifest)?;
    println!(
        "split: {}/{}/{} records (seed {}) -> {}",
        subsets[0].len(),
        subsets[1].len(),
        subsets[2].len(),
        manifest.split.seed,
        path.display()
    );
    for warning in &manifest.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(path)
}

/// Hyperparameter candidates for one family: the configured values, or the
/// cross product with the tuning grid when one is given.
pub fn candidates(config: &AppConfig, family: FamilyConfig) -> Vec<FamilyConfig> {
    let tuning = &config.tuning;
    match family {
        FamilyConfig::Svm(base) => match &tuning.svm_lambda {
            Some(grid) if !grid.is_empty() => grid
                .iter()
                .map(|&lambda| {
                    let mut c = base.clone();
                    c.lambda = lambda;
                    FamilyConfig::Svm(c)
                })
                .collect(),
            _ => vec![FamilyConfig::Svm(base)],
        },
        FamilyConfig::Knn(base) => match &tuning.knn_k {
            Some(grid) if !grid.is_empty() => grid
                .iter()
                .map(|&k| {
                    let mut c = base.clone();
                    c.k = k;
                    FamilyConfig::Knn(c)
                })
                .collect(),
            _ => vec![FamilyConfig::Knn(base)],
        },
        FamilyConfig::Tree(base) => match &tuning.tree_max_depth {
            Some(grid) if !grid.is_empty() => grid
                .iter()
                .map(|&depth| {
                    let mut c = base.clone();
                    c.max_depth = Some(depth);
                    FamilyConfig::Tree(c)
                })
                .collect(),
            _ => vec![FamilyConfig::Tree(base)],
        },
        FamilyConfig::Forest(base) => match &tuning.forest_n_trees {
            Some(grid) if !grid.is_empty() => grid
                .iter()
                .map(|&n| {
                    let mut c = base.clone();
                    c.n_trees = n;
                    FamilyConfig::Forest(c)
                })
                .collect(),
            _ => vec![FamilyConfig::Forest(base)],
        },
        FamilyConfig::Adaboost(base) => match &tuning.adaboost_n_estimators {
            Some(grid) if !grid.is_empty() => grid
                .iter()
                .map(|&n| {
                    let mut c = base.clone();
                    c.n_estimators = n;
                    FamilyConfig::Adaboost(c)
                })
                .collect(),
            _ => vec![FamilyConfig::Adaboost(base)],
        },
    }
}

/// Train on the train subset, selecting among candidates on the validation
/// subset when a tuning grid is configured. Returns the model and the
/// config that won.
pub fn train_selected(
    config: &AppConfig,
    family: FamilyConfig,
    train: &[RawRecord],
    validation: &[RawRecord],
) -> Result<(MultiLabelModel, FamilyConfig)> {
    let pipeline = config.pipeline_config();
    let mut options = candidates(config, family);
    if options.len() == 1 {
        let winner = options.pop().expect("one candidate");
        return Ok((train_multilabel(train, &pipeline, &winner)?, winner));
    }
    let metric = config.sweep.metric;
    let mut best: Option<(f64, MultiLabelModel, FamilyConfig)> = None;
    for candidate in options {
        let model = train_multilabel(train, &pipeline, &candidate)?;
        let score = if validation.is_empty() {
            0.0
        } else {
            evaluate_model(&model, validation, false)?
                .aggregate(metric)
                .f1
        };
        if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
            best = Some((score, model, candidate));
        }
    }
    let (_, model, winner) = best.expect("at least one candidate");
    Ok((model, winner))
}

/// Predict every record's labels and score them against gold.
pub fn evaluate_model(
    model: &MultiLabelModel,
    records: &[RawRecord],
    with_subset_accuracy: bool,
) -> Result<MetricsReport> {
    let texts: Vec<&str> = records.iter().map(|r| r.text.as_str()).collect();
    let predictions = model.predict_batch(&texts)?;
    let gold: Vec<_> = records.iter().map(|r| r.labels).collect();
    evaluate(&predictions, &gold, with_subset_accuracy)
}

pub struct TrainOutcome {
    pub model_path: PathBuf,
    pub metrics_path: PathBuf,
    pub validation: MetricsReport,
    pub test: MetricsReport,
}

/// `train`: fit one model per the config and persist it with its metrics.
pub fn run_train(config: &AppConfig, strict: bool) -> Result<TrainOutcome> {
    let (records, _) = load_records(config, strict)?;
    let (manifest, [train, validation, test]) = split_subsets(config, &records)?;
    let family = config.model.family_config()?;
    let (model, winner) = train_selected(config, family, &train, &validation)?;

    let out_dir = ensure_out_dir(config)?;
    let model_path = out_dir.join(format!("model_{}.json", model.family()));
    std::fs::write(&model_path, model.to_json()).map_err(|source| Error::Io {
        path: model_path.clone(),
        source,
    })?;
    persist::write_document(&out_dir.join("split.json"), &manifest)?;

    let validation_report = evaluate_model(&model, &validation, config.eval.subset_accuracy)?;
    let test_report = evaluate_model(&model, &test, config.eval.subset_accuracy)?;
    let metrics_path = out_dir.join(format!("metrics_{}.json", model.family()));
    let doc = TrainMetricsDoc {
        schema: METRICS_SCHEMA.to_string(),
        config_hash: persist::config_hash(config),
        split_seed: config.split.seed,
        selected_config: winner,
        model_artifact: model_path.clone(),
        fallback_labels: model
            .fallback_labels()
            .iter()
            .map(|e| e.name().to_string())
            .collect(),
        validation: validation_report.clone(),
        test: test_report.clone(),
    };
    persist::write_document(&metrics_path, &doc)?;
    println!(
        "train: {} macro-F1 validation {:.4} test {:.4} -> {}",
        model.family(),
        validation_report.macro_avg.f1,
        test_report.macro_avg.f1,
        model_path.display()
    );
    Ok(TrainOutcome {
        model_path,
        metrics_path,
        validation: validation_report,
        test: test_report,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct TrainMetricsDoc {
    schema: String,
    config_hash: String,
    split_seed: u64,
    selected_config: FamilyConfig,
    model_artifact: PathBuf,
    fallback_labels: Vec<String>,
    validation: MetricsReport,
    test: MetricsReport,
}

/// `evaluate`: score a persisted model artifact on one subset.
pub fn run_evaluate(
    config: &AppConfig,
    model_path: &Path,
    subset: &str,
    strict: bool,
) -> Result<PathBuf> {
    let model = MultiLabelModel::from_json(&persist::read_text(model_path)?)?;
    let (records, _) = load_records(config, strict)?;
    let (_, subsets) = split_subsets(config, &records)?;
    let index = crate::corpus::SUBSET_NAMES
        .iter()
        .position(|&s| s == subset)
        .ok_or_else(|| {
            Error::InvalidConfig(format!(
                "unknown subset {subset:?}; expected train, validation or test"
            ))
        })?;
    let report = evaluate_model(&model, &subsets[index], config.eval.subset_accuracy)?;
    let out_dir = ensure_out_dir(config)?;
    let path = out_dir.join(format!("evaluation_{subset}.json"));
    let doc = MetricsDoc {
        schema: METRICS_SCHEMA.to_string(),
        config_hash: persist::config_hash(config),
        split_seed: config.split.seed,
        subset: subset.to_string(),
        model_artifact: model_path.to_path_buf(),
        report: report.clone(),
    };
    persist::write_document(&path, &doc)?;
    write_metrics_table(&out_dir.join(format!("evaluation_{subset}.csv")), &doc)?;
    println!(
        "evaluate[{subset}]: micro-F1 {:.4} macro-F1 {:.4} weighted-F1 {:.4} -> {}",
        report.micro.f1,
        report.macro_avg.f1,
        report.weighted.f1,
        path.display()
    );
    Ok(path)
}

/// Per-label metrics as a flat delimiter-separated table.
fn write_metrics_table(path: &Path, doc: &MetricsDoc) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!(
        "# schema={METRICS_SCHEMA} config_hash={} subset={}\n",
        doc.config_hash, doc.subset
    ));
    out.push_str("label,precision,recall,f1,accuracy,support\n");
    for l in &doc.report.per_label {
        out.push_str(&format!(
            "{},{:.4},{:.4},{:.4},{:.4},{}\n",
            l.label, l.precision, l.recall, l.f1, l.accuracy, l.support
        ));
    }
    for (name, prf) in [
        ("micro", doc.report.micro),
        ("macro", doc.report.macro_avg),
        ("weighted", doc.report.weighted),
    ] {
        out.push_str(&format!(
            "{},{:.4},{:.4},{:.4},,\n",
            name, prf.precision, prf.recall, prf.f1
        ));
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `explain`: LIME explanation of one emotion's decision on one text.
pub fn run_explain(
    config: &AppConfig,
    model_path: &Path,
    text: &str,
    label: &str,
) -> Result<PathBuf> {
    let model = MultiLabelModel::from_json(&persist::read_text(model_path)?)?;
    let emotion = crate::corpus::Emotion::parse(label)?;
    let explanation = explain_instance(&model, text, emotion, &config.lime)?;
    let out_dir = ensure_out_dir(config)?;
    let path = out_dir.join(format!("explanation_{}.json", emotion.name()));
    std::fs::write(&path, {
        let mut s = explanation.to_json(&config.lime);
        s.push('\n');
        s
    })
    .map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let verdict = if explanation.original_score > 0.0 {
        emotion.name().to_string()
    } else {
        format!("not {}", emotion.name())
    };
    println!(
        "explain[{}]: score {:+.4} ({verdict}), local fit R^2 {:.4}",
        emotion.name(),
        explanation.original_score,
        explanation.local_fit_score
    );
    for (word, weight) in &explanation.features {
        println!("  {weight:+.6}  {word}");
    }
    println!("-> {}", path.display());
    Ok(path)
}

fn ensure_out_dir(config: &AppConfig) -> Result<PathBuf> {
    let dir = config.output.dir.clone();
    std::fs::create_dir_all(&dir).map_err(|source| Error::Io {
        path: dir.clone(),
        source,
    })?;
    Ok(dir)
}

/// Human-readable F1 cell for tables; errors become a marker.
pub(crate) fn table_cell(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.4}"),
        None => "ERROR".to_string(),
    }
}

pub(crate) fn metric_name(mode: AggregateMode) -> &'static str {
    match mode {
        AggregateMode::Micro => "micro_f1",
        AggregateMode::Macro => "macro_f1",
        AggregateMode::Weighted => "weighted_f1",
    }
}
