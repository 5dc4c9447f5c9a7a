//! Experiment sweeps over the family × n-gram × PCA grid, with an optional
//! decision-tree/AdaBoost pair, reproducing the layout of the result tables.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{AppConfig, FamilyName};
use super::{evaluate_model, load_records, split_subsets, table_cell, train_selected};
use crate::classifiers::FamilyConfig;
use crate::corpus::RawRecord;
use crate::error::{Error, Result};
use crate::eval::MetricsReport;
use crate::persist;

const SWEEP_SCHEMA: &str = "onubhuti/sweep-results/v1";
const TABLE_SCHEMA: &str = "onubhuti/sweep-table/v1";

/// One grid cell's result. Failed cells carry the error message and leave
/// the sweep running.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellOutcome {
    pub row: String,
    pub column: String,
    pub ngram: [usize; 2],
    pub pca: bool,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selected_config: Option<FamilyConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<MetricsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub test: Option<MetricsReport>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SweepResults {
    pub schema: String,
    pub config_hash: String,
    pub split_seed: u64,
    pub metric: String,
    pub columns: Vec<String>,
    pub cells: Vec<CellOutcome>,
    pub pair: Vec<CellOutcome>,
}

pub struct SweepOutcome {
    pub table_path: PathBuf,
    pub json_path: PathBuf,
    pub pair_path: Option<PathBuf>,
    pub results: SweepResults,
}

struct CellSpec {
    row: String,
    column: String,
    ngram: [usize; 2],
    pca: bool,
    family: FamilyConfig,
    artifact_name: String,
}

fn ngram_name(ngram: [usize; 2]) -> String {
    match ngram {
        [1, 1] => "uni-gram".to_string(),
        [2, 2] => "bi-gram".to_string(),
        [3, 3] => "tri-gram".to_string(),
        [low, high] => format!("{low}-{high}-gram"),
    }
}

fn column_name(ngram: [usize; 2], pca: bool) -> String {
    if pca {
        format!("{}(pca)", ngram_name(ngram))
    } else {
        ngram_name(ngram)
    }
}

/// `sweep`: train and evaluate every grid cell, then write the flat tables
/// and the full results document.
pub fn run_sweep(config: &AppConfig, strict: bool) -> Result<SweepOutcome> {
    validate_grid(config)?;
    let (records, _) = load_records(config, strict)?;
    let (manifest, [train, validation, test]) = split_subsets(config, &records)?;

    let sweep_dir = config.output.dir.join("sweep");
    std::fs::create_dir_all(&sweep_dir).map_err(|source| Error::Io {
        path: sweep_dir.clone(),
        source,
    })?;
    persist::write_document(&sweep_dir.join("split.json"), &manifest)?;

    let pca_axis: &[bool] = if config.sweep.pca.is_empty() {
        &[false]
    } else {
        &config.sweep.pca
    };
    let mut specs = Vec::new();
    for &family in &config.sweep.families {
        for &ngram in &config.sweep.ngrams {
            for &pca in pca_axis {
                let row = family_row_name(family).to_string();
                let column = column_name(ngram, pca);
                let artifact_name = format!(
                    "{row}_{}.json",
                    column.replace("(pca)", "_pca").replace(['-', ' '], "_")
                );
                specs.push(CellSpec {
                    row,
                    column,
                    ngram,
                    pca,
                    family: config.model.family_config_for(family),
                    artifact_name,
                });
            }
        }
    }
    let mut pair_specs = Vec::new();
    if config.sweep.adaboost_pair {
        let ngram = config.sweep.ngrams[0];
        for (row, family) in [
            ("tree+adaboost", FamilyName::Adaboost),
            ("tree", FamilyName::Tree),
        ] {
            // The "pair_" prefix keeps these from colliding with a grid
            // cell of the same family and column.
            pair_specs.push(CellSpec {
                row: row.to_string(),
                column: ngram_name(ngram),
                ngram,
                pca: false,
                family: config.model.family_config_for(family),
                artifact_name: format!(
                    "pair_{}_{}.json",
                    row.replace('+', "_"),
                    ngram_name(ngram).replace('-', "_")
                ),
            });
        }
    }

    let run_all = |specs: &[CellSpec]| -> Vec<CellOutcome> {
        specs
            .par_iter()
            .map(|spec| run_cell(config, spec, &sweep_dir, &train, &validation, &test))
            .collect()
    };
    let cells = run_all(&specs);
    let pair = run_all(&pair_specs);

    let columns: Vec<String> = config
        .sweep
        .ngrams
        .iter()
        .flat_map(|&ngram| pca_axis.iter().map(move |&pca| column_name(ngram, pca)))
        .collect();
    let results = SweepResults {
        schema: SWEEP_SCHEMA.to_string(),
        config_hash: persist::config_hash(config),
        split_seed: config.split.seed,
        metric: super::metric_name(config.sweep.metric).to_string(),
        columns,
        cells,
        pair,
    };

    let json_path = sweep_dir.join("results.json");
    persist::write_document(&json_path, &results)?;
    let table_path = sweep_dir.join("results.csv");
    write_grid_table(&table_path, config, &results)?;
    let pair_path = if results.pair.is_empty() {
        None
    } else {
        let path = sweep_dir.join("adaboost_pair.csv");
        write_pair_table(&path, config, &results)?;
        Some(path)
    };

    for line in render_summary(&results) {
        println!("{line}");
    }
    Ok(SweepOutcome {
        table_path,
        json_path,
        pair_path,
        results,
    })
}

fn validate_grid(config: &AppConfig) -> Result<()> {
    if config.sweep.families.is_empty() && !config.sweep.adaboost_pair {
        return Err(Error::InvalidConfig("sweep grid is empty".into()));
    }
    if config.sweep.ngrams.is_empty() {
        return Err(Error::InvalidConfig(
            "sweep.ngrams must not be empty".into(),
        ));
    }
    for &[low, high] in &config.sweep.ngrams {
        if low < 1 || low > high || high > 3 {
            return Err(Error::InvalidConfig(format!(
                "invalid n-gram range [{low}, {high}] in sweep.ngrams"
            )));
        }
    }
    Ok(())
}

fn family_row_name(family: FamilyName) -> &'static str {
    match family {
        FamilyName::Svm => "svm",
        FamilyName::Knn => "knn",
        FamilyName::Tree => "tree",
        FamilyName::Forest => "forest",
        FamilyName::Adaboost => "adaboost",
    }
}

fn run_cell(
    config: &AppConfig,
    spec: &CellSpec,
    sweep_dir: &Path,
    train: &[RawRecord],
    validation: &[RawRecord],
    test: &[RawRecord],
) -> CellOutcome {
    let mut outcome = CellOutcome {
        row: spec.row.clone(),
        column: spec.column.clone(),
        ngram: spec.ngram,
        pca: spec.pca,
        status: "error".to_string(),
        error: None,
        artifact: None,
        selected_config: None,
        validation: None,
        test: None,
    };
    let mut cell_config = config.clone();
    cell_config.features.ngram_low = spec.ngram[0];
    cell_config.features.ngram_high = spec.ngram[1];
    cell_config.pca.enabled = spec.pca;

    let attempt = || -> Result<(PathBuf, FamilyConfig, MetricsReport, MetricsReport)> {
        let (model, winner) = train_selected(&cell_config, spec.family.clone(), train, validation)?;
        let artifact = sweep_dir.join(&spec.artifact_name);
        std::fs::write(&artifact, model.to_json()).map_err(|source| Error::Io {
            path: artifact.clone(),
            source,
        })?;
        let validation_report = evaluate_model(&model, validation, config.eval.subset_accuracy)?;
        let test_report = evaluate_model(&model, test, config.eval.subset_accuracy)?;
        Ok((
            PathBuf::from(&spec.artifact_name),
            winner,
            validation_report,
            test_report,
        ))
    };
    match attempt() {
        Ok((artifact, winner, validation_report, test_report)) => {
            outcome.status = "ok".to_string();
            outcome.artifact = Some(artifact);
            outcome.selected_config = Some(winner);
            outcome.validation = Some(validation_report);
            outcome.test = Some(test_report);
        }
        Err(e) => outcome.error = Some(e.to_string()),
    }
    outcome
}

impl CellOutcome {
    /// The sweep's headline metric (on the test subset) for this cell.
    pub fn metric(&self, config: &AppConfig) -> Option<f64> {
        self.test
            .as_ref()
            .map(|r| r.aggregate(config.sweep.metric).f1)
    }
}

fn table_header(config: &AppConfig) -> String {
    format!(
        "# schema={TABLE_SCHEMA} config_hash={} split_seed={} metric={}\n",
        persist::config_hash(config),
        config.split.seed,
        super::metric_name(config.sweep.metric)
    )
}

fn write_grid_table(path: &Path, config: &AppConfig, results: &SweepResults) -> Result<()> {
    let mut out = table_header(config);
    out.push_str("model,");
    out.push_str(&results.columns.join(","));
    out.push('\n');
    for &family in &config.sweep.families {
        let row = family_row_name(family);
        out.push_str(row);
        for column in &results.columns {
            let cell = results
                .cells
                .iter()
                .find(|c| c.row == row && &c.column == column);
            out.push(',');
            out.push_str(&table_cell(cell.and_then(|c| c.metric(config))));
        }
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_pair_table(path: &Path, config: &AppConfig, results: &SweepResults) -> Result<()> {
    let mut out = table_header(config);
    out.push_str(&format!(
        "adaboost,{}\n",
        super::metric_name(config.sweep.metric)
    ));
    for cell in &results.pair {
        let label = if cell.row == "tree" {
            "without"
        } else {
            "with"
        };
        out.push_str(&format!("{label},{}\n", table_cell(cell.metric(config))));
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn render_summary(results: &SweepResults) -> Vec<String> {
    let mut lines = Vec::new();
    for cell in results.cells.iter().chain(results.pair.iter()) {
        let value = match (&cell.status[..], &cell.test) {
            ("ok", Some(_)) => format!(
                "{:.4}",
                cell.test.as_ref().map(|r| r.macro_avg.f1).unwrap_or(0.0)
            ),
            _ => format!("ERROR: {}", cell.error.as_deref().unwrap_or("unknown")),
        };
        lines.push(format!(
            "sweep[{} / {}]: macro-F1 {}",
            cell.row, cell.column, value
        ));
    }
    lines
}
