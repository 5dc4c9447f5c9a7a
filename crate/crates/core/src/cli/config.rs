//! The TOML configuration file behind every command.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classifiers::{
    AdaBoostConfig, FamilyConfig, ForestConfig, KnnConfig, PcaSettings, PipelineConfig, SvmConfig,
    TreeConfig,
};
use crate::corpus::{DatasetSchema, EMOTIONS};
use crate::error::{Error, Result};
use crate::eval::AggregateMode;
use crate::explain::LimeConfig;
use crate::features::TfidfConfig;
use crate::persist;

/// The whole configuration. Every section has defaults, so an empty file
/// (or no file at all) is valid for commands that do not need a dataset.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppConfig {
    pub dataset: DatasetSection,
    pub split: SplitSection,
    pub features: TfidfConfig,
    pub pca: PcaSection,
    pub model: ModelSection,
    pub tuning: TuningSection,
    pub lime: LimeConfig,
    pub sweep: SweepSection,
    pub eval: EvalSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub text_column: String,
    /// Label column names in canonical emotion order.
    pub label_columns: [String; 6],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub platform_column: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topic_column: Option<String>,
    pub delimiter: char,
}

impl Default for DatasetSection {
    fn default() -> Self {
        Self {
            path: None,
            text_column: "text".to_string(),
            label_columns: EMOTIONS.map(|e| e.name().to_string()),
            platform_column: None,
            topic_column: None,
            delimiter: ',',
        }
    }
}

impl DatasetSection {
    pub fn schema(&self) -> DatasetSchema {
        DatasetSchema {
            text_column: self.text_column.clone(),
            label_columns: self.label_columns.clone(),
            platform_column: self.platform_column.clone(),
            topic_column: self.topic_column.clone(),
            delimiter: self.delimiter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitSection {
    pub seed: u64,
    /// Train/validation/test fractions; must sum to 1.
    pub ratios: [f64; 3],
}

impl Default for SplitSection {
    fn default() -> Self {
        Self {
            seed: 42,
            ratios: [0.80, 0.15, 0.05],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PcaSection {
    pub enabled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub variance_fraction: f64,
    pub cap: usize,
}

impl Default for PcaSection {
    fn default() -> Self {
        Self {
            enabled: false,
            k: None,
            variance_fraction: 0.95,
            cap: 300,
        }
    }
}

impl PcaSection {
    pub fn settings(&self) -> PcaSettings {
        PcaSettings {
            k: self.k,
            variance_fraction: self.variance_fraction,
            cap: self.cap,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub family: FamilyName,
    pub svm: SvmConfig,
    pub knn: KnnConfig,
    pub tree: TreeConfig,
    pub forest: ForestConfig,
    pub adaboost: AdaBoostConfig,
}

/// Family name as written in config files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    #[default]
    Svm,
    Knn,
    Tree,
    Forest,
    Adaboost,
}

impl ModelSection {
    /// The configured family with its hyperparameters.
    pub fn family_config(&self) -> Result<FamilyConfig> {
        Ok(self.family_config_for(self.family))
    }

    pub fn family_config_for(&self, family: FamilyName) -> FamilyConfig {
        match family {
            FamilyName::Svm => FamilyConfig::Svm(self.svm.clone()),
            FamilyName::Knn => FamilyConfig::Knn(self.knn.clone()),
            FamilyName::Tree => FamilyConfig::Tree(self.tree.clone()),
            FamilyName::Forest => FamilyConfig::Forest(self.forest.clone()),
            FamilyName::Adaboost => FamilyConfig::Adaboost(self.adaboost.clone()),
        }
    }
}

/// Optional hyperparameter grids, selected on the validation subset.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TuningSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub svm_lambda: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub knn_k: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_max_depth: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forest_n_trees: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adaboost_n_estimators: Option<Vec<usize>>,
}

impl TuningSection {
    pub fn is_empty(&self) -> bool {
        self.svm_lambda.is_none()
            && self.knn_k.is_none()
            && self.tree_max_depth.is_none()
            && self.forest_n_trees.is_none()
            && self.adaboost_n_estimators.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    /// Families swept across the n-gram × PCA grid.
    pub families: Vec<FamilyName>,
    /// N-gram ranges, as `[low, high]` pairs.
    pub ngrams: Vec<[usize; 2]>,
    /// PCA on/off axis, in table column order.
    pub pca: Vec<bool>,
    /// Also run the decision tree with and without AdaBoost.
    pub adaboost_pair: bool,
    /// Metric reported in the flat tables.
    pub metric: AggregateMode,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            families: vec![FamilyName::Svm, FamilyName::Knn, FamilyName::Forest],
            ngrams: vec![[1, 1], [2, 2], [3, 3]],
            pca: vec![true, false],
            adaboost_pair: true,
            metric: AggregateMode::Macro,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalSection {
    /// Report exact-match accuracy over full label vectors as well.
    pub subset_accuracy: bool,
    /// How many top terms the stats report keeps.
    pub top_terms: usize,
}

impl Default for EvalSection {
    fn default() -> Self {
        Self {
            subset_accuracy: false,
            top_terms: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
        }
    }
}

/// Global CLI overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl AppConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        Self::from_toml_str(&persist::read_text(path)?)
    }

    /// Load the config file, or defaults when none is given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::from_toml_file(p),
            None => Ok(Self::default()),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config types serialize infallibly")
    }

    /// The feature pipeline this config describes.
    pub fn pipeline_config(&self) -> PipelineConfig {
        PipelineConfig {
            tfidf: self.features.clone(),
            pca: self.pca.enabled.then(|| self.pca.settings()),
        }
    }

    /// Apply `--seed` and `--out`. The seed override rewrites the split
    /// seed and every model/LIME seed so one flag pins the whole run.
    pub fn apply_overrides(&mut self, overrides: &Overrides) {
        if let Some(seed) = overrides.seed {
            self.split.seed = seed;
            self.model.svm.seed = seed;
            self.model.forest.seed = seed;
            self.model.adaboost.seed = seed;
            self.lime.seed = seed;
        }
        if let Some(out) = &overrides.out {
            self.output.dir = out.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_parse_from_empty_file() {
        let config = AppConfig::from_toml_str("").unwrap();
        assert_eq!(config, AppConfig::default());
        assert_eq!(config.split.ratios, [0.80, 0.15, 0.05]);
        assert_eq!(config.model.family, FamilyName::Svm);
    }

    #[test]
    fn round_trips_through_toml() {
        let mut config = AppConfig::default();
        config.dataset.path = Some(PathBuf::from("data/comments.csv"));
        config.features.ngram_high = 2;
        config.pca.enabled = true;
        config.pca.k = Some(64);
        config.tuning.knn_k = Some(vec![3, 5, 9]);
        let text = config.to_toml();
        let back = AppConfig::from_toml_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(AppConfig::from_toml_str("[split]\nseeed = 3\n").is_err());
    }

    #[test]
    fn seed_override_pins_every_stage() {
        let mut config = AppConfig::default();
        config.apply_overrides(&Overrides {
            seed: Some(7),
            out: Some(PathBuf::from("elsewhere")),
        });
        assert_eq!(config.split.seed, 7);
        assert_eq!(config.model.forest.seed, 7);
        assert_eq!(config.lime.seed, 7);
        assert_eq!(config.output.dir, PathBuf::from("elsewhere"));
    }
}
