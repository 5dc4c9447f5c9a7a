//! Random forests: seeded bootstrap resamples, per-split random feature
//! subsets of size ⌈√d⌉, majority vote with ties predicted negative.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::SparseVector;
use crate::persist;

use super::tree::{grow_tree, FeatureSubsample, TreeConfig, TreeModel};
use super::BinaryClassifier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxFeatures {
    /// ⌈√d⌉ random candidate features per split.
    Sqrt,
    /// Every feature at every split.
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForestConfig {
    #[serde(default = "default_n_trees")]
    pub n_trees: usize,
    #[serde(default = "default_true")]
    pub bootstrap: bool,
    #[serde(default = "default_max_features")]
    pub max_features: MaxFeatures,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tree: TreeConfig,
}

fn default_n_trees() -> usize {
    100
}
fn default_true() -> bool {
    true
}
fn default_max_features() -> MaxFeatures {
    MaxFeatures::Sqrt
}

impl Default for ForestConfig {
    fn default() -> Self {
        Self {
            n_trees: 100,
            bootstrap: true,
            max_features: MaxFeatures::Sqrt,
            seed: 0,
            tree: TreeConfig::default(),
        }
    }
}

/// A fitted forest: trees in training order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    trees: Vec<TreeModel>,
    config: ForestConfig,
}

impl ForestModel {
    pub fn trees(&self) -> &[TreeModel] {
        &self.trees
    }

    pub fn config(&self) -> &ForestConfig {
        &self.config
    }
}

pub fn train_random_forest(
    x: &[SparseVector],
    y: &[bool],
    config: &ForestConfig,
) -> Result<ForestModel> {
    config.tree.validate()?;
    if config.n_trees == 0 {
        return Err(Error::InvalidConfig("n_trees must be >= 1".into()));
    }
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::EmptyCorpus);
    }
    let n = x.len();
    let d = x[0].dim();
    let per_split = match config.max_features {
        MaxFeatures::All => d,
        MaxFeatures::Sqrt => (d as f64).sqrt().ceil() as usize,
    };

    // Every tree derives its own stream from the master seed, so training
    // order (and parallelism) cannot affect the result.
    let trees: Vec<TreeModel> = (0..config.n_trees)
        .into_par_iter()
        .map(|t| {
            let tree_seed = persist::derive_seed(config.seed, &format!("forest-tree-{t}"));
            let mut rng = ChaCha20Rng::seed_from_u64(tree_seed);
            let samples: Vec<u32> = if config.bootstrap {
                (0..n).map(|_| rng.random_range(0..n as u32)).collect()
            } else {
                (0..n as u32).collect()
            };
            let weights = vec![1.0 / n as f64; n];
            let mut subsample = if per_split < d {
                Some(FeatureSubsample {
                    per_split,
                    rng: &mut rng,
                })
            } else {
                None
            };
            grow_tree(x, y, &weights, samples, &config.tree, &mut subsample)
        })
        .collect();

    Ok(ForestModel {
        trees,
        config: config.clone(),
    })
}

impl BinaryClassifier for ForestModel {
    /// Signed vote margin in `[-1, 1]`; a tied vote scores 0 and therefore
    /// predicts negative.
    fn decision_score(&self, x: &SparseVector) -> f64 {
        let positives = self.trees.iter().filter(|t| t.predict(x)).count() as f64;
        let total = self.trees.len() as f64;
        (2.0 * positives - total) / total
    }
}
