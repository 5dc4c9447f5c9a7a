//! CART binary decision trees with Gini impurity and sparse-aware splits.
//!
//! Split candidates are midpoints between consecutive distinct observed
//! values of a feature; absent entries of a sparse row count as exact
//! zeros. Ties between equally good splits go to the lowest feature index,
//! then the lowest threshold.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::SparseVector;

use super::BinaryClassifier;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeConfig {
    /// Maximum depth of any leaf; `None` grows until purity or sample limits.
    #[serde(default)]
    pub max_depth: Option<usize>,
    #[serde(default = "default_min_samples_leaf")]
    pub min_samples_leaf: usize,
}

fn default_min_samples_leaf() -> usize {
    2
}

impl Default for TreeConfig {
    fn default() -> Self {
        Self {
            max_depth: None,
            min_samples_leaf: 2,
        }
    }
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_samples_leaf < 1 {
            return Err(Error::InvalidConfig("min_samples_leaf must be >= 1".into()));
        }
        if self.max_depth == Some(0) {
            return Err(Error::InvalidConfig("max_depth must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Split {
        feature: u32,
        threshold: f64,
        left: u32,
        right: u32,
    },
    Leaf {
        /// Class probabilities `[negative, positive]`, summing to 1.
        prob: [f64; 2],
    },
}

/// A fitted decision tree. Nodes are stored in a flat vector; node 0 is
/// the root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeModel {
    nodes: Vec<TreeNode>,
    config: TreeConfig,
}

impl TreeModel {
    pub fn config(&self) -> &TreeConfig {
        &self.config
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TreeNode::Leaf { .. }))
            .count()
    }

    pub fn depth(&self) -> usize {
        fn depth_of(nodes: &[TreeNode], at: u32) -> usize {
            match &nodes[at as usize] {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => {
                    1 + depth_of(nodes, *left).max(depth_of(nodes, *right))
                }
            }
        }
        depth_of(&self.nodes, 0)
    }

    /// Root split, when the tree is not a single leaf.
    pub fn root_split(&self) -> Option<(u32, f64)> {
        match self.nodes.first() {
            Some(TreeNode::Split {
                feature, threshold, ..
            }) => Some((*feature, *threshold)),
            _ => None,
        }
    }

    /// Probability of the positive class at the leaf `x` falls into.
    pub fn positive_probability(&self, x: &SparseVector) -> f64 {
        let mut at = 0u32;
        loop {
            match &self.nodes[at as usize] {
                TreeNode::Leaf { prob } => return prob[1],
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x.get(*feature) <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }
}

impl BinaryClassifier for TreeModel {
    fn decision_score(&self, x: &SparseVector) -> f64 {
        2.0 * self.positive_probability(x) - 1.0
    }
}

/// Train a CART tree on uniformly weighted samples.
pub fn train_decision_tree(
    x: &[SparseVector],
    y: &[bool],
    config: &TreeConfig,
) -> Result<TreeModel> {
    config.validate()?;
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::EmptyCorpus);
    }
    let weights = vec![1.0 / x.len() as f64; x.len()];
    let samples: Vec<u32> = (0..x.len() as u32).collect();
    Ok(grow_tree(x, y, &weights, samples, config, &mut None))
}

/// Per-split feature subsampling state, used by random forests.
pub(crate) struct FeatureSubsample<'a> {
    pub per_split: usize,
    pub rng: &'a mut ChaCha20Rng,
}

/// Grow a tree on the given sample multiset (indices may repeat) with the
/// given per-sample weights.
pub(crate) fn grow_tree(
    x: &[SparseVector],
    y: &[bool],
    weights: &[f64],
    samples: Vec<u32>,
    config: &TreeConfig,
    feature_subsample: &mut Option<FeatureSubsample<'_>>,
) -> TreeModel {
    let dim = x.first().map(SparseVector::dim).unwrap_or(0);
    let mut nodes = Vec::new();
    build_node(
        x,
        y,
        weights,
        samples,
        dim,
        config,
        feature_subsample,
        0,
        &mut nodes,
    );
    TreeModel {
        nodes,
        config: config.clone(),
    }
}

#[allow(clippy::too_many_arguments)]
fn build_node(
    x: &[SparseVector],
    y: &[bool],
    weights: &[f64],
    samples: Vec<u32>,
    dim: usize,
    config: &TreeConfig,
    feature_subsample: &mut Option<FeatureSubsample<'_>>,
    depth: usize,
    nodes: &mut Vec<TreeNode>,
) -> u32 {
    let index = nodes.len() as u32;
    nodes.push(TreeNode::Leaf { prob: [0.5, 0.5] });

    let mut w_pos = 0.0;
    let mut w_total = 0.0;
    let mut n_pos = 0usize;
    for &i in &samples {
        let w = weights[i as usize];
        w_total += w;
        if y[i as usize] {
            w_pos += w;
            n_pos += 1;
        }
    }
    let leaf = |w_pos: f64, w_total: f64| -> TreeNode {
        if w_total <= 0.0 {
            TreeNode::Leaf { prob: [0.5, 0.5] }
        } else {
            let p = w_pos / w_total;
            TreeNode::Leaf { prob: [1.0 - p, p] }
        }
    };

    let pure = n_pos == 0 || n_pos == samples.len();
    let depth_reached = config.max_depth.is_some_and(|m| depth >= m);
    let too_small = samples.len() < 2 * config.min_samples_leaf;
    if pure || depth_reached || too_small {
        nodes[index as usize] = leaf(w_pos, w_total);
        return index;
    }

    let best = find_best_split(x, y, weights, &samples, dim, config, feature_subsample);
    let Some((feature, threshold)) = best else {
        nodes[index as usize] = leaf(w_pos, w_total);
        return index;
    };

    let (mut left, mut right) = (Vec::new(), Vec::new());
    for &i in &samples {
        if x[i as usize].get(feature) <= threshold {
            left.push(i);
        } else {
            right.push(i);
        }
    }
    drop(samples);
    let left_idx = build_node(
        x,
        y,
        weights,
        left,
        dim,
        config,
        feature_subsample,
        depth + 1,
        nodes,
    );
    let right_idx = build_node(
        x,
        y,
        weights,
        right,
        dim,
        config,
        feature_subsample,
        depth + 1,
        nodes,
    );
    nodes[index as usize] = TreeNode::Split {
        feature,
        threshold,
        left: left_idx,
        right: right_idx,
    };
    index
}

/// The weighted-Gini-minimizing `(feature, threshold)` over the candidate
/// features, or `None` when no split satisfies `min_samples_leaf`.
fn find_best_split(
    x: &[SparseVector],
    y: &[bool],
    weights: &[f64],
    samples: &[u32],
    dim: usize,
    config: &TreeConfig,
    feature_subsample: &mut Option<FeatureSubsample<'_>>,
) -> Option<(u32, f64)> {
    // Candidate features: a seeded subsample, or every feature with a
    // nonzero somewhere in this node (all-zero columns cannot split).
    let candidate_filter: Option<HashSet<u32>> = feature_subsample.as_mut().map(|sub| {
        if sub.per_split >= dim {
            (0..dim as u32).collect()
        } else {
            let mut chosen = HashSet::with_capacity(sub.per_split);
            while chosen.len() < sub.per_split {
                chosen.insert(sub.rng.random_range(0..dim as u32));
            }
            chosen
        }
    });

    // One pass over the node rows collects per-feature nonzero entries.
    let mut per_feature: HashMap<u32, Vec<(f64, u32)>> = HashMap::new();
    for &i in samples {
        for (feature, value) in x[i as usize].iter() {
            if let Some(filter) = &candidate_filter {
                if !filter.contains(&feature) {
                    continue;
                }
            }
            per_feature.entry(feature).or_default().push((value, i));
        }
    }

    let mut node_w_pos = 0.0;
    let mut node_w_neg = 0.0;
    for &i in samples {
        let w = weights[i as usize];
        if y[i as usize] {
            node_w_pos += w;
        } else {
            node_w_neg += w;
        }
    }
    let w_total = node_w_pos + node_w_neg;
    let n_total = samples.len();

    let mut features: Vec<u32> = per_feature.keys().copied().collect();
    features.sort_unstable();

    let mut best: Option<(f64, u32, f64)> = None;
    for feature in features {
        let mut entries = per_feature.remove(&feature).expect("key present");
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite feature values"));

        // Group by distinct value, inserting the implicit-zero group at its
        // sorted position.
        let zero_count = n_total - entries.len();
        let mut zero_w_pos = node_w_pos;
        let mut zero_w_neg = node_w_neg;
        for &(_, i) in &entries {
            let w = weights[i as usize];
            if y[i as usize] {
                zero_w_pos -= w;
            } else {
                zero_w_neg -= w;
            }
        }
        let mut groups: Vec<(f64, f64, f64, usize)> = Vec::new(); // value, w_pos, w_neg, count
        let mut zero_emitted = zero_count == 0;
        let push_zero = |groups: &mut Vec<(f64, f64, f64, usize)>| {
            groups.push((0.0, zero_w_pos, zero_w_neg, zero_count));
        };
        let mut idx = 0;
        while idx < entries.len() {
            let value = entries[idx].0;
            if !zero_emitted && value > 0.0 {
                push_zero(&mut groups);
                zero_emitted = true;
            }
            let mut g_pos = 0.0;
            let mut g_neg = 0.0;
            let mut count = 0;
            while idx < entries.len() && entries[idx].0 == value {
                let i = entries[idx].1;
                let w = weights[i as usize];
                if y[i as usize] {
                    g_pos += w;
                } else {
                    g_neg += w;
                }
                count += 1;
                idx += 1;
            }
            groups.push((value, g_pos, g_neg, count));
        }
        if !zero_emitted {
            push_zero(&mut groups);
        }
        if groups.len() < 2 {
            continue;
        }

        let mut left_pos = 0.0;
        let mut left_neg = 0.0;
        let mut left_count = 0usize;
        for boundary in 0..groups.len() - 1 {
            let (value, g_pos, g_neg, count) = groups[boundary];
            left_pos += g_pos;
            left_neg += g_neg;
            left_count += count;
            let right_count = n_total - left_count;
            if left_count < config.min_samples_leaf || right_count < config.min_samples_leaf {
                continue;
            }
            let threshold = 0.5 * (value + groups[boundary + 1].0);
            let right_pos = node_w_pos - left_pos;
            let right_neg = node_w_neg - left_neg;
            let impurity =
                (weighted_gini(left_pos, left_neg) + weighted_gini(right_pos, right_neg)) / w_total;
            let better = match best {
                None => true,
                Some((best_impurity, _, _)) => impurity < best_impurity,
            };
            if better {
                best = Some((impurity, feature, threshold));
            }
        }
    }
    best.map(|(_, feature, threshold)| (feature, threshold))
}

/// `w_total * gini` of one side: `w (1 - p^2 - q^2)` in weighted form.
fn weighted_gini(w_pos: f64, w_neg: f64) -> f64 {
    let w = w_pos + w_neg;
    if w <= 0.0 {
        return 0.0;
    }
    w * (1.0 - (w_pos / w) * (w_pos / w) - (w_neg / w) * (w_neg / w))
}
