//! Discrete two-class AdaBoost over shallow decision trees.
//!
//! Sample weights start uniform. Each round fits a weak tree on the current
//! weights, measures its weighted error ε, stores it with stage weight
//! `α = ½ ln((1−ε)/ε)`, then reweights `w ← w·exp(−α·y·h)` and renormalizes.
//! A round with ε ≥ ½ terminates boosting without being stored; a perfect
//! round (ε = 0) is stored with a capped α and terminates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::SparseVector;

use super::tree::{grow_tree, TreeConfig, TreeModel};
use super::BinaryClassifier;

/// Stage weight assigned to a weak learner with zero weighted error.
pub const ALPHA_CAP: f64 = 23.025_850_929_940_457; // ln(1e10)

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdaBoostConfig {
    #[serde(default = "default_n_estimators")]
    pub n_estimators: usize,
    /// Depth of the weak trees.
    #[serde(default = "default_weak_depth")]
    pub weak_depth: usize,
    #[serde(default = "default_weak_min_samples_leaf")]
    pub min_samples_leaf: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_n_estimators() -> usize {
    50
}
fn default_weak_depth() -> usize {
    2
}
fn default_weak_min_samples_leaf() -> usize {
    1
}

impl Default for AdaBoostConfig {
    fn default() -> Self {
        Self {
            n_estimators: 50,
            weak_depth: 2,
            min_samples_leaf: 1,
            seed: 0,
        }
    }
}

impl AdaBoostConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_estimators == 0 {
            return Err(Error::InvalidConfig("n_estimators must be >= 1".into()));
        }
        if self.weak_depth == 0 {
            return Err(Error::InvalidConfig("weak_depth must be >= 1".into()));
        }
        if self.min_samples_leaf == 0 {
            return Err(Error::InvalidConfig("min_samples_leaf must be >= 1".into()));
        }
        Ok(())
    }
}

/// One boosting stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostStage {
    pub tree: TreeModel,
    pub alpha: f64,
}

/// The boosted ensemble: `decision_score(x) = Σ α_m · h_m(x)` with
/// `h_m(x) ∈ {−1, +1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaBoostModel {
    stages: Vec<BoostStage>,
    config: AdaBoostConfig,
}

impl AdaBoostModel {
    pub fn stages(&self) -> &[BoostStage] {
        &self.stages
    }

    pub fn config(&self) -> &AdaBoostConfig {
        &self.config
    }
}

impl BinaryClassifier for AdaBoostModel {
    fn decision_score(&self, x: &SparseVector) -> f64 {
        self.stages
            .iter()
            .map(|s| if s.tree.predict(x) { s.alpha } else { -s.alpha })
            .sum()
    }
}

/// Diagnostics of one training round, exposed for auditing and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct BoostRound {
    pub weighted_error: f64,
    pub alpha: f64,
    /// Sample weights after the round's update and renormalization.
    pub weights: Vec<f64>,
}

pub fn train_adaboost(
    x: &[SparseVector],
    y: &[bool],
    config: &AdaBoostConfig,
) -> Result<AdaBoostModel> {
    Ok(train_adaboost_traced(x, y, config)?.0)
}

/// Train and also return the per-round trace.
pub fn train_adaboost_traced(
    x: &[SparseVector],
    y: &[bool],
    config: &AdaBoostConfig,
) -> Result<(AdaBoostModel, Vec<BoostRound>)> {
    config.validate()?;
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::EmptyCorpus);
    }
    if y.iter().all(|&b| b) || y.iter().all(|&b| !b) {
        return Err(Error::SingleClass);
    }

    let n = x.len();
    let tree_config = TreeConfig {
        max_depth: Some(config.weak_depth),
        min_samples_leaf: config.min_samples_leaf,
    };
    let all_samples: Vec<u32> = (0..n as u32).collect();
    let mut weights = vec![1.0 / n as f64; n];
    let mut stages = Vec::new();
    let mut rounds = Vec::new();

    for _m in 0..config.n_estimators {
        let tree = grow_tree(x, y, &weights, all_samples.clone(), &tree_config, &mut None);
        let agree: Vec<bool> = x
            .iter()
            .zip(y.iter())
            .map(|(xi, &yi)| tree.predict(xi) == yi)
            .collect();
        let weighted_error: f64 = agree
            .iter()
            .zip(weights.iter())
            .filter(|(ok, _)| !**ok)
            .map(|(_, w)| *w)
            .sum();

        if weighted_error >= 0.5 {
            break;
        }
        if weighted_error == 0.0 {
            stages.push(BoostStage {
                tree,
                alpha: ALPHA_CAP,
            });
            rounds.push(BoostRound {
                weighted_error,
                alpha: ALPHA_CAP,
                weights: weights.clone(),
            });
            break;
        }

        let alpha = 0.5 * ((1.0 - weighted_error) / weighted_error).ln();
        for (w, ok) in weights.iter_mut().zip(agree.iter()) {
            // exp(−α·y·h) is exp(−α) on agreement and exp(α) on error.
            *w *= if *ok { (-alpha).exp() } else { alpha.exp() };
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        stages.push(BoostStage { tree, alpha });
        rounds.push(BoostRound {
            weighted_error,
            alpha,
            weights: weights.clone(),
        });
    }

    Ok((
        AdaBoostModel {
            stages,
            config: config.clone(),
        },
        rounds,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    // ½ ln 3, evaluated independently.
    const ALPHA_QUARTER: f64 = 0.549_306_144_334_054_9;

    fn one_dimensional(values: &[f64]) -> Vec<SparseVector> {
        values
            .iter()
            .map(|&v| SparseVector::from_dense(&[v]))
            .collect()
    }

    #[test]
    fn alpha_formula_for_quarter_error() {
        let epsilon: f64 = 0.25;
        let alpha = 0.5 * ((1.0 - epsilon) / epsilon).ln();
        assert!((alpha - ALPHA_QUARTER).abs() < 1e-12);
    }

    #[test]
    fn perfect_first_round_keeps_one_capped_stage() {
        let x = one_dimensional(&[0.0, 1.0, 2.0, 10.0, 11.0, 12.0]);
        let y = vec![false, false, false, true, true, true];
        let config = AdaBoostConfig {
            n_estimators: 25,
            weak_depth: 1,
            ..AdaBoostConfig::default()
        };
        let model = train_adaboost(&x, &y, &config).unwrap();
        assert_eq!(model.stages().len(), 1);
        assert_eq!(model.stages()[0].alpha, ALPHA_CAP);
        for (xi, &yi) in x.iter().zip(y.iter()) {
            assert_eq!(model.predict(xi), yi);
        }
    }

    #[test]
    fn weights_stay_normalized_and_alphas_positive() {
        let x = one_dimensional(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
        let y = vec![true, false, true, false, true, false, true, false];
        let config = AdaBoostConfig {
            n_estimators: 12,
            weak_depth: 1,
            ..AdaBoostConfig::default()
        };
        let (model, rounds) = train_adaboost_traced(&x, &y, &config).unwrap();
        assert!(!rounds.is_empty());
        for round in &rounds {
            let total: f64 = round.weights.iter().sum();
            assert!((total - 1.0).abs() <= 1e-9);
        }
        for stage in model.stages() {
            assert!(stage.alpha > 0.0);
        }
    }

    #[test]
    fn weight_recursion_matches_hand_replay() {
        // Replay w ← w·exp(−α·y·h) / Z from the reported errors and stage
        // predictions, independently of the trainer's bookkeeping.
        let x = one_dimensional(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
        let y = vec![true, false, true, false, true, false, true, false];
        let config = AdaBoostConfig {
            n_estimators: 6,
            weak_depth: 1,
            ..AdaBoostConfig::default()
        };
        let (model, rounds) = train_adaboost_traced(&x, &y, &config).unwrap();
        let n = x.len();
        let mut w = vec![1.0 / n as f64; n];
        for (stage, round) in model.stages().iter().zip(rounds.iter()) {
            let epsilon: f64 = x
                .iter()
                .zip(y.iter())
                .zip(w.iter())
                .filter(|((xi, &yi), _)| stage.tree.predict(xi) != yi)
                .map(|(_, wi)| *wi)
                .sum();
            assert!((epsilon - round.weighted_error).abs() < 1e-12);
            let alpha = 0.5 * ((1.0 - epsilon) / epsilon).ln();
            assert!((alpha - stage.alpha).abs() < 1e-12);
            for ((xi, &yi), wi) in x.iter().zip(y.iter()).zip(w.iter_mut()) {
                let sign = if stage.tree.predict(xi) == yi {
                    -1.0
                } else {
                    1.0
                };
                *wi *= (sign * alpha).exp();
            }
            let z: f64 = w.iter().sum();
            w.iter_mut().for_each(|wi| *wi /= z);
            for (mine, theirs) in w.iter().zip(round.weights.iter()) {
                assert!((mine - theirs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ensemble_error_not_worse_than_first_stump() {
        let x = one_dimensional(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
        let y = vec![true, false, true, false, true, false, true, false];
        let config = AdaBoostConfig {
            n_estimators: 30,
            weak_depth: 1,
            ..AdaBoostConfig::default()
        };
        let (model, rounds) = train_adaboost_traced(&x, &y, &config).unwrap();
        let n = x.len() as f64;
        let uniform_error = |predict: &dyn Fn(&SparseVector) -> bool| {
            x.iter()
                .zip(y.iter())
                .filter(|(xi, &yi)| predict(xi) != yi)
                .count() as f64
                / n
        };
        let first = &model.stages()[0].tree;
        let first_error = uniform_error(&|xi| first.predict(xi));
        let ensemble_error = uniform_error(&|xi| model.predict(xi));
        assert!(
            ensemble_error <= first_error + 1e-12,
            "{ensemble_error} > {first_error} after {} rounds",
            rounds.len()
        );
    }

    #[test]
    fn single_class_input_is_rejected() {
        let x = one_dimensional(&[0.0, 1.0]);
        assert!(matches!(
            train_adaboost(&x, &[true, true], &AdaBoostConfig::default()),
            Err(Error::SingleClass)
        ));
    }
}
