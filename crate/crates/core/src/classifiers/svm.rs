//! Linear SVM trained by seeded epoch-wise projected subgradient descent
//! on the L2-regularized hinge loss (Pegasos-style step size `1/(λt)`).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::SparseVector;

use super::BinaryClassifier;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SvmConfig {
    /// L2 regularization strength λ.
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_lambda() -> f64 {
    1e-4
}
fn default_epochs() -> usize {
    20
}

impl Default for SvmConfig {
    fn default() -> Self {
        Self {
            lambda: 1e-4,
            epochs: 20,
            seed: 0,
        }
    }
}

impl SvmConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda <= 0.0 {
            return Err(Error::InvalidConfig("lambda must be > 0".into()));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be >= 1".into()));
        }
        Ok(())
    }
}

/// A fitted linear separator: `decision_score(x) = weights · x + bias`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvmModel {
    weights: Vec<f64>,
    bias: f64,
    config: SvmConfig,
}

impl LinearSvmModel {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn config(&self) -> &SvmConfig {
        &self.config
    }
}

impl BinaryClassifier for LinearSvmModel {
    fn decision_score(&self, x: &SparseVector) -> f64 {
        x.dot_dense(&self.weights) + self.bias
    }
}

/// `λ/2 ||w||² + mean hinge loss` of a weight vector on the training set.
pub fn svm_objective(
    x: &[SparseVector],
    y: &[bool],
    weights: &[f64],
    bias: f64,
    lambda: f64,
) -> f64 {
    let norm_sq: f64 = weights.iter().map(|w| w * w).sum();
    let hinge: f64 = x
        .iter()
        .zip(y.iter())
        .map(|(xi, &yi)| {
            let sign = if yi { 1.0 } else { -1.0 };
            (1.0 - sign * (xi.dot_dense(weights) + bias)).max(0.0)
        })
        .sum();
    0.5 * lambda * norm_sq + hinge / x.len() as f64
}

/// Train by projected subgradient descent with step `1/(λt)`, keeping the
/// epoch-end iterate with the lowest regularized objective (the zero vector
/// is always a candidate, so the result is never worse than it).
pub fn train_linear_svm(
    x: &[SparseVector],
    y: &[bool],
    config: &SvmConfig,
) -> Result<LinearSvmModel> {
    config.validate()?;
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::EmptyCorpus);
    }
    if y.iter().all(|&b| b) || y.iter().all(|&b| !b) {
        return Err(Error::SingleClass);
    }
    let dim = x[0].dim();
    for row in x {
        if row.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.dim(),
            });
        }
    }

    let lambda = config.lambda;
    let radius = 1.0 / lambda.sqrt();
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    // w is kept as scale * direction so sparse updates stay O(nnz).
    let mut direction = vec![0.0; dim];
    let mut scale = 1.0f64;
    let mut norm_sq = 0.0f64;
    let mut bias = 0.0f64;
    let mut t = 0u64;

    let mut best_weights = vec![0.0; dim];
    let mut best_bias = 0.0;
    let mut best_objective = svm_objective(x, y, &best_weights, best_bias, lambda);

    let mut order: Vec<usize> = (0..x.len()).collect();
    for _epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let xi = &x[i];
            let sign = if y[i] { 1.0 } else { -1.0 };
            let w_dot_x = scale * xi.dot_dense(&direction);
            let violated = sign * (w_dot_x + bias) < 1.0;

            let shrink = 1.0 - eta * lambda;
            if shrink == 0.0 {
                direction.iter_mut().for_each(|v| *v = 0.0);
                scale = 1.0;
                norm_sq = 0.0;
            } else {
                scale *= shrink;
                norm_sq *= shrink * shrink;
            }
            if violated {
                let step = eta * sign;
                for (j, v) in xi.iter() {
                    direction[j as usize] += step * v / scale;
                }
                let x_norm_sq: f64 = xi.iter().map(|(_, v)| v * v).sum();
                norm_sq += 2.0 * shrink * step * w_dot_x + step * step * x_norm_sq;
                norm_sq = norm_sq.max(0.0);
                bias += step;
            }
            // Projection onto the ball of radius 1/sqrt(λ).
            let norm = norm_sq.sqrt();
            if norm > radius {
                let shrink_to_ball = radius / norm;
                scale *= shrink_to_ball;
                norm_sq = radius * radius;
            }
            if scale.abs() < 1e-9 {
                for v in &mut direction {
                    *v *= scale;
                }
                scale = 1.0;
            }
        }
        let weights: Vec<f64> = direction.iter().map(|v| v * scale).collect();
        let objective = svm_objective(x, y, &weights, bias, lambda);
        if objective < best_objective {
            best_objective = objective;
            best_weights = weights;
            best_bias = bias;
        }
        // Re-anchor the tracked norm to kill floating-point drift.
        norm_sq = direction.iter().map(|v| (v * scale) * (v * scale)).sum();
    }

    Ok(LinearSvmModel {
        weights: best_weights,
        bias: best_bias,
        config: config.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::ChaCha20Rng;

    fn rows(data: &[&[f64]]) -> Vec<SparseVector> {
        data.iter().map(|r| SparseVector::from_dense(r)).collect()
    }

    #[test]
    fn separates_one_dimensional_points() {
        let x = rows(&[&[-1.0], &[1.0]]);
        let y = vec![false, true];
        let model = train_linear_svm(&x, &y, &SvmConfig::default()).unwrap();
        assert!(!model.predict(&x[0]));
        assert!(model.predict(&x[1]));
    }

    #[test]
    fn rejects_single_class() {
        let x = rows(&[&[1.0], &[2.0]]);
        assert!(matches!(
            train_linear_svm(&x, &[true, true], &SvmConfig::default()),
            Err(Error::SingleClass)
        ));
    }

    #[test]
    fn objective_never_worse_than_zero_vector() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for trial in 0..10 {
            let n = 30;
            let x: Vec<SparseVector> = (0..n)
                .map(|_| {
                    SparseVector::from_dense(&[
                        rng.random_range(-2.0..2.0),
                        rng.random_range(-2.0..2.0),
                        rng.random_range(-2.0..2.0),
                    ])
                })
                .collect();
            let y: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
            let config = SvmConfig {
                seed: trial,
                ..SvmConfig::default()
            };
            let model = train_linear_svm(&x, &y, &config).unwrap();
            let trained = svm_objective(
                x.as_slice(),
                &y,
                model.weights(),
                model.bias(),
                config.lambda,
            );
            let zero = svm_objective(x.as_slice(), &y, &[0.0; 3], 0.0, config.lambda);
            assert!(trained <= zero + 1e-12, "trial {trial}: {trained} > {zero}");
        }
    }

    #[test]
    fn duplicated_dataset_keeps_decision_signs() {
        // Two well-separated blobs; duplicating every point must not flip
        // predictions on a grid of clearly one-sided queries.
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let mut x = Vec::new();
        let mut y = Vec::new();
        for _ in 0..20 {
            x.push(SparseVector::from_dense(&[
                -2.0 + rng.random_range(-0.3..0.3),
                -2.0 + rng.random_range(-0.3..0.3),
            ]));
            y.push(false);
            x.push(SparseVector::from_dense(&[
                2.0 + rng.random_range(-0.3..0.3),
                2.0 + rng.random_range(-0.3..0.3),
            ]));
            y.push(true);
        }
        let mut x2 = x.clone();
        x2.extend(x.iter().cloned());
        let mut y2 = y.clone();
        y2.extend(y.iter().cloned());

        let config = SvmConfig::default();
        let single = train_linear_svm(&x, &y, &config).unwrap();
        let doubled = train_linear_svm(&x2, &y2, &config).unwrap();
        for gx in [-3.0, -2.5, -2.0, -1.5, 1.5, 2.0, 2.5, 3.0] {
            for gy in [-3.0, -2.0, 2.0, 3.0] {
                if (gx > 0.0) != (gy > 0.0) {
                    continue; // stay away from the decision boundary
                }
                let q = SparseVector::from_dense(&[gx, gy]);
                assert_eq!(single.predict(&q), doubled.predict(&q), "at ({gx},{gy})");
            }
        }
    }

    #[test]
    fn training_is_reproducible_under_seed() {
        let x = rows(&[&[0.1, 0.2], &[0.9, 0.8], &[0.2, 0.1], &[0.8, 0.9]]);
        let y = vec![false, true, false, true];
        let config = SvmConfig {
            seed: 42,
            ..SvmConfig::default()
        };
        let a = train_linear_svm(&x, &y, &config).unwrap();
        let b = train_linear_svm(&x, &y, &config).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
