//! k-nearest-neighbor classification over sparse document vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::SparseVector;

use super::BinaryClassifier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Cosine,
    Euclidean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnnConfig {
    /// Number of neighbors; must be odd so binary votes cannot tie.
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_distance")]
    pub distance: Distance,
}

fn default_k() -> usize {
    5
}
fn default_distance() -> Distance {
    Distance::Cosine
}

impl Default for KnnConfig {
    fn default() -> Self {
        Self {
            k: 5,
            distance: Distance::Cosine,
        }
    }
}

/// The stored training set plus the neighbor rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    vectors: Vec<SparseVector>,
    labels: Vec<bool>,
    norms: Vec<f64>,
    config: KnnConfig,
}

pub fn train_knn(x: &[SparseVector], y: &[bool], config: &KnnConfig) -> Result<KnnModel> {
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::EmptyCorpus);
    }
    if config.k == 0 || config.k.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "k must be odd and positive, got {}",
            config.k
        )));
    }
    if config.k > x.len() {
        return Err(Error::InvalidConfig(format!(
            "k = {} exceeds training size {}",
            config.k,
            x.len()
        )));
    }
    let norms = x.iter().map(SparseVector::norm).collect();
    Ok(KnnModel {
        vectors: x.to_vec(),
        labels: y.to_vec(),
        norms,
        config: config.clone(),
    })
}

impl KnnModel {
    pub fn config(&self) -> &KnnConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn distance_to(&self, index: usize, query: &SparseVector, query_norm: f64) -> f64 {
        distance(
            self.config.distance,
            &self.vectors[index],
            self.norms[index],
            query,
            query_norm,
        )
    }

    /// Indices of the k nearest training vectors, ties at the cutoff
    /// distance broken by lower training index.
    pub fn neighbors(&self, query: &SparseVector) -> Vec<usize> {
        let query_norm = query.norm();
        let mut order: Vec<usize> = (0..self.vectors.len()).collect();
        order.sort_by(|&a, &b| {
            let da = self.distance_to(a, query, query_norm);
            let db = self.distance_to(b, query, query_norm);
            da.partial_cmp(&db)
                .expect("distances are finite")
                .then(a.cmp(&b))
        });
        order.truncate(self.config.k);
        order
    }
}

/// Distance between two vectors given their precomputed norms.
fn distance(kind: Distance, a: &SparseVector, a_norm: f64, b: &SparseVector, b_norm: f64) -> f64 {
    match kind {
        Distance::Cosine => {
            if a_norm == 0.0 && b_norm == 0.0 {
                0.0
            } else if a_norm == 0.0 || b_norm == 0.0 {
                1.0
            } else {
                1.0 - a.dot(b) / (a_norm * b_norm)
            }
        }
        Distance::Euclidean => {
            let sq = a_norm * a_norm + b_norm * b_norm - 2.0 * a.dot(b);
            sq.max(0.0).sqrt()
        }
    }
}

impl BinaryClassifier for KnnModel {
    /// Signed vote margin `(positives − negatives) / k`; never zero for
    /// odd k, so `predict` is exactly the majority label.
    fn decision_score(&self, x: &SparseVector) -> f64 {
        let votes = self.neighbors(x);
        let positives = votes.iter().filter(|&&i| self.labels[i]).count() as f64;
        let k = self.config.k as f64;
        (2.0 * positives - k) / k
    }
}
