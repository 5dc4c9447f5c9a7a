//! Principal component analysis over sparse feature matrices.
//!
//! Centering is implicit: rows stay sparse and the column mean is carried
//! separately. For feature dimensions up to [`DENSE_LIMIT`] the covariance
//! is formed explicitly and eigendecomposed; above that, the top-k factors
//! come from block power iteration with deflation against the converged
//! subspace (orthogonal iteration plus a Rayleigh–Ritz rotation).

#![allow(clippy::needless_range_loop)] // indexed loops read naturally in matrix kernels

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::SparseVector;
use crate::linalg::{symmetric_eigen, DenseMatrix};
use crate::persist;

/// Largest feature dimension handled by exact dense eigendecomposition.
pub const DENSE_LIMIT: usize = 512;

const MAX_ITERATIONS: usize = 1000;
const SUBSPACE_TOL: f64 = 1e-9;
/// Fixed seed for iteration start vectors; fitting is fully deterministic.
const INIT_SEED: u64 = 0x0b_a2_6c_a1;

/// A fitted PCA basis: column mean, row-orthonormal components and their
/// explained variances (sample variance of the training projections),
/// sorted non-increasing. Each component's largest-magnitude coordinate is
/// positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    mean: Vec<f64>,
    components: Vec<Vec<f64>>,
    explained_variance: Vec<f64>,
    mean_projection: Vec<f64>,
}

impl PcaModel {
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn component(&self, i: usize) -> &[f64] {
        &self.components[i]
    }

    pub fn explained_variance(&self) -> &[f64] {
        &self.explained_variance
    }

    /// Project a feature vector onto the component basis:
    /// `components · (x − mean)`.
    pub fn project(&self, x: &SparseVector) -> Result<Vec<f64>> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(self
            .components
            .iter()
            .zip(self.mean_projection.iter())
            .map(|(row, &mp)| x.dot_dense(row) - mp)
            .collect())
    }

    /// Keep only the first `k` components.
    fn truncate(&mut self, k: usize) {
        self.components.truncate(k);
        self.explained_variance.truncate(k);
        self.mean_projection.truncate(k);
    }

    fn to_doc(&self) -> PcaDoc {
        PcaDoc {
            schema: SCHEMA.to_string(),
            dim: self.dim(),
            mean: self.mean.clone(),
            explained_variance: self.explained_variance.clone(),
            components: self.components.clone(),
        }
    }

    fn from_doc(doc: PcaDoc) -> Result<Self> {
        if doc.mean.len() != doc.dim
            || doc.components.iter().any(|c| c.len() != doc.dim)
            || doc.components.len() != doc.explained_variance.len()
        {
            return Err(Error::MalformedDocument(
                "inconsistent PCA dimensions".into(),
            ));
        }
        let mean_projection = doc
            .components
            .iter()
            .map(|row| dot(row, &doc.mean))
            .collect();
        Ok(Self {
            mean: doc.mean,
            components: doc.components,
            explained_variance: doc.explained_variance,
            mean_projection,
        })
    }

    pub fn to_json(&self) -> String {
        persist::to_json_pretty(&self.to_doc())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PcaDoc = persist::parse_document(text, SCHEMA)?;
        Self::from_doc(doc)
    }
}

impl Serialize for PcaModel {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PcaModel {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = PcaDoc::deserialize(deserializer)?;
        if doc.schema != SCHEMA {
            return Err(serde::de::Error::custom(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                doc.schema
            )));
        }
        Self::from_doc(doc).map_err(serde::de::Error::custom)
    }
}

const SCHEMA: &str = "onubhuti/pca-model/v1";

#[derive(Serialize, Deserialize)]
struct PcaDoc {
    schema: String,
    dim: usize,
    mean: Vec<f64>,
    explained_variance: Vec<f64>,
    components: Vec<Vec<f64>>,
}

/// Fit a `k`-component PCA of the row matrix `x`.
pub fn fit_pca(x: &[SparseVector], k: usize) -> Result<PcaModel> {
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidConfig(
            "PCA requires at least 2 rows".to_string(),
        ));
    }
    let d = x[0].dim();
    for row in x {
        if row.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.dim(),
            });
        }
    }
    let max_k = n.min(d);
    if k < 1 || k > max_k {
        return Err(Error::ComponentCountOutOfRange { k, max: max_k });
    }

    let mut mean = vec![0.0; d];
    for row in x {
        for (i, v) in row.iter() {
            mean[i as usize] += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    let sum_sq: f64 = x
        .iter()
        .map(|r| r.iter().map(|(_, v)| v * v).sum::<f64>())
        .sum();
    let total_variance = (sum_sq - n as f64 * dot(&mean, &mean)) / (n as f64 - 1.0);
    if total_variance <= 1e-12 {
        return Err(Error::DegenerateCovariance);
    }

    let (mut components, mut explained_variance) = if d <= DENSE_LIMIT {
        fit_dense(x, &mean, k)
    } else {
        fit_iterative(x, &mean, k)
    };

    for row in &mut components {
        apply_sign_convention(row);
    }
    for v in &mut explained_variance {
        *v = v.max(0.0);
    }
    let mean_projection = components.iter().map(|row| dot(row, &mean)).collect();
    Ok(PcaModel {
        mean,
        components,
        explained_variance,
        mean_projection,
    })
}

/// Fit with the smallest component count explaining at least
/// `variance_fraction` of the total variance, capped at `cap`.
pub fn fit_pca_auto(x: &[SparseVector], variance_fraction: f64, cap: usize) -> Result<PcaModel> {
    if !(0.0 < variance_fraction && variance_fraction <= 1.0) {
        return Err(Error::InvalidConfig(
            "variance fraction must be in (0, 1]".to_string(),
        ));
    }
    let n = x.len();
    let d = x.first().map(SparseVector::dim).unwrap_or(0);
    let k_max = cap.max(1).min(n.min(d).max(1));
    let mut model = fit_pca(x, k_max)?;

    let sum_sq: f64 = x
        .iter()
        .map(|r| r.iter().map(|(_, v)| v * v).sum::<f64>())
        .sum();
    let total = (sum_sq - n as f64 * dot(model.mean(), model.mean())) / (n as f64 - 1.0);
    let mut cumulative = 0.0;
    let mut keep = model.k();
    for (i, &v) in model.explained_variance.iter().enumerate() {
        cumulative += v;
        if cumulative >= variance_fraction * total {
            keep = i + 1;
            break;
        }
    }
    model.truncate(keep);
    Ok(model)
}

/// Exact path: form the d×d covariance and eigendecompose it.
fn fit_dense(x: &[SparseVector], mean: &[f64], k: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = x.len();
    let d = mean.len();
    let mut cov = DenseMatrix::zeros(d, d);
    for row in x {
        let entries: Vec<(u32, f64)> = row.iter().collect();
        for (a, &(i, vi)) in entries.iter().enumerate() {
            for &(j, vj) in &entries[a..] {
                cov.add(i as usize, j as usize, vi * vj);
            }
        }
    }
    let scale = 1.0 / (n as f64 - 1.0);
    for i in 0..d {
        for j in i..d {
            let centered = (cov.get(i, j) - n as f64 * mean[i] * mean[j]) * scale;
            cov.set(i, j, centered);
            cov.set(j, i, centered);
        }
    }
    let (values, vectors) = symmetric_eigen(&cov);
    let components = (0..k).map(|i| vectors.row(i).to_vec()).collect();
    (components, values[..k].to_vec())
}

/// Iterative path: orthogonal iteration on the implicitly centered
/// covariance operator, finished with a Rayleigh–Ritz rotation.
fn fit_iterative(x: &[SparseVector], mean: &[f64], k: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let d = mean.len();
    let mut rng = ChaCha20Rng::seed_from_u64(INIT_SEED);
    let mut basis: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    orthonormalize(&mut basis, &mut rng);

    for _ in 0..MAX_ITERATIONS {
        let mut next = apply_covariance(x, mean, &basis);
        orthonormalize(&mut next, &mut rng);
        let drift = subspace_drift(&basis, &next);
        basis = next;
        if drift < SUBSPACE_TOL {
            break;
        }
    }

    // Rayleigh–Ritz: diagonalize the operator restricted to the subspace.
    let image = apply_covariance(x, mean, &basis);
    let mut small = DenseMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            small.set(i, j, dot(&basis[i], &image[j]));
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let symmetrized = 0.5 * (small.get(i, j) + small.get(j, i));
            small.set(i, j, symmetrized);
            small.set(j, i, symmetrized);
        }
    }
    let (values, rotation) = symmetric_eigen(&small);
    let mut components = vec![vec![0.0; d]; k];
    for i in 0..k {
        for j in 0..k {
            let w = rotation.get(i, j);
            if w != 0.0 {
                for (out, &b) in components[i].iter_mut().zip(basis[j].iter()) {
                    *out += w * b;
                }
            }
        }
    }
    (components, values)
}

/// `y_j = C b_j` for every column of the block, with
/// `C = (Xᵀ X − n m mᵀ) / (n − 1)` applied without materializing it.
fn apply_covariance(x: &[SparseVector], mean: &[f64], block: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len() as f64;
    let d = mean.len();
    block
        .iter()
        .map(|v| {
            let mut out = vec![0.0; d];
            for row in x {
                let t = row.dot_dense(v);
                if t != 0.0 {
                    for (i, value) in row.iter() {
                        out[i as usize] += t * value;
                    }
                }
            }
            let mv = n * dot(mean, v);
            let scale = 1.0 / (n - 1.0);
            for (o, &m) in out.iter_mut().zip(mean.iter()) {
                *o = (*o - mv * m) * scale;
            }
            out
        })
        .collect()
}

/// Modified Gram–Schmidt with re-orthogonalization; degenerate columns are
/// replaced by fresh seeded random directions.
fn orthonormalize(block: &mut [Vec<f64>], rng: &mut ChaCha20Rng) {
    let d = block.first().map(Vec::len).unwrap_or(0);
    for i in 0..block.len() {
        for _attempt in 0..8 {
            for j in 0..i {
                let proj = dot(&block[i], &block[j]);
                let prior = block[j].clone();
                for (a, &b) in block[i].iter_mut().zip(prior.iter()) {
                    *a -= proj * b;
                }
            }
            let norm = dot(&block[i], &block[i]).sqrt();
            if norm > 1e-12 {
                for a in &mut block[i] {
                    *a /= norm;
                }
                break;
            }
            block[i] = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        }
    }
}

/// Largest sine of a principal angle between the old and new subspaces,
/// measured on the new basis columns.
fn subspace_drift(old: &[Vec<f64>], new: &[Vec<f64>]) -> f64 {
    new.iter()
        .map(|w| {
            let projected_sq: f64 = old.iter().map(|v| dot(v, w) * dot(v, w)).sum();
            (1.0 - projected_sq).max(0.0).sqrt()
        })
        .fold(0.0, f64::max)
}

/// Flip a component so its largest-magnitude coordinate is positive.
fn apply_sign_convention(row: &mut [f64]) {
    let mut best = 0usize;
    for (i, v) in row.iter().enumerate() {
        if v.abs() > row[best].abs() {
            best = i;
        }
    }
    if row[best] < 0.0 {
        for v in row.iter_mut() {
            *v = -*v;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}
