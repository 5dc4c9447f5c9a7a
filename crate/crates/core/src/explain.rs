//! LIME-style local explanations: which words drove one model decision.
//!
//! The interpretable space is word presence over the distinct words of the
//! instance. Perturbations delete every occurrence of the masked words; the
//! model's decision score on each perturbed text is fit by a weighted ridge
//! regression whose proximity kernel is `exp(−D²/width²)` with `D` the
//! cosine distance between the mask and the all-ones mask.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::classifiers::MultiLabelModel;
use crate::corpus::{preprocess, Emotion};
use crate::error::{Error, Result};
use crate::linalg::{cholesky_solve, residual_inf, DenseMatrix};
use crate::persist;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimeConfig {
    #[serde(default = "default_num_samples")]
    pub num_samples: usize,
    /// Number of reported features (K).
    #[serde(default = "default_num_features")]
    pub num_features: usize,
    /// Proximity kernel width; default is `0.75·√W` for W distinct words.
    #[serde(default)]
    pub kernel_width: Option<f64>,
    /// Ridge regularization strength; must stay positive so the local fit
    /// is always solvable.
    #[serde(default = "default_ridge")]
    pub ridge: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_num_samples() -> usize {
    1000
}
fn default_num_features() -> usize {
    10
}
fn default_ridge() -> f64 {
    1.0
}

impl Default for LimeConfig {
    fn default() -> Self {
        Self {
            num_samples: 1000,
            num_features: 10,
            kernel_width: None,
            ridge: 1.0,
            seed: 0,
        }
    }
}

impl LimeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_samples < 2 {
            return Err(Error::InvalidConfig("num_samples must be >= 2".into()));
        }
        if self.num_features == 0 {
            return Err(Error::InvalidConfig("num_features must be >= 1".into()));
        }
        if !self.ridge.is_finite() || self.ridge <= 0.0 {
            return Err(Error::InvalidConfig("ridge strength must be > 0".into()));
        }
        if let Some(w) = self.kernel_width {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidConfig("kernel_width must be > 0".into()));
            }
        }
        Ok(())
    }
}

/// The instance as the local model sees it.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpretableInstance {
    pub text: String,
    /// Unique tokens in first-occurrence order.
    pub distinct_words: Vec<String>,
    pub original_score: f64,
}

impl InterpretableInstance {
    fn build(normalized: &str, original_score: f64) -> Self {
        let mut distinct_words = Vec::new();
        for token in normalized.split_whitespace() {
            if !distinct_words.iter().any(|w| w == token) {
                distinct_words.push(token.to_string());
            }
        }
        Self {
            text: normalized.to_string(),
            distinct_words,
            original_score,
        }
    }
}

/// A ranked local explanation of one decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Explanation {
    pub label: String,
    /// `(word, weight)` sorted by non-increasing |weight|.
    pub features: Vec<(String, f64)>,
    pub intercept: f64,
    /// Weighted R² of the final local fit, in [0, 1].
    pub local_fit_score: f64,
    pub num_samples: usize,
    pub seed: u64,
    pub kernel_width: f64,
    pub original_score: f64,
}

const SCHEMA: &str = "onubhuti/explanation/v1";

#[derive(Serialize, Deserialize)]
struct ExplanationDoc {
    schema: String,
    config: LimeConfig,
    config_hash: String,
    #[serde(flatten)]
    explanation: Explanation,
}

impl Explanation {
    pub fn to_json(&self, config: &LimeConfig) -> String {
        let doc = ExplanationDoc {
            schema: SCHEMA.to_string(),
            config: config.clone(),
            config_hash: persist::config_hash(config),
            explanation: self.clone(),
        };
        persist::to_json_pretty(&doc)
    }

    pub fn from_json(text: &str) -> Result<(Self, LimeConfig)> {
        let doc: ExplanationDoc = persist::parse_document(text, SCHEMA)?;
        Ok((doc.explanation, doc.config))
    }
}

/// Explain one emotion's decision on one text.
pub fn explain_instance(
    model: &MultiLabelModel,
    text: &str,
    label: Emotion,
    config: &LimeConfig,
) -> Result<Explanation> {
    explain_with_scorer(|t| model.label_score(t, label), text, label.name(), config)
}

/// Explain any scorer's decision on one text. The scorer is queried once
/// per perturbed sample; the first sample is always the unperturbed text.
pub fn explain_with_scorer<F>(
    scorer: F,
    text: &str,
    label: &str,
    config: &LimeConfig,
) -> Result<Explanation>
where
    F: Fn(&str) -> Result<f64>,
{
    config.validate()?;
    let normalized = preprocess(text);
    if normalized.is_empty() {
        return Err(Error::EmptyAfterPreprocess);
    }
    let tokens: Vec<&str> = normalized.split_whitespace().collect();
    let mut instance = InterpretableInstance::build(&normalized, 0.0);
    let w = instance.distinct_words.len();
    let kernel_width = config
        .kernel_width
        .unwrap_or_else(|| 0.75 * (w as f64).sqrt());

    // The first mask keeps every word, so its query IS the original text.
    let masks = sample_masks(w, config.num_samples, config.seed);
    let mut scores = Vec::with_capacity(masks.len());
    let mut proximity = Vec::with_capacity(masks.len());
    for mask in &masks {
        let perturbed = realize_mask(&tokens, &instance.distinct_words, mask);
        scores.push(scorer(&perturbed)?);
        let kept = mask.iter().filter(|&&m| m).count();
        let distance = if kept == 0 {
            1.0
        } else {
            1.0 - (kept as f64 / w as f64).sqrt()
        };
        proximity.push((-(distance * distance) / (kernel_width * kernel_width)).exp());
    }
    instance.original_score = scores[0];
    let original_score = instance.original_score;

    // Stage 1: ridge over all W words; keep the K largest |coefficient|.
    let all_columns: Vec<usize> = (0..w).collect();
    let (coefficients, _) =
        weighted_ridge(&masks, &all_columns, &scores, &proximity, config.ridge)?;
    let mut ranked: Vec<usize> = (0..w).collect();
    ranked.sort_by(|&a, &b| {
        coefficients[b]
            .abs()
            .total_cmp(&coefficients[a].abs())
            .then(a.cmp(&b))
    });
    let k = config.num_features.min(w);
    let mut selected = ranked[..k].to_vec();
    selected.sort_unstable();

    // Stage 2: refit on the selected words only.
    let (weights, intercept) =
        weighted_ridge(&masks, &selected, &scores, &proximity, config.ridge)?;
    let local_fit_score = weighted_r2(&masks, &selected, &weights, intercept, &scores, &proximity);

    let mut features: Vec<(String, f64)> = selected
        .iter()
        .zip(weights.iter())
        .map(|(&j, &beta)| (instance.distinct_words[j].clone(), beta))
        .collect();
    features.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));

    Ok(Explanation {
        label: label.to_string(),
        features,
        intercept,
        local_fit_score,
        num_samples: config.num_samples,
        seed: config.seed,
        kernel_width,
        original_score,
    })
}

/// The seeded mask sequence: the first mask keeps every word; each of the
/// rest removes a uniformly sized uniform subset of the distinct words.
pub fn sample_masks(words: usize, num_samples: usize, seed: u64) -> Vec<Vec<bool>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut masks = Vec::with_capacity(num_samples);
    masks.push(vec![true; words]);
    let mut scratch: Vec<usize> = (0..words).collect();
    for _ in 1..num_samples {
        let removal = rng.random_range(1..=words);
        for i in 0..removal {
            let j = rng.random_range(i..words);
            scratch.swap(i, j);
        }
        let mut mask = vec![true; words];
        for &word in &scratch[..removal] {
            mask[word] = false;
        }
        masks.push(mask);
    }
    masks
}

/// Delete every occurrence of the masked words from the token sequence.
fn realize_mask(tokens: &[&str], distinct_words: &[String], mask: &[bool]) -> String {
    let mut out = String::new();
    for token in tokens {
        let word_index = distinct_words
            .iter()
            .position(|w| w == token)
            .expect("every token is a distinct word");
        if mask[word_index] {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(token);
        }
    }
    out
}

/// Weighted ridge with an unregularized intercept, via weighted centering.
/// The normal system is solved to a residual of at most 1e-10.
fn weighted_ridge(
    masks: &[Vec<bool>],
    columns: &[usize],
    y: &[f64],
    sample_weights: &[f64],
    ridge: f64,
) -> Result<(Vec<f64>, f64)> {
    let p = columns.len();
    let total_weight: f64 = sample_weights.iter().sum();
    if total_weight <= 0.0 {
        return Err(Error::Numerical("all proximity weights vanished".into()));
    }
    let mut x_mean = vec![0.0; p];
    let mut y_mean = 0.0;
    for (mask, (&yi, &wi)) in masks.iter().zip(y.iter().zip(sample_weights.iter())) {
        for (c, &j) in columns.iter().enumerate() {
            if mask[j] {
                x_mean[c] += wi;
            }
        }
        y_mean += wi * yi;
    }
    for m in &mut x_mean {
        *m /= total_weight;
    }
    y_mean /= total_weight;

    let mut a = DenseMatrix::zeros(p, p);
    let mut b = vec![0.0; p];
    for (mask, (&yi, &wi)) in masks.iter().zip(y.iter().zip(sample_weights.iter())) {
        let xc: Vec<f64> = columns
            .iter()
            .enumerate()
            .map(|(c, &j)| (if mask[j] { 1.0 } else { 0.0 }) - x_mean[c])
            .collect();
        let yc = yi - y_mean;
        for r in 0..p {
            let wr = wi * xc[r];
            if wr == 0.0 {
                continue;
            }
            for (c, &xcc) in xc.iter().enumerate().skip(r) {
                a.add(r, c, wr * xcc);
            }
            b[r] += wr * yc;
        }
    }
    for r in 0..p {
        for c in 0..r {
            let v = a.get(c, r);
            a.set(r, c, v);
        }
        a.add(r, r, ridge);
    }

    let mut beta = cholesky_solve(&a, &b)?;
    if residual_inf(&a, &beta, &b) > 1e-10 {
        // One step of iterative refinement.
        let r: Vec<f64> = (0..p)
            .map(|i| {
                b[i] - a
                    .row(i)
                    .iter()
                    .zip(beta.iter())
                    .map(|(m, v)| m * v)
                    .sum::<f64>()
            })
            .collect();
        let correction = cholesky_solve(&a, &r)?;
        for (bi, ci) in beta.iter_mut().zip(correction.iter()) {
            *bi += ci;
        }
        if residual_inf(&a, &beta, &b) > 1e-10 {
            return Err(Error::Numerical(
                "ridge system residual exceeded 1e-10".into(),
            ));
        }
    }

    let intercept = y_mean
        - beta
            .iter()
            .zip(x_mean.iter())
            .map(|(bi, mi)| bi * mi)
            .sum::<f64>();
    Ok((beta, intercept))
}

/// Weighted R² of a fitted local model, clamped to [0, 1].
fn weighted_r2(
    masks: &[Vec<bool>],
    columns: &[usize],
    beta: &[f64],
    intercept: f64,
    y: &[f64],
    sample_weights: &[f64],
) -> f64 {
    let total_weight: f64 = sample_weights.iter().sum();
    let y_mean: f64 = y
        .iter()
        .zip(sample_weights.iter())
        .map(|(&yi, &wi)| wi * yi)
        .sum::<f64>()
        / total_weight;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (mask, (&yi, &wi)) in masks.iter().zip(y.iter().zip(sample_weights.iter())) {
        let fitted: f64 = intercept
            + columns
                .iter()
                .zip(beta.iter())
                .map(|(&j, &b)| if mask[j] { b } else { 0.0 })
                .sum::<f64>();
        ss_res += wi * (yi - fitted) * (yi - fitted);
        ss_tot += wi * (yi - y_mean) * (yi - y_mean);
    }
    if ss_tot <= 1e-18 {
        if ss_res <= 1e-12 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    }
}
