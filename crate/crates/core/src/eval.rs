//! Multi-label evaluation: per-label confusion counts, precision/recall/F1
//! and micro/macro/weighted aggregation. Every 0/0 ratio is defined as 0.

use serde::{Deserialize, Serialize};

use crate::corpus::{Emotion, LabelVector, EMOTIONS};
use crate::error::{Error, Result};

/// Binary confusion counts for one label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub true_pos: usize,
    pub false_pos: usize,
    pub false_neg: usize,
    pub true_neg: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.true_pos + self.false_pos + self.false_neg + self.true_neg
    }

    /// Gold positives.
    pub fn support(&self) -> usize {
        self.true_pos + self.false_neg
    }

    pub fn accuracy(&self) -> f64 {
        ratio(self.true_pos + self.true_neg, self.total())
    }
}

/// Precision, recall and F1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Aggregation mode over the six labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregateMode {
    Micro,
    Macro,
    Weighted,
}

/// Metrics for one label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelMetrics {
    pub label: Emotion,
    pub counts: ConfusionCounts,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub support: usize,
}

/// The full evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub per_label: Vec<LabelMetrics>,
    pub micro: Prf,
    pub macro_avg: Prf,
    pub weighted: Prf,
    /// Exact-match accuracy over full label vectors; only computed on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset_accuracy: Option<f64>,
}

impl MetricsReport {
    pub fn aggregate(&self, mode: AggregateMode) -> Prf {
        match mode {
            AggregateMode::Micro => self.micro,
            AggregateMode::Macro => self.macro_avg,
            AggregateMode::Weighted => self.weighted,
        }
    }
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// Confusion counts of one label's component across two prediction lists.
pub fn confusion(
    predictions: &[LabelVector],
    gold: &[LabelVector],
    label: Emotion,
) -> Result<ConfusionCounts> {
    if predictions.len() != gold.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            gold: gold.len(),
        });
    }
    let mut counts = ConfusionCounts::default();
    for (p, g) in predictions.iter().zip(gold.iter()) {
        match (p.get(label), g.get(label)) {
            (true, true) => counts.true_pos += 1,
            (true, false) => counts.false_pos += 1,
            (false, true) => counts.false_neg += 1,
            (false, false) => counts.true_neg += 1,
        }
    }
    Ok(counts)
}

/// Precision, recall and F1 of one set of counts.
pub fn prf(counts: &ConfusionCounts) -> Prf {
    let precision = ratio(counts.true_pos, counts.true_pos + counts.false_pos);
    let recall = ratio(counts.true_pos, counts.true_pos + counts.false_neg);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Prf {
        precision,
        recall,
        f1,
    }
}

/// Aggregate six per-label counts: micro pools the counts, macro averages
/// the per-label metrics, weighted weights them by gold-positive support.
pub fn aggregate(per_label: &[ConfusionCounts; 6], mode: AggregateMode) -> Prf {
    match mode {
        AggregateMode::Micro => {
            let mut pooled = ConfusionCounts::default();
            for c in per_label {
                pooled.true_pos += c.true_pos;
                pooled.false_pos += c.false_pos;
                pooled.false_neg += c.false_neg;
                pooled.true_neg += c.true_neg;
            }
            prf(&pooled)
        }
        AggregateMode::Macro => {
            let mut sum = Prf::default();
            for c in per_label {
                let p = prf(c);
                sum.precision += p.precision;
                sum.recall += p.recall;
                sum.f1 += p.f1;
            }
            Prf {
                precision: sum.precision / 6.0,
                recall: sum.recall / 6.0,
                f1: sum.f1 / 6.0,
            }
        }
        AggregateMode::Weighted => {
            let total_support: usize = per_label.iter().map(ConfusionCounts::support).sum();
            if total_support == 0 {
                return Prf::default();
            }
            let mut sum = Prf::default();
            for c in per_label {
                let p = prf(c);
                let w = c.support() as f64;
                sum.precision += w * p.precision;
                sum.recall += w * p.recall;
                sum.f1 += w * p.f1;
            }
            Prf {
                precision: sum.precision / total_support as f64,
                recall: sum.recall / total_support as f64,
                f1: sum.f1 / total_support as f64,
            }
        }
    }
}

/// Evaluate predictions against gold labels across all six emotions.
pub fn evaluate(
    predictions: &[LabelVector],
    gold: &[LabelVector],
    with_subset_accuracy: bool,
) -> Result<MetricsReport> {
    let mut counts = [ConfusionCounts::default(); 6];
    for (slot, &e) in counts.iter_mut().zip(EMOTIONS.iter()) {
        *slot = confusion(predictions, gold, e)?;
    }
    let per_label = EMOTIONS
        .iter()
        .zip(counts.iter())
        .map(|(&label, c)| {
            let p = prf(c);
            LabelMetrics {
                label,
                counts: *c,
                precision: p.precision,
                recall: p.recall,
                f1: p.f1,
                accuracy: c.accuracy(),
                support: c.support(),
            }
        })
        .collect();
    let subset_accuracy = with_subset_accuracy.then(|| {
        ratio(
            predictions
                .iter()
                .zip(gold.iter())
                .filter(|(p, g)| p == g)
                .count(),
            gold.len(),
        )
    });
    Ok(MetricsReport {
        per_label,
        micro: aggregate(&counts, AggregateMode::Micro),
        macro_avg: aggregate(&counts, AggregateMode::Macro),
        weighted: aggregate(&counts, AggregateMode::Weighted),
        subset_accuracy,
    })
}
