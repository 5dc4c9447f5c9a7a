//! Deterministic multi-label stratified train/validation/test splitting.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::{RawRecord, EMOTIONS};
use crate::error::{Error, Result};

/// A partition of the record-id set into train/validation/test, together
/// with the seed and ratios that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSplit {
    pub seed: u64,
    pub ratios: [f64; 3],
    pub train_ids: Vec<u32>,
    pub validation_ids: Vec<u32>,
    pub test_ids: Vec<u32>,
}

impl DatasetSplit {
    /// The three id lists in train/validation/test order.
    pub fn subsets(&self) -> [&[u32]; 3] {
        [&self.train_ids, &self.validation_ids, &self.test_ids]
    }

    pub fn len(&self) -> usize {
        self.train_ids.len() + self.validation_ids.len() + self.test_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Split plus any stratification warnings.
#[derive(Debug, Clone)]
pub struct SplitReport {
    pub split: DatasetSplit,
    pub warnings: Vec<String>,
}

/// Names of the three subsets, in split order.
pub const SUBSET_NAMES: [&str; 3] = ["train", "validation", "test"];

/// Iterative multi-label stratification with fixed subset sizes.
///
/// Subset sizes are pinned by largest-remainder rounding of `ratios × n`,
/// then records are placed rarest label first: each record goes to the
/// subset with the greatest remaining demand for that label among subsets
/// that still have capacity. Ties fall back to the subset with the most
/// remaining capacity, then to a seeded draw. Unlabeled records fill
/// remaining capacity at the end.
pub fn stratified_split(records: &[RawRecord], ratios: [f64; 3], seed: u64) -> Result<SplitReport> {
    if records.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if ratios.iter().any(|&r| r <= 0.0) || (ratios.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidRatios(ratios));
    }

    let n = records.len();
    let targets = apportion(n, &ratios);
    let mut capacity = targets;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);

    // Remaining per-label demand of each subset, in positives.
    let positives: Vec<Vec<usize>> = EMOTIONS
        .iter()
        .map(|&e| {
            (0..n)
                .filter(|&i| records[i].labels.get(e))
                .collect::<Vec<usize>>()
        })
        .collect();
    let mut demand = [[0.0f64; 3]; 6];
    for (j, recs) in positives.iter().enumerate() {
        for s in 0..3 {
            demand[j][s] = ratios[s] * recs.len() as f64;
        }
    }

    let mut warnings = Vec::new();
    for (j, recs) in positives.iter().enumerate() {
        if !recs.is_empty() && recs.len() < 3 {
            warnings.push(format!(
                "label {:?} has only {} positive record(s), fewer than the 3 subsets; \
                 placement is best-effort",
                EMOTIONS[j].name(),
                recs.len()
            ));
        }
    }

    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut remaining: Vec<usize> = positives.iter().map(|r| r.len()).collect();

    loop {
        // Rarest label with unassigned positives first; ties keep canonical order.
        let next = (0..6)
            .filter(|&j| remaining[j] > 0)
            .min_by_key(|&j| remaining[j]);
        let Some(j) = next else { break };
        let mut batch: Vec<usize> = positives[j]
            .iter()
            .copied()
            .filter(|&i| assignment[i].is_none())
            .collect();
        // Visit order is seeded so different seeds explore different
        // resamplings; placement quality comes from the demand counters.
        batch.shuffle(&mut rng);
        for i in batch {
            let s = pick_subset(&demand[j], &capacity, &mut rng);
            place(i, s, records, &mut assignment, &mut capacity, &mut demand);
        }
        for (j, recs) in positives.iter().enumerate() {
            remaining[j] = recs.iter().filter(|&&i| assignment[i].is_none()).count();
        }
    }

    // Records with no labels fill whatever capacity remains.
    let mut unlabeled: Vec<usize> = (0..n).filter(|&i| assignment[i].is_none()).collect();
    unlabeled.shuffle(&mut rng);
    for i in unlabeled {
        let max_cap = *capacity.iter().max().expect("three subsets");
        let tied: Vec<usize> = (0..3).filter(|&s| capacity[s] == max_cap).collect();
        let s = tied[rng.random_range(0..tied.len())];
        place(i, s, records, &mut assignment, &mut capacity, &mut demand);
    }

    let mut subsets: [Vec<u32>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, slot) in assignment.iter().enumerate() {
        let s = slot.expect("every record was assigned");
        subsets[s].push(records[i].id);
    }
    for ids in &mut subsets {
        ids.sort_unstable();
    }
    let [train_ids, validation_ids, test_ids] = subsets;
    Ok(SplitReport {
        split: DatasetSplit {
            seed,
            ratios,
            train_ids,
            validation_ids,
            test_ids,
        },
        warnings,
    })
}

/// Largest-remainder apportionment of `n` into three integer targets.
fn apportion(n: usize, ratios: &[f64; 3]) -> [usize; 3] {
    let mut targets = [0usize; 3];
    let mut fractions = [(0.0f64, 0usize); 3];
    let mut assigned = 0;
    for s in 0..3 {
        let exact = ratios[s] * n as f64;
        targets[s] = exact.floor() as usize;
        assigned += targets[s];
        fractions[s] = (exact - exact.floor(), s);
    }
    // Largest fractional part first; ties go to the earlier subset.
    fractions.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    for &(_, s) in fractions.iter().take(n - assigned) {
        targets[s] += 1;
    }
    targets
}

fn pick_subset(demand: &[f64; 3], capacity: &[usize; 3], rng: &mut ChaCha20Rng) -> usize {
    let open: Vec<usize> = (0..3).filter(|&s| capacity[s] > 0).collect();
    debug_assert!(!open.is_empty(), "capacities sum to the record count");
    let best = open
        .iter()
        .map(|&s| demand[s])
        .fold(f64::NEG_INFINITY, f64::max);
    let by_demand: Vec<usize> = open.into_iter().filter(|&s| demand[s] == best).collect();
    if by_demand.len() == 1 {
        return by_demand[0];
    }
    let max_cap = by_demand.iter().map(|&s| capacity[s]).max().unwrap();
    let tied: Vec<usize> = by_demand
        .into_iter()
        .filter(|&s| capacity[s] == max_cap)
        .collect();
    tied[rng.random_range(0..tied.len())]
}

fn place(
    i: usize,
    s: usize,
    records: &[RawRecord],
    assignment: &mut [Option<usize>],
    capacity: &mut [usize; 3],
    demand: &mut [[f64; 3]; 6],
) {
    assignment[i] = Some(s);
    capacity[s] -= 1;
    for (j, &emotion) in EMOTIONS.iter().enumerate() {
        if records[i].labels.get(emotion) {
            demand[j][s] -= 1.0;
        }
    }
}
