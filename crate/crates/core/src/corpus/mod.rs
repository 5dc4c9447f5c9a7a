//! The labeled comment corpus: records, preprocessing, ingestion,
//! statistics and deterministic stratified splitting.

mod load;
mod preprocess;
mod split;
mod stats;
pub mod synth;

pub use load::{load_dataset, DatasetSchema, IngestReport, RejectedRow};
pub use preprocess::preprocess;
pub use split::{stratified_split, DatasetSplit, SplitReport, SUBSET_NAMES};
pub use stats::{compute_stats, CorpusStats, MeanStd};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The six emotion classes, in the canonical order used everywhere:
/// serialization, metric aggregation and one-vs-rest model layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emotion {
    Love,
    Joy,
    Surprise,
    Anger,
    Sadness,
    Fear,
}

/// Canonical emotion order.
pub const EMOTIONS: [Emotion; 6] = [
    Emotion::Love,
    Emotion::Joy,
    Emotion::Surprise,
    Emotion::Anger,
    Emotion::Sadness,
    Emotion::Fear,
];

impl Emotion {
    /// Position in the canonical order.
    pub fn index(self) -> usize {
        match self {
            Emotion::Love => 0,
            Emotion::Joy => 1,
            Emotion::Surprise => 2,
            Emotion::Anger => 3,
            Emotion::Sadness => 4,
            Emotion::Fear => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Love => "love",
            Emotion::Joy => "joy",
            Emotion::Surprise => "surprise",
            Emotion::Anger => "anger",
            Emotion::Sadness => "sadness",
            Emotion::Fear => "fear",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        EMOTIONS
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }
}

impl std::fmt::Display for Emotion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One boolean per emotion class. A record may carry zero to six labels.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelVector {
    pub love: bool,
    pub joy: bool,
    pub surprise: bool,
    pub anger: bool,
    pub sadness: bool,
    pub fear: bool,
}

impl LabelVector {
    pub fn new(flags: [bool; 6]) -> Self {
        Self {
            love: flags[0],
            joy: flags[1],
            surprise: flags[2],
            anger: flags[3],
            sadness: flags[4],
            fear: flags[5],
        }
    }

    /// A vector with exactly one emotion set.
    pub fn only(emotion: Emotion) -> Self {
        let mut v = Self::default();
        v.set(emotion, true);
        v
    }

    pub fn get(&self, emotion: Emotion) -> bool {
        match emotion {
            Emotion::Love => self.love,
            Emotion::Joy => self.joy,
            Emotion::Surprise => self.surprise,
            Emotion::Anger => self.anger,
            Emotion::Sadness => self.sadness,
            Emotion::Fear => self.fear,
        }
    }

    pub fn set(&mut self, emotion: Emotion, value: bool) {
        match emotion {
            Emotion::Love => self.love = value,
            Emotion::Joy => self.joy = value,
            Emotion::Surprise => self.surprise = value,
            Emotion::Anger => self.anger = value,
            Emotion::Sadness => self.sadness = value,
            Emotion::Fear => self.fear = value,
        }
    }

    /// Flags in canonical order.
    pub fn flags(&self) -> [bool; 6] {
        [
            self.love,
            self.joy,
            self.surprise,
            self.anger,
            self.sadness,
            self.fear,
        ]
    }

    /// Number of set labels.
    pub fn count(&self) -> usize {
        self.flags().iter().filter(|&&b| b).count()
    }

    /// Emotions whose flag is set, in canonical order.
    pub fn emotions(&self) -> Vec<Emotion> {
        EMOTIONS.into_iter().filter(|&e| self.get(e)).collect()
    }
}

/// One ingested comment: raw text kept verbatim, labels, optional source tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    /// Stable identifier: the 0-based data-row index at ingestion.
    pub id: u32,
    pub text: String,
    pub labels: LabelVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub platform: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<String>,
}

impl RawRecord {
    pub fn new(id: u32, text: impl Into<String>, labels: LabelVector) -> Self {
        Self {
            id,
            text: text.into(),
            labels,
            platform: None,
            topic: None,
        }
    }
}
