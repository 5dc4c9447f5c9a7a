//! Multi-label emotion classification for Bangla social-media text.
//!
//! Everything is built from first principles on a small sparse-vector core:
//!
//! - [`corpus`]: dataset ingestion, Unicode-aware preprocessing, statistics
//!   and deterministic multi-label stratified splits.
//! - [`features`]: whitespace tokenization, n-gram extraction and TF-IDF
//!   vectorization.
//! - [`decomp`]: principal component analysis for dimensionality reduction.
//! - [`classifiers`]: linear SVM, k-NN, CART decision trees, random forests
//!   and AdaBoost, composed into six one-vs-rest emotion classifiers.
//! - [`explain`]: LIME-style local explanations of per-emotion decisions.
//! - [`eval`]: per-label confusion counts and micro/macro/weighted metrics.
//! - [`cli`]: the command implementations behind the `onubhuti` binary.
//!
//! The `examples/` directory is the best starting point: each example is a
//! runnable walkthrough of one capability.

pub mod classifiers;
pub mod cli;
pub mod corpus;
pub mod decomp;
pub mod error;
pub mod eval;
pub mod explain;
pub mod features;
mod linalg;
pub mod persist;

pub use corpus::{Emotion, LabelVector, RawRecord};
pub use error::{Error, Result};
pub use features::SparseVector;
