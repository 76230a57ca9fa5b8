//! Analytics for course discussion forums.
//!
//! The crate is organised around the life of a thread corpus:
//!
//! - [`corpus`]: data model, JSON-lines/CSV ingestion, tokenization and
//!   empirical unigram distributions.
//! - [`genmodel`]: the mixture model of small-talk and course-specific
//!   threads, including the two-course construction on which Naive Bayes
//!   fails while a linear separator succeeds.
//! - [`classify`]: multinomial Naive Bayes (aggregate and per-course) and a
//!   linear SVM trained with Pegasos-style SGD, plus TPR/FPR evaluation.
//! - [`topics`]: surprise-weight keyword extraction and its convergence
//!   diagnostics (top-k churn, normalized Kendall tau).
//! - [`ranking`]: keyword-weighted relevance ranking with tf-idf and HITS
//!   baselines and a top-k difference harness.
//! - [`stats`]: activity series, OLS panel models, Shapiro-Wilk, Welch and
//!   Mann-Whitney tests, thread-attention counts and the small-talk moving
//!   average.
//! - [`synth`]: seeded scenario generators used by the examples, the CLI and
//!   the acceptance suite.
//! - [`pipeline`]: run configuration, manifests and CSV emission behind the
//!   `forumlens` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod classify;
pub mod corpus;
pub mod genmodel;
pub mod pipeline;
pub mod ranking;
pub mod rng;
pub mod stats;
pub mod synth;
pub mod topics;

pub use corpus::{Corpus, Course, Label, Post, Thread, UnigramModel};
pub use genmodel::GenerativeSpec;

/// Seconds in one day; day indices are computed in whole UTC days.
pub const SECONDS_PER_DAY: i64 = 86_400;
