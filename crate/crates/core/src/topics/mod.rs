//! Surprise-weight keyword extraction and convergence diagnostics.
//!
//! γ(w) = p_E(w)·√n / √p_D(w), where `E` is the course-specific empirical
//! distribution, `D` the distribution of background plus course text and `n`
//! the number of background tokens. Words are ranked by γ descending with
//! lexicographic tie-breaking.

mod converge;
mod kendall;
mod keywords;

pub use converge::{background_model, convergence_series, daily_batches, extract_course_keywords, ConvergencePoint, KeywordConfig};
pub use kendall::{aligned_kendall_tau, kendall_distance, normalized_kendall_tau};
pub use keywords::{surprise_weights, top_k, topk_set_difference, KeywordRanking};

use thiserror::Error;

use crate::corpus::CorpusError;

#[derive(Debug, Error)]
pub enum TopicsError {
    #[error("rankings are not permutations of the same word set: {0}")]
    DomainMismatch(String),
    #[error("unknown course {0}")]
    UnknownCourse(String),
    #[error("background token count must be positive")]
    EmptyBackground,
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}
