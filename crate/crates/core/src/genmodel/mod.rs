//! Mixture model of discussion threads.
//!
//! A thread of course `i` is small-talk with probability `p_i`. Its words are
//! drawn i.i.d. from `D0 = (1-ε)B + εT0` if it is small-talk and from
//! `D1(i) = (1-ε)B + εT_i` otherwise, where `B` is a near-uniform background
//! distribution over the vocabulary and the topic supports are pairwise
//! disjoint.

mod adversarial;
mod plane;
mod sampler;
mod spec;

pub use adversarial::{adversarial_spec, AdversarialParams, AdversarialSpec};
pub use plane::{separating_plane, SeparatingPlane};
pub use sampler::{sample_corpus, sample_thread, CorpusLayout, SampledThread, ThreadSampler};
pub use spec::{word_name, GenerativeSpec, SpecBounds, SyntheticParams, TopicProfile};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generative spec: {0}")]
    InvalidSpec(String),
    #[error("course index {index} out of range ({courses} courses)")]
    NoSuchCourse { index: usize, courses: usize },
    #[error(transparent)]
    Corpus(#[from] crate::corpus::CorpusError),
}
