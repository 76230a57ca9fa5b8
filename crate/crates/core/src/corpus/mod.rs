//! Thread corpora: data model, ingestion, tokenization and unigram models.

mod ingest;
mod model;
mod tokenize;
mod unigram;

pub use ingest::{
    attach_metadata, ingest_corpus, read_corpus, read_metadata, write_corpus_csv,
    write_corpus_jsonl, write_metadata_csv, CorpusFormat, CourseMetadata,
};
pub use model::{Category, Corpus, Course, Label, Post, Thread};
pub use tokenize::{thread_tokens, tokenize, StopWords, TokenOptions};
pub use unigram::UnigramModel;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("thread {thread_id}: {reason}")]
    InvariantViolation { thread_id: String, reason: String },
    #[error("course {course_id}: {reason}")]
    CourseInvariant { course_id: String, reason: String },
    #[error("unigram model needs at least one token")]
    EmptyCorpus,
    #[error("invalid unigram masses: {0}")]
    InvalidMasses(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
