//! Run configuration, manifests and artifact writing behind the `forumlens`
//! binary.
//!
//! A run reads a [`RunConfig`] (JSON file plus flag overrides), writes its
//! CSV/JSON artifacts into one output directory and finishes with
//! `manifest.json`: the config echo, SHA-256 digests of every input and
//! artifact, and the tool version. Runs are deterministic given the config
//! and inputs.

mod cli;
mod config;
mod output;
mod run;

pub use cli::{main_with_args, Cli};
pub use config::{Classifier, ClassifyConfig, GenConfig, RankConfig, RunConfig, Scenario, StatsConfig, TopicsConfig};
pub use output::{hash_file, sha256_hex, FileDigest, Manifest, OutDir};
pub use run::{run_pipeline, ClassifyAction, Command, StatsAction, TopicsAction};

use thiserror::Error;

use crate::classify::ClassifyError;
use crate::corpus::CorpusError;
use crate::genmodel::GenError;
use crate::ranking::RankingError;
use crate::stats::StatsError;
use crate::topics::TopicsError;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PipelineError {
    /// 2 for configuration errors, 3 for bad or missing data, 4 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 2,
            PipelineError::Data(_) | PipelineError::Io(_) => 3,
            PipelineError::Numerical(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PipelineError::Config(_) => "config",
            PipelineError::Data(_) => "data",
            PipelineError::Numerical(_) => "numerical",
            PipelineError::Io(_) => "io",
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        })
        .to_string()
    }
}

impl From<CorpusError> for PipelineError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io(io) => PipelineError::Io(io),
            other => PipelineError::Data(other.to_string()),
        }
    }
}

impl From<GenError> for PipelineError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::InvalidSpec(_) | GenError::NoSuchCourse { .. } => PipelineError::Config(e.to_string()),
            GenError::Corpus(c) => c.into(),
        }
    }
}

impl From<ClassifyError> for PipelineError {
    fn from(e: ClassifyError) -> Self {
        PipelineError::Data(e.to_string())
    }
}

impl From<TopicsError> for PipelineError {
    fn from(e: TopicsError) -> Self {
        PipelineError::Data(e.to_string())
    }
}

impl From<RankingError> for PipelineError {
    fn from(e: RankingError) -> Self {
        match e {
            RankingError::InvalidWindow(_) | RankingError::InvalidAlpha(_) => PipelineError::Config(e.to_string()),
            other => PipelineError::Data(other.to_string()),
        }
    }
}

impl From<StatsError> for PipelineError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::DegenerateDesign(_) | StatsError::RankDeficient(_) => PipelineError::Numerical(e.to_string()),
            StatsError::InvalidParameter(_) => PipelineError::Config(e.to_string()),
            other => PipelineError::Data(other.to_string()),
        }
    }
}
