//! Small-talk classifiers: multinomial Naive Bayes and a linear SVM.
//!
//! Small-talk is the positive class. Every classifier exposes a real-valued
//! score through [`Scorer`]; a document is flagged as small-talk when its
//! score is strictly greater than the threshold θ, so ties go to the
//! course-specific class.

mod eval;
mod features;
mod nb;
mod svm;

pub use eval::{evaluate, roc_sweep, EvalReport};
pub use features::{docs_from_corpus, LabeledDoc, Vocabulary};
pub use nb::{predict_nb, train_nb, NaiveBayes, NbConfig, NbMode, NbModel, NbPrediction, Smoothing};
pub use svm::{svm_objective, train_svm, SvmConfig, SvmModel};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genmodel::SeparatingPlane;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("no training threads of class {class} for {scope}")]
    MissingClass { scope: String, class: &'static str },
    #[error("test set is empty")]
    EmptyTestSet,
    #[error("no per-course model for course {0}")]
    UnknownCourse(String),
    #[error("model file: {0}")]
    Model(String),
}

/// Real-valued small-talk score; larger means more likely small-talk.
pub trait Scorer {
    fn score(&self, doc: &LabeledDoc) -> f64;

    fn is_smalltalk(&self, doc: &LabeledDoc, theta: f64) -> bool {
        self.score(doc) > theta
    }
}

impl Scorer for SeparatingPlane {
    /// `a · W − τ`.
    fn score(&self, doc: &LabeledDoc) -> f64 {
        SeparatingPlane::score(self, &doc.tokens) - self.tau
    }
}

/// A trained classifier as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SavedModel {
    NaiveBayes(NaiveBayes),
    Svm(SvmModel),
}

impl SavedModel {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serialises")
    }

    pub fn from_json(text: &str) -> Result<SavedModel, ClassifyError> {
        serde_json::from_str(text).map_err(|e| ClassifyError::Model(e.to_string()))
    }
}

impl Scorer for SavedModel {
    fn score(&self, doc: &LabeledDoc) -> f64 {
        match self {
            SavedModel::NaiveBayes(m) => m.score(doc),
            SavedModel::Svm(m) => m.score(doc),
        }
    }
}
