//! Seeded scenario generators with known ground truth.
//!
//! These drive the examples, the CLI `gen` scenarios and the acceptance
//! checks: topic streams for keyword recovery and convergence, ranking
//! windows with planted irrelevant threads, regression panels with known
//! coefficients, Gaussian-increment activity panels, and a full activity
//! corpus with metadata.

mod activity;
mod panel;
mod ranking;
mod stream;

pub use activity::{activity_corpus, ActivityParams};
pub use panel::{coefficient_panel, gaussian_increment_panel, IncrementPanelParams, PanelParams, SyntheticPanel};
pub use ranking::{ranking_scenario, RankingParams, RankingScenario};
pub use stream::{topic_stream, StreamParams, TopicStream};
