//! Forum-activity statistics.
//!
//! Per-course daily series, linear trend fits, trimmed count differences with
//! a Shapiro-Wilk screen and Q-Q data, the pooled panel regressions, the
//! thread-attention comparison and the small-talk moving average.
//!
//! Student-t and normal tail probabilities come from `statrs`, which evaluates
//! them through the regularized incomplete beta and the complementary error
//! function.

mod attention;
mod moving_avg;
mod normality;
mod ols;
mod series;
mod tests_two_sample;

pub use attention::{neighborhood_counts, partition_by_threshold, thread_neighborhood, NeighborhoodRow};
pub use moving_avg::{smalltalk_moving_average, MaDenominator};
pub use normality::{qq_points, qq_points_trimmed, qq_r_squared, shapiro_wilk, ShapiroWilk};
pub use ols::{fit_ols, fit_panel_ols, panel_design, panel_terms, OlsFit, PanelDesign, PanelTarget};
pub use series::{build_all_series, build_series, course_factors, fit_course_trend, trim_and_diff, ActivitySeries, CourseFactors, TrendFit};
pub use tests_two_sample::{mann_whitney, two_sample_tests, welch_t_test, MannWhitney, MwMethod, TwoSampleReport, WelchT};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("design is degenerate: {0}")]
    DegenerateDesign(String),
    #[error("design matrix is rank deficient in columns {0:?}")]
    RankDeficient(Vec<String>),
    #[error("sample of size {0} is too small")]
    SampleTooSmall(usize),
    #[error("sample of size {0} is too large")]
    SampleTooLarge(usize),
    #[error("degenerate group: {0}")]
    DegenerateGroup(String),
    #[error("course {0} has no metadata")]
    MissingMetadata(String),
    #[error("unknown thread {0}")]
    UnknownThread(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
