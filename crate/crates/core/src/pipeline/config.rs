use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::classify::{NbMode, Smoothing};
use crate::stats::{MaDenominator, PanelTarget};

/// Everything a run depends on besides its input files. Loaded from JSON,
/// then overridden by command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Thread corpus, JSON-lines or `.csv`.
    pub input: Option<PathBuf>,
    /// Course metadata CSV.
    pub metadata: Option<PathBuf>,
    /// Generative spec JSON for `gen`.
    pub spec: Option<PathBuf>,
    /// Saved classifier for `classify eval|roc`.
    pub model: Option<PathBuf>,
    /// Stopword list; the shipped English list when absent.
    pub stopwords: Option<PathBuf>,
    pub include_staff: bool,
    /// Restricts per-course commands to one course.
    pub course: Option<String>,
    /// Where artifacts go. Not part of the manifest echo.
    #[serde(skip)]
    pub out: PathBuf,
    pub gen: GenConfig,
    pub classify: ClassifyConfig,
    pub topics: TopicsConfig,
    pub rank: RankConfig,
    pub stats: StatsConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            input: None,
            metadata: None,
            spec: None,
            model: None,
            stopwords: None,
            include_staff: true,
            course: None,
            out: PathBuf::from("out"),
            gen: GenConfig::default(),
            classify: ClassifyConfig::default(),
            topics: TopicsConfig::default(),
            rank: RankConfig::default(),
            stats: StatsConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// Mixture-model corpus from `vocab`, `epsilon`, `support` and `p`.
    Synthetic,
    /// Corpus sampled from the spec file.
    Spec,
    /// Two-course construction on which per-course Naive Bayes fails.
    Adversarial,
    /// Declining activity with metadata, for the statistics commands.
    Activity,
    /// Course window with planted irrelevant threads, for `rank`/`compare`.
    Ranking,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    pub scenario: Scenario,
    pub vocab: usize,
    pub epsilon: f64,
    pub support: usize,
    /// Small-talk probability per course.
    pub p: Vec<f64>,
    pub thread_len: usize,
    pub threads_per_course: usize,
    pub threads_per_day: usize,
    pub courses: usize,
    pub days: usize,
    pub adversarial_n: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            scenario: Scenario::Synthetic,
            vocab: 2000,
            epsilon: 0.3,
            support: 50,
            p: vec![0.2, 0.5, 0.8],
            thread_len: 100,
            threads_per_course: 300,
            threads_per_day: 10,
            courses: 12,
            days: 56,
            adversarial_n: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classifier {
    Nb,
    Svm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    pub classifier: Classifier,
    pub mode: NbMode,
    pub smoothing: Smoothing,
    pub theta: f64,
    pub lambda: f64,
    pub epochs: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            classifier: Classifier::Nb,
            mode: NbMode::Aggregate,
            smoothing: Smoothing::Laplace,
            theta: 0.0,
            lambda: 1e-4,
            epochs: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopicsConfig {
    pub k: usize,
    pub warmup: i64,
    /// Courses forming the background; empty means all other courses.
    pub background: Vec<String>,
}

impl Default for TopicsConfig {
    fn default() -> Self {
        TopicsConfig {
            k: 50,
            warmup: 10,
            background: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RankConfig {
    pub alpha: f64,
    /// Size of the compared top sets.
    pub k: usize,
    /// Keywords used by the topical ranker.
    pub keywords: usize,
    /// Warmup days for `rank`.
    pub warmup: i64,
    pub query_days: i64,
    /// `compare` uses warmups `first_warmup` plus `windows` random days up to `last_warmup`.
    pub first_warmup: i64,
    pub last_warmup: i64,
    pub windows: usize,
    pub hits_tolerance: f64,
    pub hits_max_iters: usize,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            alpha: 0.96,
            k: 15,
            keywords: 50,
            warmup: 12,
            query_days: 2,
            first_warmup: 10,
            last_warmup: 30,
            windows: 5,
            hits_tolerance: 1e-10,
            hits_max_iters: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsConfig {
    pub target: PanelTarget,
    pub trim: f64,
    /// Significance level of the normality screen.
    pub shapiro_level: f64,
    pub threshold: usize,
    pub t_days: f64,
    pub alpha: f64,
    pub denominator: MaDenominator,
    /// Divisor applied to raw staff post counts.
    pub staff_scale: f64,
}

impl Default for StatsConfig {
    fn default() -> Self {
        StatsConfig {
            target: PanelTarget::Y,
            trim: 0.03,
            shapiro_level: 0.01,
            threshold: 140,
            t_days: 1.0,
            alpha: 0.99,
            denominator: MaDenominator::Printed,
            staff_scale: 100.0,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, PipelineError> {
        serde_json::from_str(text).map_err(|e| PipelineError::Config(format!("config JSON: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<RunConfig, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::Config(format!("cannot read config {}: {e}", path.display())))?;
        RunConfig::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Range checks on every numeric parameter.
    pub fn validate(&self) -> Result<(), PipelineError> {
        let mut bad = Vec::new();
        let unit = |x: f64| x > 0.0 && x < 1.0;
        let g = &self.gen;
        if !unit(g.epsilon) {
            bad.push(format!("gen.epsilon {} not in (0,1)", g.epsilon));
        }
        if g.p.is_empty() || g.p.iter().any(|p| !(0.0..=1.0).contains(p)) {
            bad.push("gen.p must be a nonempty list of probabilities".to_string());
        }
        if g.vocab == 0 || g.support == 0 || g.thread_len == 0 || g.threads_per_day == 0 || g.courses == 0 || g.days < 2 {
            bad.push("gen sizes must be positive (days >= 2)".to_string());
        }
        let c = &self.classify;
        if !(c.lambda > 0.0 && c.lambda.is_finite()) || c.epochs == 0 || !c.theta.is_finite() {
            bad.push("classify.lambda must be positive, epochs nonzero and theta finite".to_string());
        }
        if self.topics.k == 0 || self.topics.warmup < 1 {
            bad.push("topics.k and topics.warmup must be positive".to_string());
        }
        let r = &self.rank;
        if !unit(r.alpha) {
            bad.push(format!("rank.alpha {} not in (0,1)", r.alpha));
        }
        if r.k == 0 || r.keywords == 0 || r.warmup < 1 || r.query_days < 1 || r.first_warmup < 1 || r.last_warmup < r.first_warmup {
            bad.push("rank sizes must be positive and first_warmup <= last_warmup".to_string());
        }
        if !(r.hits_tolerance > 0.0) || r.hits_max_iters == 0 {
            bad.push("rank.hits_tolerance and hits_max_iters must be positive".to_string());
        }
        let s = &self.stats;
        if !(0.0..0.5).contains(&s.trim) {
            bad.push(format!("stats.trim {} not in [0, 0.5)", s.trim));
        }
        if !unit(s.shapiro_level) || !unit(s.alpha) {
            bad.push("stats.shapiro_level and stats.alpha must lie in (0,1)".to_string());
        }
        if !(s.t_days >= 0.0) || !(s.staff_scale > 0.0) {
            bad.push("stats.t_days must be nonnegative and staff_scale positive".to_string());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(PipelineError::Config(bad.join("; ")))
        }
    }
}
