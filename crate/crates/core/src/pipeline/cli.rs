use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use super::{run_pipeline, ClassifyAction, Command, PipelineError, RunConfig, StatsAction, TopicsAction};

#[derive(Debug, Parser)]
#[command(name = "forumlens", version, about = "Course forum analytics: generation, classification, keywords, ranking, statistics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Thread corpus (JSON-lines, or CSV by extension).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Course metadata CSV.
    #[arg(long, global = true)]
    pub metadata: Option<PathBuf>,
    #[arg(long, global = true)]
    pub stopwords: Option<PathBuf>,
    /// Leave staff posts out of token counts.
    #[arg(long, global = true)]
    pub exclude_staff: bool,
    /// Restrict per-course work to this course.
    #[arg(long, global = true)]
    pub course: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Generate a synthetic corpus or scenario.
    Gen(GenArgs),
    /// Validate and normalise a corpus.
    Ingest,
    /// Train and evaluate small-talk classifiers.
    Classify {
        #[command(subcommand)]
        action: ClassifySub,
    },
    /// Surprise-weight keywords and their convergence.
    Topics {
        #[command(subcommand)]
        action: TopicsSub,
    },
    /// Rank the query threads of one window with all three rankers.
    Rank(RankArgs),
    /// Top-k differences against tf-idf and HITS over random windows.
    Compare(RankArgs),
    /// Activity statistics.
    Stats {
        #[command(subcommand)]
        action: StatsSub,
    },
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// synthetic | spec | adversarial | activity | ranking
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub vocab: Option<usize>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub threads_per_course: Option<usize>,
    #[arg(long)]
    pub courses: Option<usize>,
    #[arg(long)]
    pub days: Option<usize>,
    /// Vocabulary size of the adversarial construction.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// nb | svm
    #[arg(long)]
    pub classifier: Option<String>,
    /// aggregate | per_course
    #[arg(long)]
    pub mode: Option<String>,
    /// laplace | unit_init
    #[arg(long)]
    pub smoothing: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub epochs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ClassifySub {
    /// Fit a classifier and save it as model.json
    Train(ClassifyArgs),
    /// TPR and FPR of a saved model at one threshold
    Eval(ClassifyArgs),
    /// Threshold sweep of a saved model
    Roc(ClassifyArgs),
}

#[derive(Debug, Args)]
pub struct TopicsArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub warmup: Option<i64>,
    /// Comma-separated background course ids.
    #[arg(long, value_delimiter = ',')]
    pub background: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum TopicsSub {
    /// Top-k surprise-weight keywords per course
    Extract(TopicsArgs),
    /// Day-by-day set difference and Kendall tau of the top-k
    Converge(TopicsArgs),
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub keywords: Option<usize>,
    #[arg(long)]
    pub warmup: Option<i64>,
    #[arg(long)]
    pub query_days: Option<i64>,
    #[arg(long)]
    pub windows: Option<usize>,
    #[arg(long)]
    pub hits_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// y | z | logz
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub trim: Option<f64>,
    #[arg(long)]
    pub threshold: Option<usize>,
    #[arg(long)]
    pub t_days: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// printed | time_aligned
    #[arg(long)]
    pub denominator: Option<String>,
    /// Divisor for raw staff post counts.
    #[arg(long)]
    pub scale_staff: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum StatsSub {
    /// Daily post and small-talk series per course
    Series(StatsArgs),
    /// Per-course least-squares trend
    Trend(StatsArgs),
    /// Pooled OLS of activity on course factors
    Panel(StatsArgs),
    /// Shapiro-Wilk on trimmed daily differences
    Shapiro(StatsArgs),
    /// Thread length against creation-time crowding
    Ttest(StatsArgs),
    /// Small-talk moving average
    MovingAvg(StatsArgs),
}

fn parse_enum<T: DeserializeOwned>(flag: &str, value: &str) -> Result<T, PipelineError> {
    serde_json::from_value(serde_json::Value::String(value.to_string()))
        .map_err(|_| PipelineError::Config(format!("--{flag}: unknown value {value:?}")))
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl Cli {
    /// The subcommand and the merged configuration.
    pub fn resolve(self) -> Result<(Command, RunConfig), PipelineError> {
        let g = self.global;
        let mut c = match &g.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        set(&mut c.seed, g.seed);
        set(&mut c.out, g.out);
        c.input = g.input.or(c.input);
        c.metadata = g.metadata.or(c.metadata);
        c.stopwords = g.stopwords.or(c.stopwords);
        c.course = g.course.or(c.course);
        if g.exclude_staff {
            c.include_staff = false;
        }
        let command = match self.command {
            Sub::Gen(a) => {
                if let Some(s) = a.scenario {
                    c.gen.scenario = parse_enum("scenario", &s)?;
                }
                c.spec = a.spec.or(c.spec);
                set(&mut c.gen.vocab, a.vocab);
                set(&mut c.gen.epsilon, a.epsilon);
                set(&mut c.gen.threads_per_course, a.threads_per_course);
                set(&mut c.gen.courses, a.courses);
                set(&mut c.gen.days, a.days);
                set(&mut c.gen.adversarial_n, a.n);
                Command::Gen
            }
            Sub::Ingest => Command::Ingest,
            Sub::Classify { action } => {
                let (a, act) = match action {
                    ClassifySub::Train(a) => (a, ClassifyAction::Train),
                    ClassifySub::Eval(a) => (a, ClassifyAction::Eval),
                    ClassifySub::Roc(a) => (a, ClassifyAction::Roc),
                };
                c.model = a.model.or(c.model);
                if let Some(v) = a.classifier {
                    c.classify.classifier = parse_enum("classifier", &v)?;
                }
                if let Some(v) = a.mode {
                    c.classify.mode = parse_enum("mode", &v)?;
                }
                if let Some(v) = a.smoothing {
                    c.classify.smoothing = parse_enum("smoothing", &v)?;
                }
                set(&mut c.classify.theta, a.theta);
                set(&mut c.classify.lambda, a.lambda);
                set(&mut c.classify.epochs, a.epochs);
                Command::Classify(act)
            }
            Sub::Topics { action } => {
                let (a, act) = match action {
                    TopicsSub::Extract(a) => (a, TopicsAction::Extract),
                    TopicsSub::Converge(a) => (a, TopicsAction::Converge),
                };
                set(&mut c.topics.k, a.k);
                set(&mut c.topics.warmup, a.warmup);
                set(&mut c.topics.background, a.background);
                Command::Topics(act)
            }
            Sub::Rank(a) => {
                apply_rank(&mut c, a);
                Command::Rank
            }
            Sub::Compare(a) => {
                apply_rank(&mut c, a);
                Command::Compare
            }
            Sub::Stats { action } => {
                let (a, act) = match action {
                    StatsSub::Series(a) => (a, StatsAction::Series),
                    StatsSub::Trend(a) => (a, StatsAction::Trend),
                    StatsSub::Panel(a) => (a, StatsAction::Panel),
                    StatsSub::Shapiro(a) => (a, StatsAction::Shapiro),
                    StatsSub::Ttest(a) => (a, StatsAction::Ttest),
                    StatsSub::MovingAvg(a) => (a, StatsAction::MovingAvg),
                };
                if let Some(v) = a.target {
                    c.stats.target = parse_enum("target", &v)?;
                }
                if let Some(v) = a.denominator {
                    c.stats.denominator = parse_enum("denominator", &v)?;
                }
                set(&mut c.stats.trim, a.trim);
                set(&mut c.stats.threshold, a.threshold);
                set(&mut c.stats.t_days, a.t_days);
                set(&mut c.stats.alpha, a.alpha);
                set(&mut c.stats.staff_scale, a.scale_staff);
                Command::Stats(act)
            }
        };
        Ok((command, c))
    }
}

fn apply_rank(c: &mut RunConfig, a: RankArgs) {
    set(&mut c.rank.alpha, a.alpha);
    set(&mut c.rank.k, a.k);
    set(&mut c.rank.keywords, a.keywords);
    set(&mut c.rank.warmup, a.warmup);
    set(&mut c.rank.query_days, a.query_days);
    set(&mut c.rank.windows, a.windows);
    set(&mut c.rank.hits_tolerance, a.hits_tol);
}

fn limit_threads() -> Result<(), PipelineError> {
    let Ok(value) = std::env::var("FORUMLENS_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| PipelineError::Config(format!("FORUMLENS_THREADS={value:?} is not a positive integer")))?;
    // a pool built earlier in the same process keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
/// Errors are printed to stderr as one JSON object.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return 0;
            }
            eprintln!("{}", PipelineError::Config(e.to_string().trim().to_string()).to_json());
            return 2;
        }
    };
    let result = limit_threads().and_then(|_| cli.resolve()).and_then(|(command, config)| run_pipeline(command, &config).map(|m| (m, config)));
    match result {
        Ok((manifest, config)) => {
            for a in &manifest.artifacts {
                println!("{}", config.out.join(&a.path).display());
            }
            println!("{}", config.out.join("manifest.json").display());
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
