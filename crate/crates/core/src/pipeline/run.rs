use std::collections::BTreeMap;
use std::fs::File;

use rayon::prelude::*;
use serde::Serialize;

use super::output::{hash_file, FileDigest, Manifest, OutDir};
use super::{Classifier, PipelineError, RunConfig, Scenario};
use crate::classify::{
    docs_from_corpus, evaluate, roc_sweep, train_nb, train_svm, NbConfig, SavedModel, SvmConfig, Vocabulary,
};
use crate::corpus::{
    attach_metadata, ingest_corpus, read_metadata, write_corpus_jsonl, write_metadata_csv, Corpus, CorpusFormat, Course,
    CourseMetadata, Label, StopWords, TokenOptions,
};
use crate::genmodel::{adversarial_spec, sample_corpus, AdversarialParams, CorpusLayout, GenerativeSpec, SyntheticParams};
use crate::ranking::{
    compare_window, label_relevance, query_windows, rank_window, ComparisonConfig, RankWindow, RankedList,
};
use crate::stats::{
    build_all_series, course_factors, fit_course_trend, fit_panel_ols, neighborhood_counts, partition_by_threshold,
    qq_points, shapiro_wilk, smalltalk_moving_average, trim_and_diff, two_sample_tests, PanelTarget,
};
use crate::synth::{activity_corpus, ranking_scenario, ActivityParams, RankingParams};
use crate::topics::{background_model, convergence_series, daily_batches, extract_course_keywords, KeywordConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyAction {
    Train,
    Eval,
    Roc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopicsAction {
    Extract,
    Converge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatsAction {
    Series,
    Trend,
    Panel,
    Shapiro,
    Ttest,
    MovingAvg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gen,
    Ingest,
    Classify(ClassifyAction),
    Topics(TopicsAction),
    Rank,
    Compare,
    Stats(StatsAction),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::Ingest => "ingest",
            Command::Classify(ClassifyAction::Train) => "classify train",
            Command::Classify(ClassifyAction::Eval) => "classify eval",
            Command::Classify(ClassifyAction::Roc) => "classify roc",
            Command::Topics(TopicsAction::Extract) => "topics extract",
            Command::Topics(TopicsAction::Converge) => "topics converge",
            Command::Rank => "rank",
            Command::Compare => "compare",
            Command::Stats(StatsAction::Series) => "stats series",
            Command::Stats(StatsAction::Trend) => "stats trend",
            Command::Stats(StatsAction::Panel) => "stats panel",
            Command::Stats(StatsAction::Shapiro) => "stats shapiro",
            Command::Stats(StatsAction::Ttest) => "stats ttest",
            Command::Stats(StatsAction::MovingAvg) => "stats moving-avg",
        }
    }
}

struct Run<'a> {
    config: &'a RunConfig,
    out: OutDir,
    inputs: Vec<FileDigest>,
}

/// Runs one subcommand, writing its artifacts and `manifest.json` under
/// `config.out`.
pub fn run_pipeline(command: Command, config: &RunConfig) -> Result<Manifest, PipelineError> {
    config.validate()?;
    let mut run = Run {
        config,
        out: OutDir::create(&config.out)?,
        inputs: Vec::new(),
    };
    match command {
        Command::Gen => run.gen()?,
        Command::Ingest => run.ingest()?,
        Command::Classify(a) => run.classify(a)?,
        Command::Topics(TopicsAction::Extract) => run.topics_extract()?,
        Command::Topics(TopicsAction::Converge) => run.topics_converge()?,
        Command::Rank => run.rank()?,
        Command::Compare => run.compare()?,
        Command::Stats(a) => run.stats(a)?,
    }
    let Run { out, inputs, .. } = run;
    out.finish(command.name(), config, inputs)
}

impl Run<'_> {
    fn token_options(&mut self) -> Result<TokenOptions, PipelineError> {
        let stopwords = match &self.config.stopwords {
            Some(path) => {
                self.inputs.push(hash_file(path)?);
                StopWords::from_file(path).map_err(|e| PipelineError::Data(format!("stopwords {}: {e}", path.display())))?
            }
            None => StopWords::english(),
        };
        Ok(TokenOptions {
            stopwords,
            include_staff: self.config.include_staff,
        })
    }

    fn corpus(&mut self) -> Result<Corpus, PipelineError> {
        let path = self
            .config
            .input
            .clone()
            .ok_or_else(|| PipelineError::Config("this command needs --input".into()))?;
        self.inputs.push(hash_file(&path)?);
        let mut corpus = ingest_corpus(&path, CorpusFormat::from_path(&path))?;
        if let Some(meta_path) = self.config.metadata.clone() {
            self.inputs.push(hash_file(&meta_path)?);
            let meta = read_metadata(File::open(&meta_path)?)?;
            attach_metadata(&mut corpus, meta)?;
        }
        Ok(corpus)
    }

    fn selected<'c>(&self, corpus: &'c Corpus) -> Result<Vec<&'c Course>, PipelineError> {
        match &self.config.course {
            Some(id) => Ok(vec![corpus
                .course(id)
                .ok_or_else(|| PipelineError::Data(format!("unknown course {id}")))?]),
            None => Ok(corpus.courses.iter().filter(|c| !c.threads.is_empty()).collect()),
        }
    }

    fn write_corpus(&mut self, corpus: &Corpus) -> Result<(), PipelineError> {
        let mut bytes = Vec::new();
        write_corpus_jsonl(corpus, &mut bytes)?;
        self.out.write("corpus.jsonl", &bytes)
    }

    fn gen(&mut self) -> Result<(), PipelineError> {
        let g = &self.config.gen;
        let seed = self.config.seed;
        let layout = CorpusLayout {
            start_date: 0,
            threads_per_day: g.threads_per_day,
        };
        match g.scenario {
            Scenario::Synthetic | Scenario::Spec => {
                let spec = if g.scenario == Scenario::Spec {
                    let path = self
                        .config
                        .spec
                        .clone()
                        .ok_or_else(|| PipelineError::Config("scenario spec needs --spec".into()))?;
                    self.inputs.push(hash_file(&path)?);
                    let text = std::fs::read_to_string(&path)?;
                    let mut spec = GenerativeSpec::from_json(&text)?;
                    spec.seed = seed;
                    spec
                } else {
                    GenerativeSpec::synthetic(&SyntheticParams {
                        n: g.vocab,
                        epsilon: g.epsilon,
                        support: g.support,
                        p: g.p.clone(),
                        s: g.thread_len,
                        seed,
                        ..Default::default()
                    })?
                };
                let counts = vec![g.threads_per_course; spec.num_courses()];
                let corpus = sample_corpus(&spec, &counts, layout)?;
                self.out.write("spec.json", format!("{}\n", spec.to_json()).as_bytes())?;
                self.write_corpus(&corpus)
            }
            Scenario::Adversarial => {
                let adv = adversarial_spec(
                    g.adversarial_n,
                    AdversarialParams {
                        epsilon: g.epsilon,
                        support: g.support,
                        seed,
                        ..Default::default()
                    },
                )?;
                let corpus = sample_corpus(&adv.spec, &adv.training_counts, layout)?;
                self.out.write("spec.json", format!("{}\n", adv.spec.to_json()).as_bytes())?;
                self.write_corpus(&corpus)
            }
            Scenario::Activity => {
                let corpus = activity_corpus(&ActivityParams {
                    courses: g.courses,
                    days: g.days,
                    vocab: g.vocab,
                    seed,
                    ..Default::default()
                })?;
                let meta: Vec<CourseMetadata> = corpus.courses.iter().filter_map(|c| c.metadata.clone()).collect();
                let mut bytes = Vec::new();
                write_metadata_csv(&meta, &mut bytes)?;
                self.write_corpus(&corpus)?;
                self.out.write("metadata.csv", &bytes)
            }
            Scenario::Ranking => {
                let scenario = ranking_scenario(&RankingParams {
                    n: g.vocab,
                    epsilon: g.epsilon,
                    support: g.support,
                    thread_len: g.thread_len,
                    // long enough for every window `compare` may draw
                    window: RankWindow::new(self.config.rank.last_warmup, self.config.rank.query_days)?,
                    seed,
                    ..Default::default()
                })?;
                #[derive(Serialize)]
                struct Row<'a> {
                    thread_id: &'a str,
                    irrelevant: bool,
                }
                let truth: BTreeMap<&String, &bool> = scenario.irrelevant.iter().collect();
                self.write_corpus(&scenario.corpus)?;
                self.out.csv(
                    "relevance.csv",
                    truth.into_iter().map(|(id, &irrelevant)| Row { thread_id: id, irrelevant }),
                )
            }
        }
    }

    fn ingest(&mut self) -> Result<(), PipelineError> {
        let corpus = self.corpus()?;
        #[derive(Serialize)]
        struct Row<'a> {
            course_id: &'a str,
            category: &'a str,
            threads: usize,
            posts: usize,
            smalltalk: usize,
            unlabeled: usize,
        }
        let rows: Vec<Row> = corpus
            .courses
            .iter()
            .map(|c| Row {
                course_id: &c.course_id,
                category: c.category.as_str(),
                threads: c.threads.len(),
                posts: c.num_posts(),
                smalltalk: c.threads.iter().filter(|t| t.label() == Label::SmallTalk).count(),
                unlabeled: c.threads.iter().filter(|t| t.label() == Label::Unlabeled).count(),
            })
            .collect();
        self.out.csv("courses.csv", rows)?;
        self.write_corpus(&corpus)
    }

    fn classify(&mut self, action: ClassifyAction) -> Result<(), PipelineError> {
        let corpus = self.corpus()?;
        let options = self.token_options()?;
        let mut docs = docs_from_corpus(&corpus, &options);
        if let Some(id) = &self.config.course {
            docs.retain(|d| &d.course_id == id);
        }
        let c = &self.config.classify;
        match action {
            ClassifyAction::Train => {
                let model = match c.classifier {
                    Classifier::Nb => SavedModel::NaiveBayes(train_nb(
                        &docs,
                        &NbConfig {
                            mode: c.mode,
                            smoothing: c.smoothing,
                            vocabulary: None,
                        },
                    )?),
                    Classifier::Svm => SavedModel::Svm(train_svm(
                        &docs,
                        Vocabulary::from_docs(&docs),
                        &SvmConfig {
                            lambda: c.lambda,
                            epochs: c.epochs,
                            seed: self.config.seed,
                        },
                    )?),
                };
                let report = evaluate(&model, &docs, c.theta)?;
                self.out.write("model.json", format!("{}\n", model.to_json()).as_bytes())?;
                self.out.csv("train_eval.csv", [report])
            }
            ClassifyAction::Eval | ClassifyAction::Roc => {
                let path = self
                    .config
                    .model
                    .clone()
                    .ok_or_else(|| PipelineError::Config("this command needs --model".into()))?;
                self.inputs.push(hash_file(&path)?);
                let model = SavedModel::from_json(&std::fs::read_to_string(&path)?)?;
                if action == ClassifyAction::Eval {
                    let report = evaluate(&model, &docs, c.theta)?;
                    self.out.csv("eval.csv", [report])
                } else {
                    let sweep = roc_sweep(&model, &docs)?;
                    self.out.csv("roc.csv", sweep)
                }
            }
        }
    }

    fn keyword_config(&mut self, k: usize, warmup: i64) -> Result<KeywordConfig, PipelineError> {
        Ok(KeywordConfig {
            k,
            warmup_days: warmup,
            background_courses: self.config.topics.background.clone(),
            tokens: self.token_options()?,
        })
    }

    fn topics_extract(&mut self) -> Result<(), PipelineError> {
        let corpus = self.corpus()?;
        let kw = self.keyword_config(self.config.topics.k, self.config.topics.warmup)?;
        let courses = self.selected(&corpus)?;
        let rankings = courses
            .par_iter()
            .map(|c| extract_course_keywords(&corpus, &c.course_id, &kw).map(|r| (c.course_id.clone(), r.cut(kw.k))))
            .collect::<Result<Vec<_>, _>>()?;
        #[derive(Serialize)]
        struct Row<'a> {
            course_id: &'a str,
            rank: usize,
            word: &'a str,
            gamma: f64,
        }
        let rows = rankings.iter().flat_map(|(id, r)| {
            r.entries().iter().enumerate().map(move |(i, (w, g))| Row {
                course_id: id,
                rank: i + 1,
                word: w,
                gamma: *g,
            })
        });
        self.out.csv("keywords.csv", rows)
    }

    fn topics_converge(&mut self) -> Result<(), PipelineError> {
        let corpus = self.corpus()?;
        let kw = self.keyword_config(self.config.topics.k, self.config.topics.warmup)?;
        let courses = self.selected(&corpus)?;
        let series = courses
            .par_iter()
            .map(|c| {
                let background = background_model(&corpus, &c.course_id, &kw)?;
                let last = c.threads.iter().map(|t| c.day_index(t.created_at())).max().unwrap_or(0);
                let days = daily_batches(c, last, &kw.tokens);
                convergence_series(&background, &days, kw.k).map(|s| (c.course_id.clone(), s))
            })
            .collect::<Result<Vec<_>, _>>()?;
        #[derive(Serialize)]
        struct Row<'a> {
            course_id: &'a str,
            day: usize,
            cumulative_tokens: u64,
            setdiff: usize,
            kendall: f64,
        }
        let rows = series.iter().flat_map(|(id, pts)| {
            pts.iter().map(move |p| Row {
                course_id: id,
                day: p.day,
                cumulative_tokens: p.cumulative_tokens,
                setdiff: p.setdiff,
                kendall: p.kendall,
            })
        });
        self.out.csv("convergence.csv", rows)
    }

    fn comparison_config(&mut self) -> Result<ComparisonConfig, PipelineError> {
        let r = self.config.rank.clone();
        Ok(ComparisonConfig {
            k: r.k,
            alpha: r.alpha,
            hits_tolerance: r.hits_tolerance,
            hits_max_iters: r.hits_max_iters,
            keywords: self.keyword_config(r.keywords, r.warmup)?,
        })
    }

    fn ranked_course<'c>(&self, corpus: &'c Corpus) -> Result<&'c Course, PipelineError> {
        self.selected(corpus)?
            .into_iter()
            .next()
            .ok_or_else(|| PipelineError::Data("corpus has no threads".into()))
    }

    fn rank(&mut self) -> Result<(), PipelineError> {
        let corpus = self.corpus()?;
        let config = self.comparison_config()?;
        let course = self.ranked_course(&corpus)?;
        let window = RankWindow::new(self.config.rank.warmup, self.config.rank.query_days)?;
        let rankings = rank_window(&corpus, course, window, &config)?;
        if !rankings.hits_converged {
            log::warn!("HITS stopped at the iteration cap");
        }
        #[derive(Serialize)]
        struct Row<'a> {
            method: &'a str,
            rank: usize,
            thread_id: &'a str,
            score: f64,
        }
        let lists: [(&str, &RankedList); 3] = [
            ("topical", &rankings.topical),
            ("tfidf", &rankings.tfidf),
            ("hits", &rankings.hits),
        ];
        let rows = lists.iter().flat_map(|(method, list)| {
            list.entries().iter().enumerate().map(move |(i, e)| Row {
                method,
                rank: i + 1,
                thread_id: &e.thread_id,
                score: e.score,
            })
        });
        self.out.csv("rankings.csv", rows)
    }

    fn compare(&mut self) -> Result<(), PipelineError> {
        let corpus = self.corpus()?;
        let config = self.comparison_config()?;
        let course = self.ranked_course(&corpus)?;
        let r = self.config.rank.clone();
        let irrelevant = label_relevance(course);
        let warmups = query_windows(self.config.seed, r.first_warmup, r.last_warmup, r.windows);
        let results = warmups
            .par_iter()
            .map(|&w| {
                let window = RankWindow::new(w, r.query_days)?;
                compare_window(&corpus, &course.course_id, window, &config, &irrelevant).map(|(_, c)| c)
            })
            .collect::<Result<Vec<_>, _>>()?;
        #[derive(Serialize)]
        struct Row<'a> {
            day: i64,
            baseline: &'a str,
            d_size: usize,
            ours_irrelevant: usize,
            baseline_irrelevant: usize,
            unjudged: usize,
        }
        let rows = results.iter().flatten().map(|c| Row {
            day: c.warmup_days + 1,
            baseline: c.baseline,
            d_size: c.d1.len(),
            ours_irrelevant: c.d1_irrelevant,
            baseline_irrelevant: c.d2_irrelevant,
            unjudged: c.unjudged,
        });
        self.out.csv("compare.csv", rows)
    }

    fn stats(&mut self, action: StatsAction) -> Result<(), PipelineError> {
        let corpus = self.corpus()?;
        let s = self.config.stats.clone();
        let selected: Vec<&str> = self.selected(&corpus)?.iter().map(|c| c.course_id.as_str()).collect();
        let series: Vec<_> = build_all_series(&corpus)
            .into_iter()
            .filter(|a| selected.contains(&a.course_id.as_str()))
            .collect();
        match action {
            StatsAction::Series => {
                #[derive(Serialize)]
                struct Row<'a> {
                    course_id: &'a str,
                    day: usize,
                    y: f64,
                    z: f64,
                }
                let rows = series.iter().flat_map(|a| {
                    (0..a.days()).map(move |d| Row {
                        course_id: &a.course_id,
                        day: d + 1,
                        y: a.y[d],
                        z: a.z[d],
                    })
                });
                self.out.csv("series.csv", rows)
            }
            StatsAction::Trend => {
                #[derive(Serialize)]
                struct Row<'a> {
                    course_id: &'a str,
                    target: &'a str,
                    slope: f64,
                    intercept: f64,
                    slope_se: f64,
                    n: usize,
                }
                let mut rows = Vec::new();
                for a in &series {
                    for (target, values) in [("y", &a.y), ("z", &a.z)] {
                        let fit = fit_course_trend(values)?;
                        rows.push(Row {
                            course_id: &a.course_id,
                            target,
                            slope: fit.slope,
                            intercept: fit.intercept,
                            slope_se: fit.slope_se,
                            n: fit.n,
                        });
                    }
                }
                self.out.csv("trend.csv", rows)
            }
            StatsAction::Panel => {
                let panel = series
                    .iter()
                    .map(|a| {
                        let course = corpus.course(&a.course_id).expect("series come from the corpus");
                        course_factors(course, a).map(|f| (a.clone(), f))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let fit = fit_panel_ols(&panel, s.target, s.staff_scale)?;
                #[derive(Serialize)]
                struct Row<'a> {
                    term: &'a str,
                    estimate: f64,
                    se: f64,
                    t: f64,
                    p: f64,
                }
                let rows = (0..fit.terms.len()).map(|i| Row {
                    term: &fit.terms[i],
                    estimate: fit.coefficients[i],
                    se: fit.std_errors[i],
                    t: fit.t_stats[i],
                    p: fit.p_values[i],
                });
                let name = match s.target {
                    PanelTarget::Y => "y",
                    PanelTarget::Z => "z",
                    PanelTarget::LogZ => "logz",
                };
                self.out.csv(&format!("panel_{name}.csv"), rows)?;
                #[derive(Serialize)]
                struct Summary<'a> {
                    target: &'a str,
                    r_squared: f64,
                    adj_r_squared: f64,
                    n_obs: usize,
                    dropped_rows: usize,
                    sigma: f64,
                }
                self.out.csv(
                    &format!("panel_{name}_summary.csv"),
                    [Summary {
                        target: name,
                        r_squared: fit.r_squared,
                        adj_r_squared: fit.adj_r_squared,
                        n_obs: fit.n_obs,
                        dropped_rows: fit.dropped_rows,
                        sigma: fit.sigma,
                    }],
                )
            }
            StatsAction::Shapiro => {
                #[derive(Serialize)]
                struct Row<'a> {
                    course_id: &'a str,
                    n: usize,
                    w: f64,
                    p_value: f64,
                    pass: bool,
                }
                #[derive(Serialize)]
                struct QqRow<'a> {
                    course_id: &'a str,
                    theoretical: f64,
                    sample: f64,
                }
                let mut rows = Vec::new();
                let mut qq = Vec::new();
                for a in &series {
                    let diffs = trim_and_diff(&a.y, s.trim)?;
                    let sw = shapiro_wilk(&diffs)?;
                    rows.push(Row {
                        course_id: &a.course_id,
                        n: diffs.len(),
                        w: sw.w,
                        p_value: sw.p_value,
                        pass: sw.p_value >= s.shapiro_level,
                    });
                    qq.extend(qq_points(&diffs)?.into_iter().map(|(theoretical, sample)| QqRow {
                        course_id: &a.course_id,
                        theoretical,
                        sample,
                    }));
                }
                self.out.csv("shapiro.csv", rows)?;
                self.out.csv("qq.csv", qq)
            }
            StatsAction::Ttest => {
                #[derive(Serialize, Clone)]
                struct Row<'a> {
                    course_id: &'a str,
                    thread_id: String,
                    f: usize,
                    length: usize,
                    group: u8,
                }
                let mut rows = Vec::new();
                for id in &selected {
                    let course = corpus.course(id).expect("selected from the corpus");
                    for n in neighborhood_counts(course, s.t_days) {
                        rows.push(Row {
                            course_id: id,
                            thread_id: n.thread_id,
                            f: n.f,
                            length: n.length,
                            group: if n.f <= s.threshold { 1 } else { 2 },
                        });
                    }
                }
                let (g1, g2) = partition_by_threshold(&rows, |r| r.f, s.threshold);
                let len = |g: &[Row]| g.iter().map(|r| r.length as f64).collect::<Vec<_>>();
                let report = two_sample_tests(&len(&g1), &len(&g2))?;
                #[derive(Serialize)]
                struct Test {
                    threshold: usize,
                    n1: usize,
                    n2: usize,
                    mean1: f64,
                    mean2: f64,
                    var1: f64,
                    var2: f64,
                    t: f64,
                    df: f64,
                    t_p_one_sided: f64,
                    t_p_two_sided: f64,
                    u: f64,
                    u_p_one_sided: f64,
                    u_p_two_sided: f64,
                    u_method: String,
                }
                let w = report.welch;
                let mw = report.mann_whitney;
                let test = Test {
                    threshold: s.threshold,
                    n1: report.n1,
                    n2: report.n2,
                    mean1: w.mean1,
                    mean2: w.mean2,
                    var1: w.var1,
                    var2: w.var2,
                    t: w.t,
                    df: w.df,
                    t_p_one_sided: w.p_one_sided,
                    t_p_two_sided: w.p_two_sided,
                    u: mw.u,
                    u_p_one_sided: mw.p_one_sided,
                    u_p_two_sided: mw.p_two_sided,
                    u_method: format!("{:?}", mw.method).to_lowercase(),
                };
                self.out.csv("attention.csv", &rows)?;
                self.out.csv("ttest.csv", [test])
            }
            StatsAction::MovingAvg => {
                #[derive(Serialize)]
                struct Row<'a> {
                    category: &'a str,
                    index: usize,
                    day: i64,
                    s_t: f64,
                }
                let mut by_category: BTreeMap<&str, Vec<(i64, &str, &str, i64, f64)>> = BTreeMap::new();
                for id in &selected {
                    let course = corpus.course(id).expect("selected from the corpus");
                    for t in course.threads.iter().filter(|t| t.label() != Label::Unlabeled) {
                        let eta = if t.label() == Label::SmallTalk { 1.0 } else { 0.0 };
                        by_category.entry(course.category.as_str()).or_default().push((
                            t.created_at(),
                            id,
                            t.thread_id(),
                            course.day_index(t.created_at()),
                            eta,
                        ));
                    }
                }
                let mut rows = Vec::new();
                for (category, mut items) in by_category {
                    items.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
                    let eta: Vec<f64> = items.iter().map(|x| x.4).collect();
                    let avg = smalltalk_moving_average(&eta, s.alpha, s.denominator)?;
                    rows.extend(items.iter().zip(avg).enumerate().map(|(i, (x, s_t))| Row {
                        category,
                        index: i + 1,
                        day: x.3,
                        s_t,
                    }));
                }
                self.out.csv("moving_avg.csv", rows)
            }
        }
    }
}
