use std::collections::HashMap;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::corpus::{Corpus, Course, Label, Post, Thread};
use crate::genmodel::{GenError, GenerativeSpec, SyntheticParams, ThreadSampler};
use crate::ranking::RankWindow;
use crate::rng::{seeded, ForumRng};
use crate::SECONDS_PER_DAY;

/// A course window mixing on-topic threads, small-talk threads and threads of
/// rare out-of-vocabulary words, plus background courses for keywords.
#[derive(Debug, Clone)]
pub struct RankingParams {
    pub n: usize,
    pub epsilon: f64,
    pub support: usize,
    pub thread_len: usize,
    pub background_courses: usize,
    pub background_threads: usize,
    pub window: RankWindow,
    pub course_threads_per_day: usize,
    pub smalltalk_threads_per_day: usize,
    pub noise_threads_per_day: usize,
    /// Tokens per noise thread; every token is a distinct unseen word.
    pub noise_len: usize,
    /// Mean extra participants beyond the creator.
    pub course_extra_participants: f64,
    pub smalltalk_extra_participants: f64,
    pub users: usize,
    pub seed: u64,
}

impl Default for RankingParams {
    fn default() -> Self {
        RankingParams {
            n: 2000,
            epsilon: 0.3,
            support: 50,
            thread_len: 100,
            background_courses: 3,
            background_threads: 300,
            window: RankWindow {
                warmup_days: 12,
                query_days: 2,
            },
            course_threads_per_day: 20,
            smalltalk_threads_per_day: 6,
            noise_threads_per_day: 3,
            noise_len: 60,
            course_extra_participants: 2.0,
            smalltalk_extra_participants: 8.0,
            users: 400,
            seed: 0,
        }
    }
}

pub struct RankingScenario {
    pub corpus: Corpus,
    pub course_id: String,
    pub window: RankWindow,
    /// `true` for irrelevant threads of the target course.
    pub irrelevant: HashMap<String, bool>,
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Course,
    SmallTalk,
    Noise,
}

fn build_thread(id: String, created_at: i64, tokens: Vec<String>, authors: Vec<String>, label: Label) -> Result<Thread, GenError> {
    let posts_n = authors.len().max(1);
    let chunk = tokens.len().div_ceil(posts_n).max(1);
    let mut chunks = tokens.chunks(chunk);
    let posts = authors
        .iter()
        .enumerate()
        .map(|(i, a)| Post {
            post_id: format!("{id}-p{i}"),
            author_id: a.clone(),
            timestamp: created_at + 60 * i as i64,
            text: chunks.next().map(|c| c.join(" ")).unwrap_or_default(),
            is_staff: false,
        })
        .collect();
    Ok(Thread::new(id, posts, label)?)
}

fn participants(rng: &mut ForumRng, creator: String, extra_mean: f64, users: usize, prefix: &str) -> Vec<String> {
    let extra = if extra_mean > 0.0 {
        Poisson::new(extra_mean).expect("positive mean").sample(rng) as usize
    } else {
        0
    };
    let mut out = vec![creator];
    for _ in 0..extra {
        let u = format!("{prefix}-u{:04}", rng.random_range(0..users));
        if !out.contains(&u) {
            out.push(u);
        }
    }
    out
}

pub fn ranking_scenario(params: &RankingParams) -> Result<RankingScenario, GenError> {
    let m = 1 + params.background_courses;
    let spec = GenerativeSpec::synthetic(&SyntheticParams {
        n: params.n,
        epsilon: params.epsilon,
        support: params.support,
        p: vec![0.5; m],
        s: params.thread_len,
        seed: params.seed,
        ..Default::default()
    })?;
    let sampler = ThreadSampler::new(&spec);
    let mut rng = seeded(params.seed);
    let mut irrelevant = HashMap::new();
    let mut threads = Vec::new();
    let users = params.users.max(1);
    let mut noise_counter = 0usize;
    for day in 0..params.window.last_day() {
        let mut kinds = Vec::new();
        kinds.extend(std::iter::repeat_n(Kind::Course, params.course_threads_per_day));
        kinds.extend(std::iter::repeat_n(Kind::SmallTalk, params.smalltalk_threads_per_day));
        kinds.extend(std::iter::repeat_n(Kind::Noise, params.noise_threads_per_day));
        for (j, kind) in kinds.into_iter().enumerate() {
            let id = format!("t{:03}-{:03}", day + 1, j);
            let created_at = day * SECONDS_PER_DAY + rng.random_range(0..20 * 3600);
            let creator = format!("c1-u{:04}", rng.random_range(0..users));
            let (tokens, extra, label) = match kind {
                Kind::Course => (
                    sampler.sample_labeled(0, false, &mut rng)?.tokens,
                    params.course_extra_participants,
                    Label::CourseSpecific,
                ),
                Kind::SmallTalk => (
                    sampler.sample_labeled(0, true, &mut rng)?.tokens,
                    params.smalltalk_extra_participants,
                    Label::SmallTalk,
                ),
                Kind::Noise => {
                    let toks = (0..params.noise_len)
                        .map(|_| {
                            noise_counter += 1;
                            format!("zq{noise_counter:07}")
                        })
                        .collect();
                    (toks, 0.0, Label::SmallTalk)
                }
            };
            let authors = participants(&mut rng, creator, extra, users, "c1");
            irrelevant.insert(id.clone(), kind != Kind::Course);
            threads.push(build_thread(id, created_at, tokens, authors, label)?);
        }
    }
    let mut courses = vec![Course::new("course-1", 0, threads)?];
    for c in 1..m {
        let mut bg = Vec::with_capacity(params.background_threads);
        for j in 0..params.background_threads {
            let st = sampler.sample_thread(c, &mut rng)?;
            let id = format!("b{c}-{j:05}");
            let label = if st.is_smalltalk { Label::SmallTalk } else { Label::CourseSpecific };
            let created_at = (j as i64 % 30) * SECONDS_PER_DAY;
            bg.push(build_thread(id, created_at, st.tokens, vec![format!("c{}-u{j:05}", c + 1)], label)?);
        }
        courses.push(Course::new(format!("course-{}", c + 1), 0, bg)?);
    }
    Ok(RankingScenario {
        corpus: Corpus::new(courses),
        course_id: "course-1".into(),
        window: params.window,
        irrelevant,
    })
}
