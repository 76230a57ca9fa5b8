use std::collections::BTreeMap;

use serde::Serialize;

use super::{aligned_kendall_tau, surprise_weights, topk_set_difference, KeywordRanking, TopicsError};
use crate::corpus::{thread_tokens, Corpus, Course, TokenOptions, UnigramModel};

#[derive(Debug, Clone)]
pub struct KeywordConfig {
    pub k: usize,
    /// Course days (1-based, by thread creation) used as course-specific text.
    pub warmup_days: i64,
    /// Courses whose full text forms the background; empty means every other course.
    pub background_courses: Vec<String>,
    pub tokens: TokenOptions,
}

impl Default for KeywordConfig {
    fn default() -> Self {
        KeywordConfig {
            k: 50,
            warmup_days: 10,
            background_courses: Vec::new(),
            tokens: TokenOptions::default(),
        }
    }
}

fn count_into(counts: &mut BTreeMap<String, u64>, tokens: impl IntoIterator<Item = String>) {
    for t in tokens {
        *counts.entry(t).or_insert(0) += 1;
    }
}

fn background_counts(corpus: &Corpus, course_id: &str, config: &KeywordConfig) -> Result<BTreeMap<String, u64>, TopicsError> {
    let mut counts = BTreeMap::new();
    let courses: Vec<&Course> = if config.background_courses.is_empty() {
        corpus.courses.iter().filter(|c| c.course_id != course_id).collect()
    } else {
        config
            .background_courses
            .iter()
            .map(|id| corpus.course(id).ok_or_else(|| TopicsError::UnknownCourse(id.clone())))
            .collect::<Result<_, _>>()?
    };
    for c in courses {
        for t in &c.threads {
            count_into(&mut counts, thread_tokens(t, &config.tokens));
        }
    }
    Ok(counts)
}

/// Empirical model of the background text used for `course_id`.
pub fn background_model(corpus: &Corpus, course_id: &str, config: &KeywordConfig) -> Result<UnigramModel, TopicsError> {
    let counts = background_counts(corpus, course_id, config)?;
    if counts.is_empty() {
        return Err(TopicsError::EmptyBackground);
    }
    Ok(UnigramModel::from_counts(counts)?)
}

fn ranking_from_counts(background: &BTreeMap<String, u64>, course: &BTreeMap<String, u64>) -> Result<KeywordRanking, TopicsError> {
    let n: u64 = background.values().sum();
    if n == 0 {
        return Err(TopicsError::EmptyBackground);
    }
    let course_model = UnigramModel::from_counts(course.clone())?;
    let mut combined = background.clone();
    for (w, c) in course {
        *combined.entry(w.clone()).or_insert(0) += c;
    }
    let combined = UnigramModel::from_counts(combined)?;
    Ok(surprise_weights(&combined, &course_model, n))
}

/// Uncut surprise-weight ranking for one course from its first
/// `warmup_days` days against the background courses.
pub fn extract_course_keywords(corpus: &Corpus, course_id: &str, config: &KeywordConfig) -> Result<KeywordRanking, TopicsError> {
    let course = corpus
        .course(course_id)
        .ok_or_else(|| TopicsError::UnknownCourse(course_id.to_string()))?;
    let background = background_counts(corpus, course_id, config)?;
    let mut counts = BTreeMap::new();
    for t in course.threads_in_days(1, config.warmup_days) {
        count_into(&mut counts, thread_tokens(t, &config.tokens));
    }
    ranking_from_counts(&background, &counts)
}

/// Ranking change between consecutive days.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub day: usize,
    pub cumulative_tokens: u64,
    /// Words entering the top-k on this day.
    pub setdiff: usize,
    /// Normalized Kendall tau against the previous day on the shared top-k words.
    pub kendall: f64,
}

/// Tracks the top-`k` ranking as course text accumulates day by day.
///
/// `days[d]` holds the documents of day `d + 1`. Empty days carry the
/// previous ranking forward. One point is returned per day from day 2 on.
pub fn convergence_series(background: &UnigramModel, days: &[Vec<Vec<String>>], k: usize) -> Result<Vec<ConvergencePoint>, TopicsError> {
    if background.counts().is_empty() {
        return Err(TopicsError::EmptyBackground);
    }
    let bg: BTreeMap<String, u64> = background
        .vocab()
        .iter()
        .cloned()
        .zip(background.counts().iter().copied())
        .collect();
    let mut course = BTreeMap::new();
    let mut prev: Option<KeywordRanking> = None;
    let mut out = Vec::new();
    for (i, docs) in days.iter().enumerate() {
        for d in docs {
            count_into(&mut course, d.iter().cloned());
        }
        let tokens: u64 = course.values().sum();
        if tokens == 0 {
            continue;
        }
        let ranking = ranking_from_counts(&bg, &course)?.cut(k);
        if let Some(p) = &prev {
            out.push(ConvergencePoint {
                day: i + 1,
                cumulative_tokens: tokens,
                setdiff: topk_set_difference(p, &ranking, k),
                kendall: aligned_kendall_tau(p, &ranking, k),
            });
        }
        prev = Some(ranking);
    }
    Ok(out)
}

/// Per-day token batches of a course, days `1..=max_day`, by thread creation day.
pub fn daily_batches(course: &Course, max_day: i64, options: &TokenOptions) -> Vec<Vec<Vec<String>>> {
    let mut days = vec![Vec::new(); max_day.max(0) as usize];
    for t in &course.threads {
        let d = course.day_index(t.created_at());
        if (1..=max_day).contains(&d) {
            days[(d - 1) as usize].push(thread_tokens(t, options));
        }
    }
    days
}
