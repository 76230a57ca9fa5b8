use std::collections::HashMap;

use rand::seq::index::sample;
use serde::Serialize;

use super::{hits_rank, tfidf_rank, topical_rank, topk_diff, window_threads, RankWindow, RankedList, RankingError};
use crate::corpus::{Corpus, Course, Label};
use crate::rng::seeded;
use crate::topics::{extract_course_keywords, KeywordConfig};

#[derive(Debug, Clone)]
pub struct ComparisonConfig {
    /// Size of the compared top sets.
    pub k: usize,
    pub alpha: f64,
    pub hits_tolerance: f64,
    pub hits_max_iters: usize,
    /// Keyword extraction; `keywords.k` is the keyword cutoff and
    /// `keywords.warmup_days` is overridden by the window.
    pub keywords: KeywordConfig,
}

impl Default for ComparisonConfig {
    fn default() -> Self {
        ComparisonConfig {
            k: 15,
            alpha: 0.96,
            hits_tolerance: 1e-10,
            hits_max_iters: 1000,
            keywords: KeywordConfig::default(),
        }
    }
}

/// The three rankings of one window's query threads.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowRankings {
    pub topical: RankedList,
    pub tfidf: RankedList,
    pub hits: RankedList,
    pub hits_converged: bool,
}

pub fn rank_window(corpus: &Corpus, course: &Course, window: RankWindow, config: &ComparisonConfig) -> Result<WindowRankings, RankingError> {
    let kw_config = KeywordConfig {
        warmup_days: window.warmup_days,
        ..config.keywords.clone()
    };
    let keywords = extract_course_keywords(corpus, &course.course_id, &kw_config)?.cut(kw_config.k);
    let (all, query) = window_threads(course, window, &config.keywords.tokens);
    let topical = topical_rank(&keywords, &query, config.alpha)?;
    let tfidf = tfidf_rank(&all, &query);
    let (hits, hits_converged) = match hits_rank(&all, config.hits_tolerance, config.hits_max_iters) {
        Ok(h) => {
            let ids: std::collections::HashSet<&str> = query.iter().map(|t| t.thread_id.as_str()).collect();
            (h.ranking.filter(|id| ids.contains(id)), h.converged)
        }
        Err(RankingError::EmptyGraph) => (RankedList::new(Vec::new()), true),
        Err(e) => return Err(e),
    };
    Ok(WindowRankings {
        topical,
        tfidf,
        hits,
        hits_converged,
    })
}

/// Top-k differences of the topical ranker against one baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowComparison {
    pub course_id: String,
    pub warmup_days: i64,
    pub baseline: &'static str,
    pub d1: Vec<String>,
    pub d2: Vec<String>,
    pub d1_irrelevant: usize,
    pub d2_irrelevant: usize,
    /// Threads in D1 ∪ D2 without a relevance judgment.
    pub unjudged: usize,
}

/// Relevance judgments from thread labels: course-specific threads are
/// relevant, small-talk and logistics threads irrelevant, unlabeled threads
/// unjudged. Values are `true` for irrelevant threads.
pub fn label_relevance(course: &Course) -> HashMap<String, bool> {
    course
        .threads
        .iter()
        .filter_map(|t| match t.label() {
            Label::CourseSpecific => Some((t.thread_id().to_string(), false)),
            Label::SmallTalk | Label::Logistics => Some((t.thread_id().to_string(), true)),
            Label::Unlabeled => None,
        })
        .collect()
}

/// Compares the topical ranker with tf-idf and HITS on one window.
pub fn compare_window(
    corpus: &Corpus,
    course_id: &str,
    window: RankWindow,
    config: &ComparisonConfig,
    irrelevant: &HashMap<String, bool>,
) -> Result<(WindowRankings, [WindowComparison; 2]), RankingError> {
    let course = corpus
        .course(course_id)
        .ok_or_else(|| crate::topics::TopicsError::UnknownCourse(course_id.to_string()))?;
    let rankings = rank_window(corpus, course, window, config)?;
    let compare = |baseline: &RankedList, name: &'static str| {
        let (d1, d2) = topk_diff(&rankings.topical, baseline, config.k);
        let count = |set: &std::collections::BTreeSet<String>| set.iter().filter(|id| irrelevant.get(*id) == Some(&true)).count();
        let unjudged = d1.iter().chain(&d2).filter(|id| !irrelevant.contains_key(*id)).count();
        WindowComparison {
            course_id: course_id.to_string(),
            warmup_days: window.warmup_days,
            baseline: name,
            d1_irrelevant: count(&d1),
            d2_irrelevant: count(&d2),
            unjudged,
            d1: d1.into_iter().collect(),
            d2: d2.into_iter().collect(),
        }
    };
    let out = [compare(&rankings.tfidf, "tfidf"), compare(&rankings.hits, "hits")];
    Ok((rankings, out))
}

/// Warmup lengths for the comparison: `first` plus `count` distinct days
/// drawn uniformly from `first+1..=last`, ascending.
pub fn query_windows(seed: u64, first: i64, last: i64, count: usize) -> Vec<i64> {
    let pool = (last - first).max(0) as usize;
    let mut rng = seeded(seed);
    let mut days: Vec<i64> = sample(&mut rng, pool, count.min(pool))
        .into_iter()
        .map(|i| first + 1 + i as i64)
        .collect();
    days.push(first);
    days.sort_unstable();
    days
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_days_distinct_and_include_first() {
        let d = query_windows(3, 10, 30, 5);
        assert_eq!(d.len(), 6);
        assert_eq!(d[0], 10);
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert!(d.iter().all(|&x| (10..=30).contains(&x)));
        assert_eq!(d, query_windows(3, 10, 30, 5));
    }
}
