//! Thread relevance rankers and the top-k comparison harness.
//!
//! The topical ranker scores a thread by summing η(w) = α^r(w) over its
//! tokens, where r(w) is the 1-based rank of `w` among the course keywords.
//! The baselines are tf-idf over the threads of the window and a HITS
//! iteration on the user/thread participation graph.

mod compare;
mod hits;
mod scorers;

pub use compare::{compare_window, label_relevance, query_windows, rank_window, ComparisonConfig, WindowComparison, WindowRankings};
pub use hits::{hits_rank, HitsResult};
pub use scorers::{tfidf_rank, topical_rank};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{thread_tokens, Course, Thread, TokenOptions};

#[derive(Debug, Error)]
pub enum RankingError {
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("participation graph has no edges")]
    EmptyGraph,
    #[error(transparent)]
    Topics(#[from] crate::topics::TopicsError),
}

/// Days `1..=warmup_days` train keywords; threads created on days
/// `warmup_days+1 ..= warmup_days+query_days` are ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWindow {
    pub warmup_days: i64,
    pub query_days: i64,
}

impl RankWindow {
    pub fn new(warmup_days: i64, query_days: i64) -> Result<RankWindow, RankingError> {
        if warmup_days < 1 || query_days < 1 {
            return Err(RankingError::InvalidWindow(format!(
                "warmup {warmup_days} and query {query_days} must both be positive"
            )));
        }
        Ok(RankWindow { warmup_days, query_days })
    }

    pub fn last_day(&self) -> i64 {
        self.warmup_days + self.query_days
    }

    pub fn is_query_day(&self, day: i64) -> bool {
        day > self.warmup_days && day <= self.last_day()
    }
}

/// A thread as seen at query time: tokens and participants of the posts
/// written up to then.
#[derive(Debug, Clone, PartialEq)]
pub struct RankableThread {
    pub thread_id: String,
    pub created_at: i64,
    pub tokens: Vec<String>,
    pub participants: Vec<String>,
}

impl RankableThread {
    /// View of `thread` with posts up to and including `cutoff` (UTC seconds).
    pub fn at(thread: &Thread, cutoff: i64, options: &TokenOptions) -> RankableThread {
        let visible: Vec<_> = thread.posts().iter().filter(|p| p.timestamp <= cutoff).cloned().collect();
        let (tokens, participants) = match Thread::new(thread.thread_id(), visible, thread.label()) {
            Ok(t) => (
                thread_tokens(&t, options),
                t.participants().into_iter().map(str::to_string).collect(),
            ),
            Err(_) => (Vec::new(), Vec::new()),
        };
        RankableThread {
            thread_id: thread.thread_id().to_string(),
            created_at: thread.created_at(),
            tokens,
            participants,
        }
    }
}

/// Window threads and query threads of a course, text cut at the end of the window.
pub fn window_threads(course: &Course, window: RankWindow, options: &TokenOptions) -> (Vec<RankableThread>, Vec<RankableThread>) {
    let cutoff = course.start_date + window.last_day() * crate::SECONDS_PER_DAY - 1;
    let all: Vec<RankableThread> = course
        .threads_in_days(1, window.last_day())
        .map(|t| RankableThread::at(t, cutoff, options))
        .collect();
    let query = all
        .iter()
        .filter(|t| window.is_query_day(course.day_index(t.created_at)))
        .cloned()
        .collect();
    (all, query)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedEntry {
    pub thread_id: String,
    pub created_at: i64,
    pub score: f64,
}

/// Threads by score descending; ties by earlier creation, then thread id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedList {
    entries: Vec<RankedEntry>,
}

impl RankedList {
    pub fn new(mut entries: Vec<RankedEntry>) -> RankedList {
        entries.sort_by(|a, b| {
            b.score
                .total_cmp(&a.score)
                .then(a.created_at.cmp(&b.created_at))
                .then_with(|| a.thread_id.cmp(&b.thread_id))
        });
        RankedList { entries }
    }

    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top_ids(&self, k: usize) -> Vec<&str> {
        self.entries.iter().take(k).map(|e| e.thread_id.as_str()).collect()
    }

    /// Entries whose id passes `keep`, order preserved.
    pub fn filter(&self, keep: impl Fn(&str) -> bool) -> RankedList {
        RankedList {
            entries: self.entries.iter().filter(|e| keep(&e.thread_id)).cloned().collect(),
        }
    }

    pub fn score_of(&self, thread_id: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.thread_id == thread_id).map(|e| e.score)
    }

    pub fn position_of(&self, thread_id: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.thread_id == thread_id)
    }
}

/// `D1 = S − S_b` and `D2 = S_b − S` for the top-`k` sets `S`, `S_b`.
pub fn topk_diff(ours: &RankedList, baseline: &RankedList, k: usize) -> (BTreeSet<String>, BTreeSet<String>) {
    let s: BTreeSet<String> = ours.top_ids(k).into_iter().map(String::from).collect();
    let sb: BTreeSet<String> = baseline.top_ids(k).into_iter().map(String::from).collect();
    let d1 = s.difference(&sb).cloned().collect();
    let d2 = sb.difference(&s).cloned().collect();
    (d1, d2)
}
