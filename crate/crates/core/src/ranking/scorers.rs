use std::collections::{HashMap, HashSet};

use super::{RankableThread, RankedEntry, RankedList, RankingError};
use crate::topics::KeywordRanking;

/// Scores each thread by Σ α^r(w) over its tokens with repetition. Words
/// outside `keywords` weigh nothing; pass a ranking cut to the top 50 to
/// reproduce the usual setting.
pub fn topical_rank(keywords: &KeywordRanking, threads: &[RankableThread], alpha: f64) -> Result<RankedList, RankingError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(RankingError::InvalidAlpha(alpha));
    }
    let eta: HashMap<&str, f64> = keywords
        .words()
        .enumerate()
        .map(|(i, w)| (w, alpha.powi(i as i32 + 1)))
        .collect();
    Ok(RankedList::new(
        threads
            .iter()
            .map(|t| RankedEntry {
                thread_id: t.thread_id.clone(),
                created_at: t.created_at,
                score: t.tokens.iter().filter_map(|w| eta.get(w.as_str())).sum(),
            })
            .collect(),
    ))
}

/// Scores each query thread by Σ_t tf(t,d)·log(|D|/df(t)) with raw term
/// counts and document frequencies taken over `window`. Terms absent from the
/// window contribute nothing.
pub fn tfidf_rank(window: &[RankableThread], query: &[RankableThread]) -> RankedList {
    let mut df: HashMap<&str, usize> = HashMap::new();
    for t in window {
        let distinct: HashSet<&str> = t.tokens.iter().map(String::as_str).collect();
        for w in distinct {
            *df.entry(w).or_insert(0) += 1;
        }
    }
    let n_docs = window.len() as f64;
    RankedList::new(
        query
            .iter()
            .map(|t| RankedEntry {
                thread_id: t.thread_id.clone(),
                created_at: t.created_at,
                score: t
                    .tokens
                    .iter()
                    .filter_map(|w| df.get(w.as_str()))
                    .map(|&d| (n_docs / d as f64).ln())
                    .sum(),
            })
            .collect(),
    )
}
