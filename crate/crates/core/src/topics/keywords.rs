use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::UnigramModel;

/// Words ordered by surprise weight, highest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeywordRanking {
    entries: Vec<(String, f64)>,
}

impl KeywordRanking {
    /// Sorts by weight descending, then word ascending. Later duplicates of a
    /// word are dropped.
    pub fn new(entries: impl IntoIterator<Item = (String, f64)>) -> KeywordRanking {
        let mut seen = HashSet::new();
        let mut entries: Vec<(String, f64)> = entries.into_iter().filter(|(w, _)| seen.insert(w.clone())).collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        KeywordRanking { entries }
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(w, _)| w.as_str())
    }

    /// Ranking restricted to its first `k` entries.
    pub fn cut(&self, k: usize) -> KeywordRanking {
        KeywordRanking {
            entries: self.entries.iter().take(k).cloned().collect(),
        }
    }

    /// 1-based rank of `word`.
    pub fn rank_of(&self, word: &str) -> Option<usize> {
        self.entries.iter().position(|(w, _)| w == word).map(|i| i + 1)
    }

    pub fn weight_of(&self, word: &str) -> Option<f64> {
        self.entries.iter().find(|(w, _)| w == word).map(|e| e.1)
    }
}

/// Full (uncut) surprise-weight ranking of the words of `course`.
///
/// Words missing from `combined` have no defined weight and are left out.
pub fn surprise_weights(combined: &UnigramModel, course: &UnigramModel, n: u64) -> KeywordRanking {
    let sqrt_n = (n as f64).sqrt();
    KeywordRanking::new(course.iter().filter_map(|(w, pe)| {
        let pd = combined.mass(w);
        if pd > 0.0 {
            Some((w.to_string(), pe * sqrt_n / pd.sqrt()))
        } else {
            log::warn!("word {w:?} absent from the combined model");
            None
        }
    }))
}

pub fn top_k(ranking: &KeywordRanking, k: usize) -> Vec<&str> {
    ranking.words().take(k).collect()
}

/// Number of words in the top `k` of `day_b` that are not in the top `k` of `day_a`.
pub fn topk_set_difference(day_a: &KeywordRanking, day_b: &KeywordRanking, k: usize) -> usize {
    let a: HashSet<&str> = top_k(day_a, k).into_iter().collect();
    top_k(day_b, k).into_iter().filter(|w| !a.contains(w)).count()
}
