use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CorpusError;

/// A probability distribution over a sorted vocabulary.
///
/// Empirical models keep their raw counts (`total_tokens > 0`); models built
/// from masses carry `total_tokens == 0`. Every word in `vocab` has positive
/// mass and the masses sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnigramModel {
    vocab: Vec<String>,
    mass: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    counts: Vec<u64>,
    total_tokens: u64,
}

impl UnigramModel {
    /// Empirical distribution of all tokens in `docs`.
    pub fn from_docs<D, S>(docs: impl IntoIterator<Item = D>) -> Result<UnigramModel, CorpusError>
    where
        D: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for doc in docs {
            for tok in doc {
                let tok = tok.as_ref();
                if let Some(c) = counts.get_mut(tok) {
                    *c += 1;
                } else {
                    counts.insert(tok.to_string(), 1);
                }
            }
        }
        UnigramModel::from_counts(counts)
    }

    pub fn from_counts(counts: BTreeMap<String, u64>) -> Result<UnigramModel, CorpusError> {
        let (vocab, counts): (Vec<String>, Vec<u64>) = counts.into_iter().filter(|(_, c)| *c > 0).unzip();
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(CorpusError::EmptyCorpus);
        }
        let mass = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Ok(UnigramModel {
            vocab,
            mass,
            counts,
            total_tokens: total,
        })
    }

    /// Normalises nonnegative weights; zero-weight words are left out of the
    /// support.
    pub fn from_weights<S: Into<String>>(weights: impl IntoIterator<Item = (S, f64)>) -> Result<UnigramModel, CorpusError> {
        let mut map: BTreeMap<String, f64> = BTreeMap::new();
        for (w, m) in weights {
            if !(m.is_finite() && m >= 0.0) {
                return Err(CorpusError::InvalidMasses(format!("weight {m} is not a finite nonnegative number")));
            }
            *map.entry(w.into()).or_insert(0.0) += m;
        }
        let total: f64 = map.values().sum();
        if total <= 0.0 {
            return Err(CorpusError::InvalidMasses("all weights are zero".into()));
        }
        let (vocab, mass): (Vec<String>, Vec<f64>) = map
            .into_iter()
            .filter(|(_, m)| *m > 0.0)
            .map(|(w, m)| (w, m / total))
            .unzip();
        Ok(UnigramModel {
            vocab,
            mass,
            counts: Vec::new(),
            total_tokens: 0,
        })
    }

    /// The distribution with empty support.
    pub fn empty() -> UnigramModel {
        UnigramModel {
            vocab: Vec::new(),
            mass: Vec::new(),
            counts: Vec::new(),
            total_tokens: 0,
        }
    }

    /// Sums the counts of several empirical models.
    pub fn combine<'a>(models: impl IntoIterator<Item = &'a UnigramModel>) -> Result<UnigramModel, CorpusError> {
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for m in models {
            if m.counts.is_empty() {
                return Err(CorpusError::InvalidMasses("cannot combine a model without counts".into()));
            }
            for (w, &c) in m.vocab.iter().zip(&m.counts) {
                *counts.entry(w.clone()).or_insert(0) += c;
            }
        }
        UnigramModel::from_counts(counts)
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    /// Raw counts; empty for models built from weights.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.vocab.binary_search_by(|w| w.as_str().cmp(word)).ok()
    }

    /// Probability of `word`; zero outside the support.
    pub fn mass(&self, word: &str) -> f64 {
        self.index_of(word).map_or(0.0, |i| self.mass[i])
    }

    pub fn count(&self, word: &str) -> u64 {
        match (self.index_of(word), self.counts.is_empty()) {
            (Some(i), false) => self.counts[i],
            _ => 0,
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index_of(word).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.vocab.iter().map(String::as_str).zip(self.mass.iter().copied())
    }

    /// Checks sortedness, positivity and normalisation. The empty model is
    /// valid.
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.vocab.is_empty() && self.mass.is_empty() {
            return Ok(());
        }
        if self.vocab.len() != self.mass.len() {
            return Err(CorpusError::InvalidMasses("vocab and mass lengths differ".into()));
        }
        if !self.counts.is_empty() && self.counts.len() != self.vocab.len() {
            return Err(CorpusError::InvalidMasses("vocab and count lengths differ".into()));
        }
        if self.vocab.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CorpusError::InvalidMasses("vocabulary is not strictly sorted".into()));
        }
        if self.mass.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
            return Err(CorpusError::InvalidMasses("non-positive mass in support".into()));
        }
        let total: f64 = self.mass.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(CorpusError::InvalidMasses(format!("masses sum to {total}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_one_document() {
        let m = UnigramModel::from_docs([["a", "a", "b"]]).unwrap();
        assert_eq!(m.total_tokens(), 3);
        assert!((m.mass("a") - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.mass("b") - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.mass("c"), 0.0);
    }

    #[test]
    fn two_documents_symmetric() {
        let m = UnigramModel::from_docs([vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(m.mass("a"), 0.5);
        assert_eq!(m.mass("b"), 0.5);
    }

    #[test]
    fn empty_corpus_errors() {
        let docs: Vec<Vec<&str>> = vec![vec![]];
        assert!(matches!(UnigramModel::from_docs(docs), Err(CorpusError::EmptyCorpus)));
    }

    #[test]
    fn combine_adds_counts() {
        let a = UnigramModel::from_docs([["x", "y"]]).unwrap();
        let b = UnigramModel::from_docs([["y", "z", "z"]]).unwrap();
        let c = UnigramModel::combine([&a, &b]).unwrap();
        assert_eq!(c.total_tokens(), 5);
        assert_eq!(c.count("y"), 2);
        assert_eq!(c.count("z"), 2);
    }

    proptest! {
        #[test]
        fn masses_sum_to_one(docs in prop::collection::vec(prop::collection::vec("[a-e]{1,3}", 0..20), 1..10)) {
            prop_assume!(docs.iter().any(|d| !d.is_empty()));
            let m = UnigramModel::from_docs(&docs).unwrap();
            prop_assert!(m.validate().is_ok());
            let total: f64 = m.masses().iter().sum();
            prop_assert!((total - 1.0).abs() <= 1e-9);
        }
    }
}
