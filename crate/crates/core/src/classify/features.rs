use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::corpus::{thread_tokens, Corpus, Label, TokenOptions};
use crate::genmodel::SampledThread;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDoc {
    pub course_id: String,
    pub tokens: Vec<String>,
    pub is_smalltalk: bool,
}

impl LabeledDoc {
    pub fn from_sampled(course_id: impl Into<String>, thread: SampledThread) -> LabeledDoc {
        LabeledDoc {
            course_id: course_id.into(),
            tokens: thread.tokens,
            is_smalltalk: thread.is_smalltalk,
        }
    }
}

/// Labeled documents of a corpus. Unlabeled threads are skipped; logistics
/// threads count as negatives.
pub fn docs_from_corpus(corpus: &Corpus, options: &TokenOptions) -> Vec<LabeledDoc> {
    corpus
        .threads()
        .filter(|(_, t)| t.label() != Label::Unlabeled)
        .map(|(c, t)| LabeledDoc {
            course_id: c.course_id.clone(),
            tokens: thread_tokens(t, options),
            is_smalltalk: t.label() == Label::SmallTalk,
        })
        .collect()
}

/// Sorted word list with O(1) lookup.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
    }
}

impl Vocabulary {
    pub fn from_words<S: AsRef<str>>(words: impl IntoIterator<Item = S>) -> Vocabulary {
        let set: BTreeSet<String> = words.into_iter().map(|w| w.as_ref().to_string()).collect();
        let words: Vec<String> = set.into_iter().collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Vocabulary { words, index }
    }

    pub fn from_docs<'a>(docs: impl IntoIterator<Item = &'a LabeledDoc>) -> Vocabulary {
        Vocabulary::from_words(docs.into_iter().flat_map(|d| d.tokens.iter()))
    }

    pub fn get(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Sparse term counts `(index, count)` sorted by index; unknown words are
    /// dropped.
    pub fn bag_of_words<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<(u32, f64)> {
        let mut ids: Vec<u32> = tokens.iter().filter_map(|t| self.get(t.as_ref())).map(|i| i as u32).collect();
        ids.sort_unstable();
        let mut out: Vec<(u32, f64)> = Vec::new();
        for id in ids {
            match out.last_mut() {
                Some((last, c)) if *last == id => *c += 1.0,
                _ => out.push((id, 1.0)),
            }
        }
        out
    }
}

impl Serialize for Vocabulary {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.words.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vocabulary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let words = Vec::<String>::deserialize(d)?;
        Ok(Vocabulary::from_words(words))
    }
}
