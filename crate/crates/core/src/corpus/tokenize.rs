use std::collections::HashSet;
use std::path::Path;

use super::model::Thread;

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// Words removed before counting. Matching happens after case folding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopWords(HashSet<String>);

impl StopWords {
    pub fn none() -> StopWords {
        StopWords(HashSet::new())
    }

    /// The list shipped in `data/stopwords.txt`.
    pub fn english() -> StopWords {
        StopWords::parse(DEFAULT_STOPWORDS)
    }

    /// One word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> StopWords {
        StopWords(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn from_file(path: impl AsRef<Path>) -> std::io::Result<StopWords> {
        Ok(StopWords::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for StopWords {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        StopWords(iter.into_iter().map(|s| s.as_ref().to_lowercase()).collect())
    }
}

/// Lowercases, splits on runs of non-alphanumeric characters and drops
/// stopwords and tokens shorter than two characters. No stemming.
pub fn tokenize(text: &str, stopwords: &StopWords) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|tok| tok.chars().nth(1).is_some() && !stopwords.contains(tok))
        .map(str::to_string)
        .collect()
}

#[derive(Debug, Clone)]
pub struct TokenOptions {
    pub stopwords: StopWords,
    /// Count posts written by teaching staff.
    pub include_staff: bool,
}

impl Default for TokenOptions {
    fn default() -> Self {
        TokenOptions {
            stopwords: StopWords::english(),
            include_staff: true,
        }
    }
}

/// Tokens of all posts of a thread, in post order.
pub fn thread_tokens(thread: &Thread, options: &TokenOptions) -> Vec<String> {
    thread
        .posts()
        .iter()
        .filter(|p| options.include_staff || !p.is_staff)
        .flat_map(|p| tokenize(&p.text, &options.stopwords))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_text() {
        assert!(tokenize("", &StopWords::none()).is_empty());
    }

    #[test]
    fn splits_and_lowercases() {
        assert_eq!(
            tokenize("Gradient descent, gradient!", &StopWords::none()),
            vec!["gradient", "descent", "gradient"]
        );
    }

    #[test]
    fn drops_stopwords_and_short_tokens() {
        let sw: StopWords = ["the", "is"].into_iter().collect();
        assert_eq!(tokenize("the theta is theta", &sw), vec!["theta", "theta"]);
        assert_eq!(tokenize("a b cd x1", &StopWords::none()), vec!["cd", "x1"]);
    }

    #[test]
    fn default_list_loads() {
        let sw = StopWords::english();
        assert!(sw.contains("the"));
        assert!(!sw.contains("theta"));
    }

    proptest! {
        #[test]
        fn idempotent_on_own_output(text in "\\PC{0,80}") {
            let sw = StopWords::english();
            let once = tokenize(&text, &sw);
            let twice = tokenize(&once.join(" "), &sw);
            prop_assert_eq!(once, twice);
        }
    }
}
