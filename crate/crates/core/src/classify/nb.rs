use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ClassifyError, LabeledDoc, Scorer, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NbMode {
    /// One model over all courses.
    Aggregate,
    /// One model per course, applied to that course's threads.
    PerCourse,
}

/// How word-count estimates are initialised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    /// `(count + 1) / (N_c + |V|)`; conditionals sum to one over the vocabulary.
    Laplace,
    /// `(count + 1) / (N_c + 2)`: every count starts at one and every class
    /// total at two. Not normalised over the vocabulary; a class with few
    /// training tokens assigns large probability to every unseen word.
    UnitInit,
}

#[derive(Debug, Clone)]
pub struct NbConfig {
    pub mode: NbMode,
    pub smoothing: Smoothing,
    /// Fixed vocabulary; `None` uses the words of the training documents.
    pub vocabulary: Option<Vocabulary>,
}

impl Default for NbConfig {
    fn default() -> Self {
        NbConfig {
            mode: NbMode::Aggregate,
            smoothing: Smoothing::Laplace,
            vocabulary: None,
        }
    }
}

/// Class index 0 is course-specific, 1 is small-talk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbModel {
    pub log_prior: [f64; 2],
    pub log_cond: [Vec<f64>; 2],
    pub vocab: Vocabulary,
    pub smoothing: Smoothing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbPrediction {
    pub is_smalltalk: bool,
    /// Normalised log posteriors `[course-specific, small-talk]`.
    pub log_posteriors: [f64; 2],
}

impl NbModel {
    pub fn train(docs: &[&LabeledDoc], vocab: Vocabulary, smoothing: Smoothing, scope: &str) -> Result<NbModel, ClassifyError> {
        let mut doc_counts = [0usize; 2];
        let mut token_totals = [0f64; 2];
        let mut counts = [vec![0f64; vocab.len()], vec![0f64; vocab.len()]];
        for doc in docs {
            let class = usize::from(doc.is_smalltalk);
            doc_counts[class] += 1;
            for tok in &doc.tokens {
                if let Some(i) = vocab.get(tok) {
                    counts[class][i] += 1.0;
                    token_totals[class] += 1.0;
                }
            }
        }
        for (class, name) in [(1, "small_talk"), (0, "course_specific")] {
            if doc_counts[class] == 0 {
                return Err(ClassifyError::MissingClass {
                    scope: scope.to_string(),
                    class: name,
                });
            }
        }
        let total_docs = (doc_counts[0] + doc_counts[1]) as f64;
        let log_prior = [
            (doc_counts[0] as f64 / total_docs).ln(),
            (doc_counts[1] as f64 / total_docs).ln(),
        ];
        let v = vocab.len() as f64;
        let log_cond = [0, 1].map(|class| {
            let denom = match smoothing {
                Smoothing::Laplace => token_totals[class] + v,
                Smoothing::UnitInit => token_totals[class] + 2.0,
            };
            counts[class].iter().map(|&c| ((c + 1.0) / denom).ln()).collect()
        });
        Ok(NbModel {
            log_prior,
            log_cond,
            vocab,
            smoothing,
        })
    }

    /// Unnormalised joint log probabilities `[course-specific, small-talk]`.
    pub fn joint_log_probs<S: AsRef<str>>(&self, tokens: &[S]) -> [f64; 2] {
        let mut joint = self.log_prior;
        for tok in tokens {
            if let Some(i) = self.vocab.get(tok.as_ref()) {
                joint[0] += self.log_cond[0][i];
                joint[1] += self.log_cond[1][i];
            }
        }
        joint
    }

    pub fn log_odds<S: AsRef<str>>(&self, tokens: &[S]) -> f64 {
        let j = self.joint_log_probs(tokens);
        j[1] - j[0]
    }

    pub fn predict<S: AsRef<str>>(&self, tokens: &[S]) -> NbPrediction {
        let j = self.joint_log_probs(tokens);
        let max = j[0].max(j[1]);
        let lse = max + ((j[0] - max).exp() + (j[1] - max).exp()).ln();
        NbPrediction {
            is_smalltalk: j[1] > j[0],
            log_posteriors: [j[0] - lse, j[1] - lse],
        }
    }
}

/// Argmax of log prior plus summed log conditionals; ties are course-specific.
pub fn predict_nb<S: AsRef<str>>(model: &NbModel, tokens: &[S]) -> NbPrediction {
    model.predict(tokens)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NaiveBayes {
    Aggregate(NbModel),
    PerCourse(BTreeMap<String, NbModel>),
}

impl NaiveBayes {
    pub fn model_for(&self, course_id: &str) -> Result<&NbModel, ClassifyError> {
        match self {
            NaiveBayes::Aggregate(m) => Ok(m),
            NaiveBayes::PerCourse(models) => models
                .get(course_id)
                .ok_or_else(|| ClassifyError::UnknownCourse(course_id.to_string())),
        }
    }

    pub fn predict(&self, doc: &LabeledDoc) -> Result<NbPrediction, ClassifyError> {
        Ok(self.model_for(&doc.course_id)?.predict(&doc.tokens))
    }
}

impl Scorer for NaiveBayes {
    /// Posterior log-odds; documents of a course without a per-course model
    /// score `-inf`.
    fn score(&self, doc: &LabeledDoc) -> f64 {
        self.model_for(&doc.course_id)
            .map_or(f64::NEG_INFINITY, |m| m.log_odds(&doc.tokens))
    }
}

impl Scorer for NbModel {
    fn score(&self, doc: &LabeledDoc) -> f64 {
        self.log_odds(&doc.tokens)
    }
}

pub fn train_nb(docs: &[LabeledDoc], config: &NbConfig) -> Result<NaiveBayes, ClassifyError> {
    let vocab_for = |subset: &[&LabeledDoc]| {
        config
            .vocabulary
            .clone()
            .unwrap_or_else(|| Vocabulary::from_docs(subset.iter().copied()))
    };
    match config.mode {
        NbMode::Aggregate => {
            let all: Vec<&LabeledDoc> = docs.iter().collect();
            let model = NbModel::train(&all, vocab_for(&all), config.smoothing, "all courses")?;
            Ok(NaiveBayes::Aggregate(model))
        }
        NbMode::PerCourse => {
            let mut by_course: BTreeMap<&str, Vec<&LabeledDoc>> = BTreeMap::new();
            for d in docs {
                by_course.entry(d.course_id.as_str()).or_default().push(d);
            }
            let models = by_course
                .into_iter()
                .map(|(course, subset)| {
                    let model = NbModel::train(&subset, vocab_for(&subset), config.smoothing, course)?;
                    Ok((course.to_string(), model))
                })
                .collect::<Result<BTreeMap<_, _>, ClassifyError>>()?;
            Ok(NaiveBayes::PerCourse(models))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(course: &str, tokens: &[&str], pos: bool) -> LabeledDoc {
        LabeledDoc {
            course_id: course.into(),
            tokens: tokens.iter().map(|s| s.to_string()).collect(),
            is_smalltalk: pos,
        }
    }

    #[test]
    fn single_pair_separates_words() {
        let docs = vec![doc("c", &["a"], true), doc("c", &["b"], false)];
        let nb = train_nb(&docs, &NbConfig::default()).unwrap();
        let m = nb.model_for("c").unwrap();
        let a = m.vocab.get("a").unwrap();
        assert!(m.log_cond[1][a] > m.log_cond[0][a]);
    }

    #[test]
    fn hand_computed_posteriors() {
        // vocab {x,y,z}; positives: [x,x,y], [x]; negatives: [z,y], [z,z]
        let docs = vec![
            doc("c", &["x", "x", "y"], true),
            doc("c", &["x"], true),
            doc("c", &["z", "y"], false),
            doc("c", &["z", "z"], false),
        ];
        let nb = train_nb(&docs, &NbConfig::default()).unwrap();
        let m = nb.model_for("c").unwrap();
        // positive counts x=3,y=1,z=0 over 4 tokens; negative x=0,y=1,z=3
        let pos = [4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0];
        let neg = [1.0 / 7.0, 2.0 / 7.0, 4.0 / 7.0];
        for (i, w) in ["x", "y", "z"].iter().enumerate() {
            let j = m.vocab.get(w).unwrap();
            assert!((m.log_cond[1][j] - f64::ln(pos[i])).abs() < 1e-12);
            assert!((m.log_cond[0][j] - f64::ln(neg[i])).abs() < 1e-12);
        }
        // doc [x, z]: equal priors, products 4/49 vs 4/49 -> tie -> negative
        let p = m.predict(&["x", "z"]);
        assert!(!p.is_smalltalk);
        assert!((p.log_posteriors[0] - 0.5f64.ln()).abs() < 1e-12);
        // doc [x, y]: 8/49 vs 2/49 -> posterior 0.8
        let p = m.predict(&["x", "y"]);
        assert!(p.is_smalltalk);
        assert!((p.log_posteriors[1].exp() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn empty_doc_follows_prior() {
        let docs = vec![
            doc("c", &["a"], true),
            doc("c", &["b"], false),
            doc("c", &["b"], false),
        ];
        let nb = train_nb(&docs, &NbConfig::default()).unwrap();
        let p = nb.model_for("c").unwrap().predict::<&str>(&[]);
        assert!(!p.is_smalltalk);
        assert!((p.log_posteriors[0].exp() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unseen_words_use_smoothing_mass() {
        // fixed vocabulary {a,b,u}; u never seen; positives carry 1 token, negatives 3
        let docs = vec![doc("c", &["a"], true), doc("c", &["b", "b", "b"], false)];
        let config = NbConfig {
            vocabulary: Some(Vocabulary::from_words(["a", "b", "u"])),
            ..Default::default()
        };
        let m = match train_nb(&docs, &config).unwrap() {
            NaiveBayes::Aggregate(m) => m,
            _ => unreachable!(),
        };
        // log odds of [u,u] = 2 ln((1/4)/(1/6)) with equal priors
        let expected = 2.0 * (6.0f64 / 4.0).ln();
        assert!((m.log_odds(&["u", "u"]) - expected).abs() < 1e-12);
        assert!(m.predict(&["u", "u"]).is_smalltalk);
    }

    #[test]
    fn unit_init_denominators() {
        let docs = vec![doc("c", &["a", "a"], true), doc("c", &["b"], false)];
        let config = NbConfig {
            smoothing: Smoothing::UnitInit,
            ..Default::default()
        };
        let nb = train_nb(&docs, &config).unwrap();
        let m = nb.model_for("c").unwrap();
        let a = m.vocab.get("a").unwrap();
        assert!((m.log_cond[1][a] - (3.0f64 / 4.0).ln()).abs() < 1e-12);
        assert!((m.log_cond[0][a] - (1.0f64 / 3.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn missing_class_per_course() {
        let docs = vec![
            doc("c1", &["a"], true),
            doc("c1", &["b"], false),
            doc("c2", &["a"], true),
        ];
        let config = NbConfig {
            mode: NbMode::PerCourse,
            ..Default::default()
        };
        match train_nb(&docs, &config) {
            Err(ClassifyError::MissingClass { scope, .. }) => assert_eq!(scope, "c2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn laplace_conditionals_normalised() {
        let docs = vec![doc("c", &["a", "b", "b"], true), doc("c", &["c", "d"], false)];
        let nb = train_nb(&docs, &NbConfig::default()).unwrap();
        let m = nb.model_for("c").unwrap();
        for class in 0..2 {
            let s: f64 = m.log_cond[class].iter().map(|l| l.exp()).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        let p: f64 = m.log_prior.iter().map(|l| l.exp()).sum();
        assert!((p - 1.0).abs() < 1e-12);
    }
}
