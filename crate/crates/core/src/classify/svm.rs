use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{ClassifyError, LabeledDoc, Scorer, Vocabulary};
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            lambda: 1e-4,
            epochs: 50,
            seed: 0,
        }
    }
}

/// Linear classifier `w · x + b` over raw term counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub vocab: Vocabulary,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub lambda: f64,
}

struct Example {
    x: Vec<(u32, f64)>,
    y: f64,
    weight: f64,
}

/// Identical `(features, label)` pairs merged into one weighted example;
/// weights are normalised to mean one.
fn collapse(docs: &[LabeledDoc], vocab: &Vocabulary) -> Vec<Example> {
    let mut merged: BTreeMap<(Vec<(u32, u64)>, bool), usize> = BTreeMap::new();
    for d in docs {
        let x: Vec<(u32, u64)> = vocab
            .bag_of_words(&d.tokens)
            .into_iter()
            .map(|(i, c)| (i, c.to_bits()))
            .collect();
        *merged.entry((x, d.is_smalltalk)).or_default() += 1;
    }
    let unique = merged.len() as f64;
    let total = docs.len() as f64;
    merged
        .into_iter()
        .map(|((x, pos), count)| Example {
            x: x.into_iter().map(|(i, c)| (i, f64::from_bits(c))).collect(),
            y: if pos { 1.0 } else { -1.0 },
            weight: count as f64 * unique / total,
        })
        .collect()
}

/// Pegasos stochastic sub-gradient descent with step `1/(λt)`; the bias is a
/// constant feature and is regularised with the weights.
pub fn train_svm(docs: &[LabeledDoc], vocab: Vocabulary, config: &SvmConfig) -> Result<SvmModel, ClassifyError> {
    for (pos, name) in [(true, "small_talk"), (false, "course_specific")] {
        if !docs.iter().any(|d| d.is_smalltalk == pos) {
            return Err(ClassifyError::MissingClass {
                scope: "svm training set".into(),
                class: name,
            });
        }
    }
    let examples = collapse(docs, &vocab);
    let lambda = config.lambda;
    // w = scale * v, so the shrink step is O(1)
    let mut v = vec![0.0; vocab.len()];
    let mut vb = 0.0;
    let mut scale = 1.0;
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let mut rng = seeded(config.seed);
    let mut t = 0u64;
    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let ex = &examples[i];
            let dot: f64 = ex.x.iter().map(|&(j, c)| v[j as usize] * c).sum::<f64>() + vb;
            let margin = ex.y * scale * dot;
            let shrink = 1.0 - eta * lambda;
            if shrink <= 0.0 {
                v.iter_mut().for_each(|x| *x = 0.0);
                vb = 0.0;
                scale = 1.0;
            } else {
                scale *= shrink;
            }
            if margin < 1.0 {
                let step = eta * ex.y * ex.weight / scale;
                for &(j, c) in &ex.x {
                    v[j as usize] += step * c;
                }
                vb += step;
            }
            if scale < 1e-12 {
                v.iter_mut().for_each(|x| *x *= scale);
                vb *= scale;
                scale = 1.0;
            }
        }
    }
    Ok(SvmModel {
        vocab,
        weights: v.iter().map(|x| x * scale).collect(),
        bias: vb * scale,
        lambda,
    })
}

impl SvmModel {
    pub fn decision<S: AsRef<str>>(&self, tokens: &[S]) -> f64 {
        self.decision_bow(&self.vocab.bag_of_words(tokens))
    }

    fn decision_bow(&self, x: &[(u32, f64)]) -> f64 {
        x.iter().map(|&(j, c)| self.weights[j as usize] * c).sum::<f64>() + self.bias
    }

    /// Regularised training objective `λ/2 (|w|² + b²) + mean hinge loss`.
    pub fn objective(&self, docs: &[LabeledDoc]) -> f64 {
        svm_objective(&self.vocab, &self.weights, self.bias, self.lambda, docs)
    }
}

/// Objective of an arbitrary linear rule `(w, b)` on `docs`.
pub fn svm_objective(vocab: &Vocabulary, weights: &[f64], bias: f64, lambda: f64, docs: &[LabeledDoc]) -> f64 {
    let norm: f64 = weights.iter().map(|w| w * w).sum::<f64>() + bias * bias;
    let hinge: f64 = docs
        .iter()
        .map(|d| {
            let y = if d.is_smalltalk { 1.0 } else { -1.0 };
            let s: f64 = vocab
                .bag_of_words(&d.tokens)
                .iter()
                .map(|&(j, c)| weights[j as usize] * c)
                .sum::<f64>()
                + bias;
            (1.0 - y * s).max(0.0)
        })
        .sum();
    0.5 * lambda * norm + hinge / docs.len().max(1) as f64
}

impl Scorer for SvmModel {
    fn score(&self, doc: &LabeledDoc) -> f64 {
        self.decision(&doc.tokens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(tokens: &[&str], pos: bool) -> LabeledDoc {
        LabeledDoc {
            course_id: "c".into(),
            tokens: tokens.iter().map(|s| s.to_string()).collect(),
            is_smalltalk: pos,
        }
    }

    fn toy() -> Vec<LabeledDoc> {
        vec![
            doc(&["a", "a", "x"], true),
            doc(&["a", "y"], true),
            doc(&["b", "x"], false),
            doc(&["b", "b", "y"], false),
        ]
    }

    #[test]
    fn separates_toy_set() {
        let docs = toy();
        let vocab = Vocabulary::from_docs(&docs);
        let m = train_svm(&docs, vocab, &SvmConfig::default()).unwrap();
        for d in &docs {
            assert_eq!(m.score(d) > 0.0, d.is_smalltalk);
        }
    }

    #[test]
    fn duplicated_training_set_is_identical() {
        let docs = toy();
        let mut doubled = docs.clone();
        doubled.extend(docs.iter().cloned());
        doubled.extend(docs.iter().cloned());
        let vocab = Vocabulary::from_docs(&docs);
        let a = train_svm(&docs, vocab.clone(), &SvmConfig::default()).unwrap();
        let b = train_svm(&doubled, vocab, &SvmConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seed_reproducible() {
        let docs = toy();
        let vocab = Vocabulary::from_docs(&docs);
        let cfg = SvmConfig { seed: 9, ..Default::default() };
        assert_eq!(
            train_svm(&docs, vocab.clone(), &cfg).unwrap(),
            train_svm(&docs, vocab, &cfg).unwrap()
        );
    }

    #[test]
    fn one_class_rejected() {
        let docs = vec![doc(&["a"], true)];
        let vocab = Vocabulary::from_docs(&docs);
        assert!(matches!(
            train_svm(&docs, vocab, &SvmConfig::default()),
            Err(ClassifyError::MissingClass { .. })
        ));
    }

    #[test]
    fn objective_of_zero_rule_is_one() {
        let docs = toy();
        let vocab = Vocabulary::from_docs(&docs);
        let w = vec![0.0; vocab.len()];
        assert!((svm_objective(&vocab, &w, 0.0, 1e-4, &docs) - 1.0).abs() < 1e-15);
    }
}
