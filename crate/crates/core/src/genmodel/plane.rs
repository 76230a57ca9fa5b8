use std::collections::HashSet;

use super::GenerativeSpec;

/// The linear separator built from the small-talk topic support.
///
/// `a` is the indicator of `S0 = Supp(T0)` and `τ = s(½ + c0)ε` with
/// `c0 = Pr_B(S0)(1−ε)/ε`, so that a course thread puts `c0·ε` of its mass
/// on `S0` in expectation and a small-talk thread `(1 + c0)ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingPlane {
    support: HashSet<String>,
    vocab: Vec<String>,
    pub tau: f64,
    pub c0: f64,
    pub s: usize,
    pub epsilon: f64,
}

pub fn separating_plane(spec: &GenerativeSpec) -> SeparatingPlane {
    let support: HashSet<String> = spec.smalltalk_topic.vocab().iter().cloned().collect();
    let eps = spec.epsilon;
    let bg_mass: f64 = spec.smalltalk_topic.vocab().iter().map(|w| spec.background.mass(w)).sum();
    let c0 = if eps > 0.0 { bg_mass * (1.0 - eps) / eps } else { 0.0 };
    let s = spec.s;
    SeparatingPlane {
        support,
        vocab: spec.background.vocab().to_vec(),
        tau: s as f64 * (0.5 + c0) * eps,
        c0,
        s,
        epsilon: eps,
    }
}

impl SeparatingPlane {
    /// `a` over the spec vocabulary, in vocabulary order.
    pub fn weights(&self) -> Vec<f64> {
        self.vocab
            .iter()
            .map(|w| if self.support.contains(w) { 1.0 } else { 0.0 })
            .collect()
    }

    pub fn in_support(&self, word: &str) -> bool {
        self.support.contains(word)
    }

    /// `a · W` for the bag of words of `tokens`.
    pub fn score<S: AsRef<str>>(&self, tokens: &[S]) -> f64 {
        tokens.iter().filter(|t| self.support.contains(t.as_ref())).count() as f64
    }

    /// Small-talk iff `a · W > τ`.
    pub fn is_smalltalk<S: AsRef<str>>(&self, tokens: &[S]) -> bool {
        self.score(tokens) > self.tau
    }

    /// Expected `a · W` of a small-talk thread of length `s`.
    pub fn expected_smalltalk_score(&self) -> f64 {
        self.s as f64 * (1.0 + self.c0) * self.epsilon
    }

    /// Expected `a · W` of a course thread of length `s`.
    pub fn expected_course_score(&self) -> f64 {
        self.s as f64 * self.c0 * self.epsilon
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::UnigramModel;
    use crate::genmodel::SyntheticParams;

    #[test]
    fn empty_support_never_fires() {
        let mut spec = GenerativeSpec::synthetic(&SyntheticParams::default()).unwrap();
        spec.smalltalk_topic = UnigramModel::empty();
        let plane = separating_plane(&spec);
        assert!(plane.weights().iter().all(|&a| a == 0.0));
        assert_eq!(plane.c0, 0.0);
        let all_words: Vec<String> = spec.background.vocab().to_vec();
        assert!(!plane.is_smalltalk(&all_words));
    }

    #[test]
    fn c0_satisfies_both_expectation_identities() {
        let spec = GenerativeSpec::synthetic(&SyntheticParams {
            n: 1000,
            epsilon: 0.25,
            ..Default::default()
        })
        .unwrap();
        let plane = separating_plane(&spec);
        let s0 = spec.smalltalk_topic.vocab();
        let in_course: f64 = s0.iter().map(|w| spec.mixture_mass(Some(0), w)).sum();
        let in_smalltalk: f64 = s0.iter().map(|w| spec.mixture_mass(None, w)).sum();
        assert!((in_course - plane.c0 * 0.25).abs() < 1e-12);
        assert!((in_smalltalk - (0.25 + plane.c0 * 0.25)).abs() < 1e-12);
        assert!((plane.tau - 100.0 * (0.5 + plane.c0) * 0.25).abs() < 1e-12);
    }
}
