use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::GenError;
use crate::corpus::UnigramModel;

/// Constants the spec invariants are checked against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecBounds {
    /// Lower bound `ℓ > 1` on `Pr_{D1(i)}(w) / Pr_B(w)` over `Supp(T_i)`.
    pub ratio_lower: f64,
    /// Upper bound `u > ℓ` on the same ratio.
    pub ratio_upper: f64,
    /// Largest allowed max/min ratio of background masses.
    pub background_spread: f64,
}

impl Default for SpecBounds {
    fn default() -> Self {
        SpecBounds {
            ratio_lower: 1.1,
            ratio_upper: 1e6,
            background_spread: 4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerativeSpec {
    /// Vocabulary size `|C|`.
    pub n: usize,
    /// Topical mixing weight.
    pub epsilon: f64,
    pub background: UnigramModel,
    pub smalltalk_topic: UnigramModel,
    pub course_topics: Vec<UnigramModel>,
    /// Small-talk probability per course.
    pub p: Vec<f64>,
    /// Thread length in words.
    pub s: usize,
    /// Optional per-course thread lengths overriding `s`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub thread_lengths: Vec<usize>,
    pub seed: u64,
    #[serde(default)]
    pub bounds: SpecBounds,
}

/// Shape of a topical distribution over its support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TopicProfile {
    Uniform,
    /// Mass of the r-th support word proportional to `ratio^r`.
    Geometric(f64),
}

/// Parameters for [`GenerativeSpec::synthetic`].
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticParams {
    pub n: usize,
    pub epsilon: f64,
    pub support: usize,
    pub p: Vec<f64>,
    pub s: usize,
    pub seed: u64,
    pub profile: TopicProfile,
    /// Max/min ratio of the background masses; 1 gives a uniform background.
    pub background_spread: f64,
}

impl Default for SyntheticParams {
    fn default() -> Self {
        SyntheticParams {
            n: 2000,
            epsilon: 0.3,
            support: 50,
            p: vec![0.5],
            s: 100,
            seed: 0,
            profile: TopicProfile::Uniform,
            background_spread: 1.0,
        }
    }
}

/// Name of vocabulary word `i` in a vocabulary of `n` words, zero padded so
/// lexicographic and numeric order agree.
pub fn word_name(i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).to_string().len();
    format!("w{i:0width$}")
}

fn topic_model(range: std::ops::Range<usize>, n: usize, profile: TopicProfile) -> Result<UnigramModel, GenError> {
    let weights = range.enumerate().map(|(r, i)| {
        let w = match profile {
            TopicProfile::Uniform => 1.0,
            TopicProfile::Geometric(ratio) => ratio.powi(r as i32),
        };
        (word_name(i, n), w)
    });
    Ok(UnigramModel::from_weights(weights)?)
}

impl GenerativeSpec {
    /// Vocabulary `w0..w{n-1}`; `T0` on the first `support` words, `T_i` on
    /// the `i`-th following block.
    pub fn synthetic(params: &SyntheticParams) -> Result<GenerativeSpec, GenError> {
        let m = params.p.len();
        let k = params.support;
        if k == 0 || (m + 1) * k > params.n {
            return Err(GenError::InvalidSpec(format!(
                "{} topics of support {} do not fit in a vocabulary of {}",
                m + 1,
                k,
                params.n
            )));
        }
        let n = params.n;
        let spread = params.background_spread.max(1.0);
        // deterministic low-discrepancy weights in [1, spread]
        let background = UnigramModel::from_weights((0..n).map(|i| {
            let frac = (i as f64 * 0.618_033_988_749_894_9).fract();
            (word_name(i, n), 1.0 + (spread - 1.0) * frac)
        }))?;
        let smalltalk_topic = topic_model(0..k, n, params.profile)?;
        let course_topics = (1..=m)
            .map(|i| topic_model(i * k..(i + 1) * k, n, params.profile))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = GenerativeSpec {
            n,
            epsilon: params.epsilon,
            background,
            smalltalk_topic,
            course_topics,
            p: params.p.clone(),
            s: params.s,
            thread_lengths: Vec::new(),
            seed: params.seed,
            bounds: SpecBounds {
                background_spread: spread.max(SpecBounds::default().background_spread),
                ..SpecBounds::default()
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn num_courses(&self) -> usize {
        self.course_topics.len()
    }

    pub fn thread_len(&self, course: usize) -> usize {
        self.thread_lengths.get(course).copied().unwrap_or(self.s)
    }

    /// Probability of `word` under `D0` (`course == None`) or `D1(course)`.
    pub fn mixture_mass(&self, course: Option<usize>, word: &str) -> f64 {
        let topic = match course {
            None => &self.smalltalk_topic,
            Some(i) => &self.course_topics[i],
        };
        if topic.is_empty() {
            return self.background.mass(word);
        }
        (1.0 - self.epsilon) * self.background.mass(word) + self.epsilon * topic.mass(word)
    }

    /// Marginal token probability in course `i`: `(1-p_i) D1(i) + p_i D0`.
    pub fn marginal_mass(&self, course: usize, word: &str) -> f64 {
        let p = self.p[course];
        (1.0 - p) * self.mixture_mass(Some(course), word) + p * self.mixture_mass(None, word)
    }

    /// Checks every structural invariant; the error lists all violations.
    pub fn validate(&self) -> Result<(), GenError> {
        let mut problems = Vec::new();
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            problems.push(format!("epsilon {} not in (0,1)", self.epsilon));
        }
        if self.p.len() != self.course_topics.len() {
            problems.push(format!(
                "{} small-talk probabilities for {} courses",
                self.p.len(),
                self.course_topics.len()
            ));
        }
        if let Some(p) = self.p.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            problems.push(format!("small-talk probability {p} not in [0,1]"));
        }
        if !self.thread_lengths.is_empty() && self.thread_lengths.len() != self.course_topics.len() {
            problems.push("thread_lengths must be empty or have one entry per course".into());
        }
        if self.background.len() != self.n {
            problems.push(format!(
                "background support has {} words, expected n = {}",
                self.background.len(),
                self.n
            ));
        }
        for model in std::iter::once(&self.background)
            .chain(std::iter::once(&self.smalltalk_topic))
            .chain(&self.course_topics)
        {
            if let Err(e) = model.validate() {
                problems.push(e.to_string());
            }
        }
        let b = self.bounds;
        if !(1.0 < b.ratio_lower && b.ratio_lower < b.ratio_upper) {
            problems.push(format!("ratio bounds must satisfy 1 < {} < {}", b.ratio_lower, b.ratio_upper));
        }
        let mut seen: HashSet<&str> = HashSet::new();
        for (t, topic) in std::iter::once(&self.smalltalk_topic).chain(&self.course_topics).enumerate() {
            for w in topic.vocab() {
                if !self.background.contains(w) {
                    problems.push(format!("topic {t} word {w} is outside the vocabulary"));
                }
                if !seen.insert(w.as_str()) {
                    problems.push(format!("topic supports overlap on {w}"));
                }
            }
        }
        for (i, topic) in self.course_topics.iter().enumerate() {
            for w in topic.vocab() {
                let bg = self.background.mass(w);
                if bg <= 0.0 {
                    continue;
                }
                let ratio = self.mixture_mass(Some(i), w) / bg;
                if ratio < b.ratio_lower || ratio > b.ratio_upper {
                    problems.push(format!(
                        "course {i} word {w}: Pr_D1/Pr_B = {ratio:.4} outside [{}, {}]",
                        b.ratio_lower, b.ratio_upper
                    ));
                }
            }
        }
        let masses = self.background.masses();
        if !masses.is_empty() {
            let max = masses.iter().cloned().fold(f64::MIN, f64::max);
            let min = masses.iter().cloned().fold(f64::MAX, f64::min);
            if max / min > b.background_spread {
                problems.push(format!(
                    "background max/min mass ratio {:.3} exceeds {}",
                    max / min,
                    b.background_spread
                ));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(GenError::InvalidSpec(problems.join("; ")))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    pub fn from_json(text: &str) -> Result<GenerativeSpec, GenError> {
        let spec: GenerativeSpec =
            serde_json::from_str(text).map_err(|e| GenError::InvalidSpec(format!("spec JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }
}
