//! Two-course parameterisation on which Naive Bayes fails.
//!
//! Course 1 has threads of `√n` words, small-talk probability
//! `p₁ = c·ln n / √n` and `b₁ = ⌈1/p₁⌉` training threads, so a training set
//! usually holds only a handful of positives. Course 2 is almost entirely
//! small-talk (`p₂ = 1 − n^{-d}`) with long threads (`s₂ = n^d`), which skews
//! the prior of a classifier trained across both courses.

use serde::{Deserialize, Serialize};

use super::{GenError, GenerativeSpec, SyntheticParams, TopicProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdversarialParams {
    pub c: f64,
    pub d: f64,
    pub epsilon: f64,
    /// Requested topic support size; shrunk to `n / 4` for tiny vocabularies.
    pub support: usize,
    /// Training threads drawn from course 2.
    pub b2: usize,
    /// Cap on `s₂ = n^d` so sampling stays tractable.
    pub max_thread_len: usize,
    pub seed: u64,
}

impl Default for AdversarialParams {
    fn default() -> Self {
        AdversarialParams {
            c: 4.0,
            d: 2.0,
            epsilon: 0.3,
            support: 50,
            b2: 20,
            max_thread_len: 5_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversarialSpec {
    pub spec: GenerativeSpec,
    pub params: AdversarialParams,
    /// `[b₁, b₂]`.
    pub training_counts: [usize; 2],
    /// `n^d` before capping.
    pub nominal_s2: f64,
}

impl AdversarialSpec {
    pub fn b1(&self) -> usize {
        self.training_counts[0]
    }

    pub fn p1(&self) -> f64 {
        self.spec.p[0]
    }
}

pub fn adversarial_spec(n: usize, params: AdversarialParams) -> Result<AdversarialSpec, GenError> {
    if n < 100 {
        return Err(GenError::InvalidSpec(format!("adversarial construction needs n >= 100, got {n}")));
    }
    let nf = n as f64;
    let s1 = nf.sqrt().round() as usize;
    // c·ln n/√n exceeds 1 for small n; keep course 1 a minority-small-talk course
    let p1 = (params.c * nf.ln() / nf.sqrt()).min(0.5);
    let b1 = (1.0 / p1).ceil() as usize;
    let nominal_s2 = nf.powf(params.d);
    let s2 = (nominal_s2.min(params.max_thread_len as f64)) as usize;
    let p2 = 1.0 - nf.powf(-params.d);
    let mut spec = GenerativeSpec::synthetic(&SyntheticParams {
        n,
        epsilon: params.epsilon,
        support: params.support.min(n / 4).max(1),
        p: vec![p1, p2],
        s: s1,
        seed: params.seed,
        profile: TopicProfile::Uniform,
        background_spread: 1.0,
    })?;
    spec.thread_lengths = vec![s1, s2];
    spec.validate()?;
    Ok(AdversarialSpec {
        spec,
        params,
        training_counts: [b1, params.b2],
        nominal_s2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_ten_thousand_instantiation() {
        let adv = adversarial_spec(10_000, AdversarialParams::default()).unwrap();
        assert_eq!(adv.spec.thread_len(0), 100);
        let expected_b1 = (100.0 / (4.0 * (10_000f64).ln())).ceil() as usize;
        assert_eq!(adv.b1(), expected_b1);
        assert_eq!(adv.b1(), 3);
        assert!((adv.spec.p[1] - (1.0 - 1e-8)).abs() < 1e-15);
        assert_eq!(adv.nominal_s2, 1e8);
        assert_eq!(adv.spec.thread_len(1), 5_000);
        assert!(adv.spec.validate().is_ok());
    }

    #[test]
    fn valid_across_sizes() {
        for n in [100, 101, 500, 1_000, 4_096, 20_000] {
            let adv = adversarial_spec(n, AdversarialParams::default()).unwrap();
            adv.spec.validate().unwrap();
            assert!(adv.p1() > 0.0 && adv.p1() <= 0.5);
        }
    }

    #[test]
    fn rejects_tiny_vocabulary() {
        assert!(adversarial_spec(99, AdversarialParams::default()).is_err());
    }
}
