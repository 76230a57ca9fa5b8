use std::collections::BTreeMap;

use crate::corpus::UnigramModel;
use crate::genmodel::{GenError, GenerativeSpec, SyntheticParams, ThreadSampler, TopicProfile};
use crate::rng::{seeded, trial_seed};

/// A target course (index 0 of the spec) observed day by day against a
/// background drawn from the other courses.
#[derive(Debug, Clone)]
pub struct StreamParams {
    pub n: usize,
    pub epsilon: f64,
    pub support: usize,
    /// Small-talk probability of every course.
    pub p: f64,
    pub profile: TopicProfile,
    /// Number of background courses.
    pub background_courses: usize,
    pub background_tokens: usize,
    /// Course tokens per day.
    pub tokens_per_day: usize,
    pub days: usize,
    pub thread_len: usize,
    pub seed: u64,
}

impl Default for StreamParams {
    fn default() -> Self {
        StreamParams {
            n: 2000,
            epsilon: 0.3,
            support: 50,
            p: 0.5,
            profile: TopicProfile::Uniform,
            background_courses: 1,
            background_tokens: 1_000_000,
            tokens_per_day: 2000,
            days: 20,
            thread_len: 100,
            seed: 0,
        }
    }
}

pub struct TopicStream {
    pub spec: GenerativeSpec,
    pub background: UnigramModel,
    /// `days[d]` holds the threads of day `d + 1`.
    pub days: Vec<Vec<Vec<String>>>,
}

impl TopicStream {
    /// Ground-truth support of the target course topic.
    pub fn target_support(&self) -> Vec<String> {
        self.spec.course_topics[0].vocab().to_vec()
    }
}

pub fn topic_stream(params: &StreamParams) -> Result<TopicStream, GenError> {
    let spec = GenerativeSpec::synthetic(&SyntheticParams {
        n: params.n,
        epsilon: params.epsilon,
        support: params.support,
        p: vec![params.p; 1 + params.background_courses],
        s: params.thread_len,
        seed: params.seed,
        profile: params.profile,
        background_spread: 1.0,
    })?;
    let sampler = ThreadSampler::new(&spec);
    let len = params.thread_len.max(1);
    let mut rng = seeded(trial_seed(params.seed, 0));
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let bg_threads = params.background_tokens.div_ceil(len);
    let mut id_counts = vec![0u64; params.n];
    for j in 0..bg_threads {
        let course = 1 + j % params.background_courses.max(1);
        let course = course.min(spec.num_courses() - 1);
        let (_, ids) = sampler.sample_ids(course, &mut rng)?;
        for id in ids {
            id_counts[id as usize] += 1;
        }
    }
    for (i, &c) in id_counts.iter().enumerate() {
        if c > 0 {
            counts.insert(sampler.vocab()[i].clone(), c);
        }
    }
    let background = UnigramModel::from_counts(counts)?;
    let mut rng = seeded(trial_seed(params.seed, 1));
    let per_day = params.tokens_per_day.div_ceil(len);
    let days = (0..params.days)
        .map(|_| {
            (0..per_day)
                .map(|_| sampler.sample_thread(0, &mut rng).map(|t| t.tokens))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TopicStream { spec, background, days })
}
