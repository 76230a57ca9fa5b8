use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rayon::prelude::*;

use super::{GenError, GenerativeSpec};
use crate::corpus::{Corpus, Course, Label, Post, Thread, UnigramModel};
use crate::rng::{course_seed, seeded, ForumRng};
use crate::SECONDS_PER_DAY;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledThread {
    pub course_index: usize,
    /// Ground truth.
    pub is_smalltalk: bool,
    pub tokens: Vec<String>,
}

struct Table {
    ids: Vec<u32>,
    index: Option<WeightedIndex<f64>>,
}

impl Table {
    fn new(model: &UnigramModel, vocab: &[String]) -> Table {
        let ids = model
            .vocab()
            .iter()
            .map(|w| vocab.binary_search(w).expect("topic word in vocabulary") as u32)
            .collect();
        let index = (!model.is_empty()).then(|| WeightedIndex::new(model.masses()).expect("valid masses"));
        Table { ids, index }
    }

    fn draw(&self, rng: &mut ForumRng) -> Option<u32> {
        self.index.as_ref().map(|ix| self.ids[ix.sample(rng)])
    }
}

/// Precomputed sampling tables for one spec.
///
/// Draw order per thread: one uniform for the label (`< p_i` means
/// small-talk), then per token one uniform (`< ε` selects the topic) followed
/// by one categorical draw. A topic with empty support falls back to the
/// background.
pub struct ThreadSampler<'a> {
    spec: &'a GenerativeSpec,
    background: Table,
    smalltalk: Table,
    courses: Vec<Table>,
}

impl<'a> ThreadSampler<'a> {
    pub fn new(spec: &'a GenerativeSpec) -> ThreadSampler<'a> {
        let vocab = spec.background.vocab();
        ThreadSampler {
            spec,
            background: Table::new(&spec.background, vocab),
            smalltalk: Table::new(&spec.smalltalk_topic, vocab),
            courses: spec.course_topics.iter().map(|t| Table::new(t, vocab)).collect(),
        }
    }

    pub fn spec(&self) -> &GenerativeSpec {
        self.spec
    }

    pub fn vocab(&self) -> &[String] {
        self.spec.background.vocab()
    }

    fn check(&self, course: usize) -> Result<(), GenError> {
        if course >= self.courses.len() {
            return Err(GenError::NoSuchCourse {
                index: course,
                courses: self.courses.len(),
            });
        }
        Ok(())
    }

    /// Samples a thread as vocabulary indices.
    pub fn sample_ids(&self, course: usize, rng: &mut ForumRng) -> Result<(bool, Vec<u32>), GenError> {
        self.check(course)?;
        let is_smalltalk = rng.random::<f64>() < self.spec.p[course];
        let len = self.spec.thread_len(course);
        let ids = self.sample_tokens(course, is_smalltalk, len, rng);
        Ok((is_smalltalk, ids))
    }

    /// Samples `len` token ids from `D0` or `D1(course)` directly.
    pub fn sample_tokens(&self, course: usize, smalltalk: bool, len: usize, rng: &mut ForumRng) -> Vec<u32> {
        let topic = if smalltalk { &self.smalltalk } else { &self.courses[course] };
        let eps = self.spec.epsilon;
        (0..len)
            .map(|_| {
                let from_topic = rng.random::<f64>() < eps;
                let drawn = if from_topic { topic.draw(rng) } else { None };
                drawn.unwrap_or_else(|| self.background.draw(rng).expect("nonempty background"))
            })
            .collect()
    }

    pub fn words(&self, ids: &[u32]) -> Vec<String> {
        let vocab = self.vocab();
        ids.iter().map(|&i| vocab[i as usize].clone()).collect()
    }

    pub fn sample_thread(&self, course: usize, rng: &mut ForumRng) -> Result<SampledThread, GenError> {
        let (is_smalltalk, ids) = self.sample_ids(course, rng)?;
        Ok(SampledThread {
            course_index: course,
            is_smalltalk,
            tokens: self.words(&ids),
        })
    }

    /// Thread of a fixed class, for building balanced test sets.
    pub fn sample_labeled(&self, course: usize, smalltalk: bool, rng: &mut ForumRng) -> Result<SampledThread, GenError> {
        self.check(course)?;
        let ids = self.sample_tokens(course, smalltalk, self.spec.thread_len(course), rng);
        Ok(SampledThread {
            course_index: course,
            is_smalltalk: smalltalk,
            tokens: self.words(&ids),
        })
    }
}

/// Convenience wrapper building the tables on each call; use
/// [`ThreadSampler`] in loops.
pub fn sample_thread(spec: &GenerativeSpec, course: usize, rng: &mut ForumRng) -> Result<SampledThread, GenError> {
    ThreadSampler::new(spec).sample_thread(course, rng)
}

/// How sampled threads are laid out in time and attributed to authors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusLayout {
    pub start_date: i64,
    pub threads_per_day: usize,
}

impl Default for CorpusLayout {
    fn default() -> Self {
        CorpusLayout {
            start_date: 0,
            threads_per_day: 10,
        }
    }
}

/// Labeled synthetic corpus with `threads_per_course[i]` threads in course
/// `i`. Course `i` (0-based) is named `course-{i+1}` and sampled from its own
/// stream seeded with `spec.seed ^ i`. Each thread is a single post; thread
/// `j` is created on day `j / threads_per_day + 1`.
pub fn sample_corpus(spec: &GenerativeSpec, threads_per_course: &[usize], layout: CorpusLayout) -> Result<Corpus, GenError> {
    if threads_per_course.len() != spec.num_courses() {
        return Err(GenError::InvalidSpec(format!(
            "{} thread counts for {} courses",
            threads_per_course.len(),
            spec.num_courses()
        )));
    }
    let sampler = ThreadSampler::new(spec);
    let per_day = layout.threads_per_day.max(1);
    let courses = threads_per_course
        .par_iter()
        .enumerate()
        .map(|(i, &count)| {
            let mut rng = seeded(course_seed(spec.seed, i));
            let course_id = format!("course-{}", i + 1);
            let mut threads = Vec::with_capacity(count);
            for j in 0..count {
                let st = sampler.sample_thread(i, &mut rng)?;
                let created_at = layout.start_date
                    + (j / per_day) as i64 * SECONDS_PER_DAY
                    + (j % per_day) as i64 * (SECONDS_PER_DAY / per_day as i64);
                let thread_id = format!("c{}-t{:06}", i + 1, j);
                let post = Post {
                    post_id: format!("{thread_id}-p0"),
                    author_id: format!("c{}-u{:06}", i + 1, j),
                    timestamp: created_at,
                    text: st.tokens.join(" "),
                    is_staff: false,
                };
                let label = if st.is_smalltalk {
                    Label::SmallTalk
                } else {
                    Label::CourseSpecific
                };
                threads.push(Thread::new(thread_id, vec![post], label)?);
            }
            Ok(Course::new(course_id, layout.start_date, threads)?)
        })
        .collect::<Result<Vec<_>, GenError>>()?;
    Ok(Corpus::new(courses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genmodel::{SyntheticParams, TopicProfile};

    fn small_spec(p: f64, eps: f64) -> GenerativeSpec {
        let mut spec = GenerativeSpec::synthetic(&SyntheticParams {
            n: 200,
            support: 10,
            p: vec![p],
            s: 50,
            ..Default::default()
        })
        .unwrap();
        spec.epsilon = eps;
        spec
    }

    #[test]
    fn epsilon_zero_draws_only_background() {
        let spec = small_spec(0.5, 0.0);
        let sampler = ThreadSampler::new(&spec);
        let mut rng = seeded(1);
        // with a uniform background, topic words appear at their background rate
        let mut topic_hits = 0usize;
        let mut total = 0usize;
        for _ in 0..400 {
            let t = sampler.sample_thread(0, &mut rng).unwrap();
            total += t.tokens.len();
            topic_hits += t.tokens.iter().filter(|w| spec.course_topics[0].contains(w)).count();
        }
        let rate = topic_hits as f64 / total as f64;
        let expected = 10.0 / 200.0;
        let sd = (expected * (1.0 - expected) / total as f64).sqrt();
        assert!((rate - expected).abs() < 4.0 * sd, "rate {rate}");
    }

    #[test]
    fn p_one_always_smalltalk() {
        let spec = small_spec(1.0, 0.3);
        let sampler = ThreadSampler::new(&spec);
        let mut rng = seeded(2);
        assert!((0..200).all(|_| sampler.sample_thread(0, &mut rng).unwrap().is_smalltalk));
    }

    #[test]
    fn bad_course_index() {
        let spec = small_spec(0.5, 0.3);
        let mut rng = seeded(0);
        assert!(matches!(
            sample_thread(&spec, 3, &mut rng),
            Err(GenError::NoSuchCourse { .. })
        ));
    }

    #[test]
    fn corpus_is_reproducible() {
        let spec = GenerativeSpec::synthetic(&SyntheticParams {
            n: 300,
            support: 20,
            p: vec![0.3, 0.6],
            s: 30,
            seed: 99,
            profile: TopicProfile::Geometric(0.9),
            ..Default::default()
        })
        .unwrap();
        let a = sample_corpus(&spec, &[25, 40], CorpusLayout::default()).unwrap();
        let b = sample_corpus(&spec, &[25, 40], CorpusLayout::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num_threads(), 65);
    }

    #[test]
    fn zero_count_gives_empty_course() {
        let spec = small_spec(0.5, 0.3);
        let c = sample_corpus(&spec, &[0], CorpusLayout::default()).unwrap();
        assert_eq!(c.num_courses(), 1);
        assert!(c.courses[0].threads.is_empty());
    }
}
