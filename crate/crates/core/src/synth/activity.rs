use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::corpus::{attach_metadata, Category, Corpus, Course, CourseMetadata, Label, Post, Thread};
use crate::genmodel::{GenError, GenerativeSpec, SyntheticParams, ThreadSampler};
use crate::rng::{course_seed, seeded};
use crate::SECONDS_PER_DAY;

/// Courses with declining daily activity, fading small-talk and random
/// metadata.
#[derive(Debug, Clone)]
pub struct ActivityParams {
    pub courses: usize,
    /// Longest course in days; courses run 0, 7 or 14 days shorter.
    pub days: usize,
    /// Range of the expected number of threads on day 1.
    pub initial_threads: (f64, f64),
    /// Fraction of the initial rate still present on the last day.
    pub final_fraction: (f64, f64),
    /// Mean replies per thread.
    pub mean_replies: f64,
    /// Small-talk probability `floor + peak·exp(−(t−1)/decay)` on day `t`.
    pub smalltalk_floor: f64,
    pub smalltalk_peak: f64,
    pub smalltalk_decay: f64,
    /// Words per post.
    pub post_len: usize,
    pub users: usize,
    pub staff_fraction: f64,
    pub vocab: usize,
    pub seed: u64,
}

impl Default for ActivityParams {
    fn default() -> Self {
        ActivityParams {
            courses: 12,
            days: 56,
            initial_threads: (40.0, 120.0),
            final_fraction: (0.1, 0.5),
            mean_replies: 3.0,
            smalltalk_floor: 0.05,
            smalltalk_peak: 0.4,
            smalltalk_decay: 10.0,
            post_len: 12,
            users: 600,
            staff_fraction: 0.03,
            vocab: 2000,
            seed: 0,
        }
    }
}

/// Day-1 midnight of the first course; later courses start a week apart.
const FIRST_START: i64 = 1_600_041_600;

/// Labeled corpus with metadata. Thread text follows the generative model,
/// with course `i` drawing from topic `i`.
pub fn activity_corpus(params: &ActivityParams) -> Result<Corpus, GenError> {
    let support = 50;
    let spec = GenerativeSpec::synthetic(&SyntheticParams {
        n: params.vocab,
        epsilon: 0.3,
        support,
        p: vec![0.5; params.courses],
        s: params.post_len,
        seed: params.seed,
        ..Default::default()
    })?;
    let sampler = ThreadSampler::new(&spec);
    let mut courses = Vec::with_capacity(params.courses);
    let mut metadata = Vec::with_capacity(params.courses);
    for i in 0..params.courses {
        let mut rng = seeded(course_seed(params.seed, i));
        let course_id = format!("course-{}", i + 1);
        let start = FIRST_START + 7 * i as i64 * SECONDS_PER_DAY;
        let a = rng.random_range(params.initial_threads.0..=params.initial_threads.1);
        let last = a * rng.random_range(params.final_fraction.0..=params.final_fraction.1);
        // durations differ by whole weeks so D is not collinear with the intercept
        let days = params.days.saturating_sub(7 * rng.random_range(0..=2usize)).max(2);
        let replies = Poisson::new(params.mean_replies.max(1e-9)).expect("positive rate");
        let mut threads = Vec::new();
        let mut staff_posts = 0u64;
        for d in 0..days {
            let rate = a + (last - a) * d as f64 / (days - 1) as f64;
            let count = Poisson::new(rate.max(1e-9)).expect("positive rate").sample(&mut rng) as usize;
            let p_small =
                params.smalltalk_floor + params.smalltalk_peak * (-(d as f64) / params.smalltalk_decay).exp();
            for j in 0..count {
                let small = rng.random_bool(p_small.clamp(0.0, 1.0));
                let created = start + d as i64 * SECONDS_PER_DAY + rng.random_range(0..SECONDS_PER_DAY / 2);
                let thread_id = format!("c{}-d{:03}-{:03}", i + 1, d + 1, j);
                let n_posts = 1 + replies.sample(&mut rng) as usize;
                let mut t = created;
                let mut posts = Vec::with_capacity(n_posts);
                for k in 0..n_posts {
                    if k > 0 {
                        t += rng.random_range(60..4 * 3600);
                    }
                    let is_staff = k > 0 && rng.random_bool(params.staff_fraction);
                    staff_posts += u64::from(is_staff);
                    let author_id = if is_staff {
                        format!("staff-{}", i + 1)
                    } else {
                        format!("u{:05}", rng.random_range(0..params.users))
                    };
                    let ids = sampler.sample_tokens(i, small, params.post_len, &mut rng);
                    posts.push(Post {
                        post_id: format!("{thread_id}-p{k}"),
                        author_id,
                        timestamp: t,
                        text: sampler.words(&ids).join(" "),
                        is_staff,
                    });
                }
                let label = if small { Label::SmallTalk } else { Label::CourseSpecific };
                threads.push(Thread::new(thread_id, posts, label)?);
            }
        }
        threads.sort_by(|a, b| a.created_at().cmp(&b.created_at()).then_with(|| a.thread_id().cmp(b.thread_id())));
        let quantitative = rng.random_bool(0.5);
        let vocational = rng.random_bool(0.3);
        metadata.push(CourseMetadata {
            course_id: course_id.clone(),
            start_date: start,
            quantitative: u8::from(quantitative),
            vocational: u8::from(vocational),
            video_hours: (rng.random_range(5.0..30.0f64) * 10.0).round() / 10.0,
            duration_days: days as u32,
            peer_graded: u8::from(rng.random_bool(0.4)),
            staff_posts,
            graded_homework: rng.random_range(3..13),
            category: Category::from_flags(quantitative, vocational),
        });
        courses.push(Course::new(course_id, start, threads)?);
    }
    let mut corpus = Corpus::new(courses);
    attach_metadata(&mut corpus, metadata)?;
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_metadata_and_declines() {
        let params = ActivityParams {
            courses: 2,
            days: 30,
            ..Default::default()
        };
        let corpus = activity_corpus(&params).unwrap();
        assert_eq!(corpus.num_courses(), 2);
        for c in &corpus.courses {
            assert!(c.metadata.is_some());
            let early = c.threads_in_days(1, 5).count();
            let late = c.threads_in_days(26, 30).count();
            assert!(early > late, "{early} vs {late}");
        }
        assert_eq!(corpus, activity_corpus(&params).unwrap());
    }
}
