use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{CorpusError, CourseMetadata};
use crate::SECONDS_PER_DAY;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Post {
    pub post_id: String,
    pub author_id: String,
    /// UTC seconds.
    pub timestamp: i64,
    pub text: String,
    #[serde(default)]
    pub is_staff: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    SmallTalk,
    Logistics,
    CourseSpecific,
    #[default]
    Unlabeled,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::SmallTalk => "small_talk",
            Label::Logistics => "logistics",
            Label::CourseSpecific => "course_specific",
            Label::Unlabeled => "unlabeled",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s.trim() {
            "small_talk" => Some(Label::SmallTalk),
            "logistics" => Some(Label::Logistics),
            "course_specific" => Some(Label::CourseSpecific),
            "unlabeled" | "" => Some(Label::Unlabeled),
            _ => None,
        }
    }
}

/// A discussion thread. Comments are flattened into `posts`.
///
/// Invariants: at least one post, posts in non-decreasing timestamp order,
/// unique post ids, `created_at` equal to the first post's timestamp.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thread {
    thread_id: String,
    created_at: i64,
    posts: Vec<Post>,
    label: Label,
}

impl Thread {
    pub fn new(thread_id: impl Into<String>, posts: Vec<Post>, label: Label) -> Result<Thread, CorpusError> {
        let thread_id = thread_id.into();
        let violation = |reason: String| CorpusError::InvariantViolation {
            thread_id: thread_id.clone(),
            reason,
        };
        let first = posts.first().ok_or_else(|| violation("thread has no posts".into()))?;
        let created_at = first.timestamp;
        let mut seen = HashSet::with_capacity(posts.len());
        for (i, post) in posts.iter().enumerate() {
            if post.timestamp < 0 {
                return Err(violation(format!("post {} has negative timestamp", post.post_id)));
            }
            if i > 0 && post.timestamp < posts[i - 1].timestamp {
                return Err(violation(format!(
                    "posts out of chronological order at post {}",
                    post.post_id
                )));
            }
            if !seen.insert(post.post_id.as_str()) {
                return Err(violation(format!("duplicate post id {}", post.post_id)));
            }
        }
        Ok(Thread {
            thread_id,
            created_at,
            posts,
            label,
        })
    }

    pub fn thread_id(&self) -> &str {
        &self.thread_id
    }

    pub fn created_at(&self) -> i64 {
        self.created_at
    }

    pub fn posts(&self) -> &[Post] {
        &self.posts
    }

    pub fn label(&self) -> Label {
        self.label
    }

    /// Number of posts, comments included.
    pub fn len(&self) -> usize {
        self.posts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.posts.is_empty()
    }

    /// Distinct authors in order of first appearance.
    pub fn participants(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        self.posts
            .iter()
            .filter(|p| seen.insert(p.author_id.as_str()))
            .map(|p| p.author_id.as_str())
            .collect()
    }
}

/// Course grouping used when summarising by discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Vocational,
    AppliedScience,
    HumanitiesSocial,
}

impl Category {
    /// Vocational wins over quantitative; quantitative non-vocational courses
    /// are applied science; everything else is humanities/social science.
    pub fn from_flags(quantitative: bool, vocational: bool) -> Category {
        match (quantitative, vocational) {
            (_, true) => Category::Vocational,
            (true, false) => Category::AppliedScience,
            (false, false) => Category::HumanitiesSocial,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Vocational => "vocational",
            Category::AppliedScience => "applied_science",
            Category::HumanitiesSocial => "humanities_social",
        }
    }

    pub fn parse(s: &str) -> Option<Category> {
        match s.trim() {
            "vocational" => Some(Category::Vocational),
            "applied_science" => Some(Category::AppliedScience),
            "humanities_social" => Some(Category::HumanitiesSocial),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Course {
    pub course_id: String,
    /// UTC seconds of day 1.
    pub start_date: i64,
    pub threads: Vec<Thread>,
    pub metadata: Option<CourseMetadata>,
    pub category: Category,
}

impl Course {
    pub fn new(course_id: impl Into<String>, start_date: i64, threads: Vec<Thread>) -> Result<Course, CorpusError> {
        let course = Course {
            course_id: course_id.into(),
            start_date,
            threads,
            metadata: None,
            category: Category::HumanitiesSocial,
        };
        course.check_unique_threads()?;
        Ok(course)
    }

    pub(crate) fn check_unique_threads(&self) -> Result<(), CorpusError> {
        let mut seen = HashSet::with_capacity(self.threads.len());
        for t in &self.threads {
            if !seen.insert(t.thread_id()) {
                return Err(CorpusError::InvariantViolation {
                    thread_id: t.thread_id().to_string(),
                    reason: format!("duplicate thread id in course {}", self.course_id),
                });
            }
        }
        Ok(())
    }

    /// 1-based day index of a timestamp relative to the course start.
    pub fn day_index(&self, timestamp: i64) -> i64 {
        (timestamp - self.start_date).div_euclid(SECONDS_PER_DAY) + 1
    }

    pub fn thread(&self, thread_id: &str) -> Option<&Thread> {
        self.threads.iter().find(|t| t.thread_id() == thread_id)
    }

    /// Threads whose creation day lies in `first..=last`.
    pub fn threads_in_days(&self, first: i64, last: i64) -> impl Iterator<Item = &Thread> {
        self.threads.iter().filter(move |t| {
            let d = self.day_index(t.created_at());
            d >= first && d <= last
        })
    }

    pub fn num_posts(&self) -> usize {
        self.threads.iter().map(Thread::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    pub courses: Vec<Course>,
}

impl Corpus {
    pub fn new(courses: Vec<Course>) -> Corpus {
        Corpus { courses }
    }

    pub fn num_courses(&self) -> usize {
        self.courses.len()
    }

    pub fn num_threads(&self) -> usize {
        self.courses.iter().map(|c| c.threads.len()).sum()
    }

    pub fn course(&self, course_id: &str) -> Option<&Course> {
        self.courses.iter().find(|c| c.course_id == course_id)
    }

    pub fn threads(&self) -> impl Iterator<Item = (&Course, &Thread)> {
        self.courses
            .iter()
            .flat_map(|c| c.threads.iter().map(move |t| (c, t)))
    }
}
