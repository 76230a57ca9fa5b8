use serde::Serialize;

use super::StatsError;
use crate::corpus::Course;
use crate::SECONDS_PER_DAY;

/// f(h, t): number of other threads of the course created within `t_days`
/// days before or after `h`, bounds inclusive.
pub fn thread_neighborhood(course: &Course, thread_id: &str, t_days: f64) -> Result<usize, StatsError> {
    let h = course
        .thread(thread_id)
        .ok_or_else(|| StatsError::UnknownThread(thread_id.to_string()))?;
    let radius = t_days * SECONDS_PER_DAY as f64;
    Ok(course
        .threads
        .iter()
        .filter(|o| o.thread_id() != thread_id && ((o.created_at() - h.created_at()) as f64).abs() <= radius)
        .count())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborhoodRow {
    pub thread_id: String,
    pub f: usize,
    /// Number of posts.
    pub length: usize,
}

/// f(h, t) and length for every thread, in course order.
pub fn neighborhood_counts(course: &Course, t_days: f64) -> Vec<NeighborhoodRow> {
    let radius = t_days * SECONDS_PER_DAY as f64;
    let mut times: Vec<i64> = course.threads.iter().map(|t| t.created_at()).collect();
    times.sort_unstable();
    course
        .threads
        .iter()
        .map(|t| {
            let c = t.created_at();
            let lo = times.partition_point(|&x| ((c - x) as f64) > radius);
            let hi = times.partition_point(|&x| ((x - c) as f64) <= radius);
            NeighborhoodRow {
                thread_id: t.thread_id().to_string(),
                f: hi - lo - 1,
                length: t.len(),
            }
        })
        .collect()
}

/// Splits items into `f ≤ threshold` and `f > threshold`.
pub fn partition_by_threshold<T: Clone>(items: &[T], f: impl Fn(&T) -> usize, threshold: usize) -> (Vec<T>, Vec<T>) {
    items.iter().cloned().partition(|x| f(x) <= threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Label, Post, Thread};

    fn thread(id: &str, hour: i64) -> Thread {
        let p = Post {
            post_id: format!("{id}p"),
            author_id: "u".into(),
            timestamp: hour * 3600,
            text: String::new(),
            is_staff: false,
        };
        Thread::new(id, vec![p], Label::Unlabeled).unwrap()
    }

    #[test]
    fn hand_counts() {
        let c = Course::new("c", 0, vec![thread("a", 0), thread("b", 12), thread("c", 36)]).unwrap();
        assert_eq!(thread_neighborhood(&c, "b", 1.0).unwrap(), 2);
        assert_eq!(thread_neighborhood(&c, "a", 1.0).unwrap(), 1);
        assert_eq!(thread_neighborhood(&c, "c", 1.0).unwrap(), 1);
        let rows = neighborhood_counts(&c, 1.0);
        assert_eq!(rows.iter().map(|r| r.f).collect::<Vec<_>>(), [1, 2, 1]);
        let lone = Course::new("l", 0, vec![thread("x", 5)]).unwrap();
        assert_eq!(thread_neighborhood(&lone, "x", 1.0).unwrap(), 0);
        assert!(thread_neighborhood(&lone, "zz", 1.0).is_err());
    }

    #[test]
    fn window_edges_inclusive() {
        // July 2 3pm with neighbours exactly one day either side and one just outside
        let h = 24 * 32 + 15;
        let c = Course::new("c", 0, vec![thread("h", h), thread("before", h - 24), thread("after", h + 24), thread("out", h + 25)]).unwrap();
        assert_eq!(thread_neighborhood(&c, "h", 1.0).unwrap(), 2);
        assert_eq!(neighborhood_counts(&c, 1.0)[0].f, 2);
    }

    #[test]
    fn threshold_inclusive() {
        let (g1, g2) = partition_by_threshold(&[100usize, 140, 141], |&x| x, 140);
        assert_eq!((g1.len(), g2.len()), (2, 1));
        let (g1, g2) = partition_by_threshold(&[1usize, 2], |&x| x, 140);
        assert_eq!(g1.len(), 2);
        assert!(g2.is_empty());
    }
}
