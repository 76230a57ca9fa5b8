use std::collections::HashSet;

use serde::Serialize;

use super::StatsError;
use crate::corpus::{Corpus, Course};

/// Daily activity of one course over days `1..=y.len()`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActivitySeries {
    pub course_id: String,
    /// Posts per day.
    pub y: Vec<f64>,
    /// Distinct authors per day.
    pub z: Vec<f64>,
}

impl ActivitySeries {
    pub fn days(&self) -> usize {
        self.y.len()
    }
}

/// Counts posts and distinct authors per day for days `1..=days`. Posts
/// outside that range are ignored.
pub fn build_series(course: &Course, days: usize) -> ActivitySeries {
    let mut y = vec![0.0; days];
    let mut users: Vec<HashSet<&str>> = vec![HashSet::new(); days];
    for t in &course.threads {
        for p in t.posts() {
            let d = course.day_index(p.timestamp);
            if d >= 1 && d as usize <= days {
                y[d as usize - 1] += 1.0;
                users[d as usize - 1].insert(p.author_id.as_str());
            }
        }
    }
    ActivitySeries {
        course_id: course.course_id.clone(),
        y,
        z: users.iter().map(|u| u.len() as f64).collect(),
    }
}

/// Series for every course. The length is the metadata duration when present,
/// otherwise the last day with a post.
pub fn build_all_series(corpus: &Corpus) -> Vec<ActivitySeries> {
    corpus
        .courses
        .iter()
        .map(|c| {
            let days = match &c.metadata {
                Some(m) => m.duration_days as usize,
                None => c
                    .threads
                    .iter()
                    .flat_map(|t| t.posts())
                    .map(|p| c.day_index(p.timestamp))
                    .max()
                    .unwrap_or(0)
                    .max(0) as usize,
            };
            build_series(c, days)
        })
        .collect()
}

/// Course-level regressors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CourseFactors {
    pub q: f64,
    pub v: f64,
    /// Video hours.
    pub l: f64,
    /// Duration in days.
    pub d: f64,
    pub p: f64,
    /// Raw staff post count.
    pub s: f64,
    pub h: f64,
    /// Median of the first three daily post counts.
    pub m: f64,
    /// Distinct authors over the first three days.
    pub m_prime: f64,
}

/// Factors of a course from its metadata and posts.
pub fn course_factors(course: &Course, series: &ActivitySeries) -> Result<CourseFactors, StatsError> {
    let meta = course
        .metadata
        .as_ref()
        .ok_or_else(|| StatsError::MissingMetadata(course.course_id.clone()))?;
    let mut first: Vec<f64> = series.y.iter().take(3).copied().collect();
    first.resize(3, 0.0);
    first.sort_by(f64::total_cmp);
    let early: HashSet<&str> = course
        .threads
        .iter()
        .flat_map(|t| t.posts())
        .filter(|p| (1..=3).contains(&course.day_index(p.timestamp)))
        .map(|p| p.author_id.as_str())
        .collect();
    Ok(CourseFactors {
        q: meta.quantitative as f64,
        v: meta.vocational as f64,
        l: meta.video_hours,
        d: meta.duration_days as f64,
        p: meta.peer_graded as f64,
        s: meta.staff_posts as f64,
        h: meta.graded_homework as f64,
        m: first[1],
        m_prime: early.len() as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrendFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub n: usize,
}

/// Least-squares line through `(t, y_t)` with `t = 1, 2, ...`.
pub fn fit_course_trend(y: &[f64]) -> Result<TrendFit, StatsError> {
    let n = y.len();
    if n < 2 {
        return Err(StatsError::DegenerateDesign(format!("{n} day(s); a trend needs at least 2")));
    }
    let nf = n as f64;
    let t_mean = (nf + 1.0) / 2.0;
    let y_mean = y.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (i, &v) in y.iter().enumerate() {
        let dt = i as f64 + 1.0 - t_mean;
        sxx += dt * dt;
        sxy += dt * (v - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * t_mean;
    let slope_se = if n > 2 {
        let ssr: f64 = y
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let r = v - intercept - slope * (i as f64 + 1.0);
                r * r
            })
            .sum();
        (ssr / (nf - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    Ok(TrendFit {
        slope,
        intercept,
        slope_se,
        n,
    })
}

/// Consecutive differences `y[t+1] − y[t]` with the `⌈trim·m⌉` largest and
/// smallest removed, in time order. Among tied values the later ones are
/// dropped first at the top and the earlier ones at the bottom.
pub fn trim_and_diff(y: &[f64], trim: f64) -> Result<Vec<f64>, StatsError> {
    if !(0.0..0.5).contains(&trim) {
        return Err(StatsError::InvalidParameter(format!("trim fraction {trim} outside [0, 0.5)")));
    }
    let diffs: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let m = diffs.len();
    // 0.03 * 100 evaluates to 3.0000000000000004
    let cut = ((trim * m as f64) - 1e-9).ceil().max(0.0) as usize;
    if 2 * cut >= m {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| diffs[a].total_cmp(&diffs[b]).then(a.cmp(&b)));
    let mut keep = vec![true; m];
    for &i in order[..cut].iter().chain(&order[m - cut..]) {
        keep[i] = false;
    }
    Ok(diffs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(d, _)| d).collect())
}
