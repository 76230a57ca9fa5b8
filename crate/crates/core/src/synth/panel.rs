use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::rng::{seeded, ForumRng};
use crate::stats::{panel_design, ActivitySeries, CourseFactors, PanelTarget};

/// Linear panel `y = Xβ + N(0, σ²)` over the table regressors.
#[derive(Debug, Clone)]
pub struct PanelParams {
    pub courses: usize,
    pub days: usize,
    /// One coefficient per column of the `Y` design, in table order.
    pub beta: Vec<f64>,
    pub sigma: f64,
    pub staff_scale: f64,
    pub seed: u64,
}

/// Estimates of the posts model reported for the original course panel,
/// used as default ground truth.
pub const REFERENCE_BETA: [f64; 18] = [
    18.276, 1.511, 3.328, -0.071, 0.034, -0.631, -0.168, 0.0, -0.007, -13.975, -135.567, 1.960, -0.561, 88.289, 6.050, 1.398, 0.481,
    -1.864,
];

impl Default for PanelParams {
    fn default() -> Self {
        PanelParams {
            courses: 60,
            days: 70,
            beta: REFERENCE_BETA.to_vec(),
            sigma: 20.0,
            staff_scale: 100.0,
            seed: 0,
        }
    }
}

pub struct SyntheticPanel {
    pub panel: Vec<(ActivitySeries, CourseFactors)>,
    pub beta: Vec<f64>,
}

fn random_factors(rng: &mut ForumRng) -> CourseFactors {
    CourseFactors {
        q: f64::from(rng.random_bool(0.5)),
        v: f64::from(rng.random_bool(0.3)),
        l: rng.random_range(5.0..30.0),
        d: 7.0 * rng.random_range(6..13) as f64,
        p: f64::from(rng.random_bool(0.4)),
        s: rng.random_range(50..500) as f64,
        h: rng.random_range(3..13) as f64,
        m: rng.random_range(20.0..200.0),
        m_prime: rng.random_range(50.0..500.0),
    }
}

/// Panel whose posts series follows the `Y` model exactly up to Gaussian
/// noise. `z` repeats `y`.
pub fn coefficient_panel(params: &PanelParams) -> SyntheticPanel {
    let mut rng = seeded(params.seed);
    let noise = Normal::new(0.0, params.sigma.max(0.0)).expect("finite sigma");
    let panel: Vec<(ActivitySeries, CourseFactors)> = (0..params.courses)
        .map(|i| {
            let f = random_factors(&mut rng);
            let blank = ActivitySeries {
                course_id: format!("course-{}", i + 1),
                y: vec![0.0; params.days],
                z: vec![0.0; params.days],
            };
            let design = panel_design(&[(blank.clone(), f.clone())], PanelTarget::Y, params.staff_scale);
            let y: Vec<f64> = (0..params.days)
                .map(|r| {
                    let mean: f64 = design.x.row(r).iter().zip(&params.beta).map(|(a, b)| a * b).sum();
                    mean + if params.sigma > 0.0 { noise.sample(&mut rng) } else { 0.0 }
                })
                .collect();
            (
                ActivitySeries {
                    z: y.clone(),
                    y,
                    ..blank
                },
                f,
            )
        })
        .collect();
    SyntheticPanel {
        panel,
        beta: params.beta.clone(),
    }
}

/// Courses whose daily counts are random walks with Gaussian steps.
#[derive(Debug, Clone)]
pub struct IncrementPanelParams {
    pub courses: usize,
    pub days: usize,
    /// Range of the per-course step mean μ_i.
    pub mu: (f64, f64),
    /// Range of the per-course step deviation σ_i.
    pub sigma: (f64, f64),
    /// Range of the day-1 level.
    pub start: (f64, f64),
    pub seed: u64,
}

impl Default for IncrementPanelParams {
    fn default() -> Self {
        IncrementPanelParams {
            courses: 100,
            days: 70,
            mu: (-5.0, 0.0),
            sigma: (1.0, 10.0),
            start: (200.0, 600.0),
            seed: 0,
        }
    }
}

/// `y_t = y_{t−1} + N(μ_i, σ_i²)`; values are left continuous. `z` repeats `y`.
pub fn gaussian_increment_panel(params: &IncrementPanelParams) -> Vec<ActivitySeries> {
    let mut rng = seeded(params.seed);
    (0..params.courses)
        .map(|i| {
            let mu = rng.random_range(params.mu.0..=params.mu.1);
            let sigma = rng.random_range(params.sigma.0..=params.sigma.1);
            let step = Normal::new(mu, sigma).expect("valid step law");
            let mut level = rng.random_range(params.start.0..=params.start.1);
            let y: Vec<f64> = (0..params.days)
                .map(|d| {
                    if d > 0 {
                        level += step.sample(&mut rng);
                    }
                    level
                })
                .collect();
            ActivitySeries {
                course_id: format!("course-{}", i + 1),
                z: y.clone(),
                y,
            }
        })
        .collect()
}
