use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use super::StatsError;

/// Largest combined sample size tested with the exact permutation distribution.
pub const EXACT_MW_MAX: usize = 30;

/// Welch's unequal-variance t-test of `mean(g1) > mean(g2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WelchT {
    pub t: f64,
    pub df: f64,
    pub p_one_sided: f64,
    pub p_two_sided: f64,
    pub mean1: f64,
    pub mean2: f64,
    pub var1: f64,
    pub var2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MwMethod {
    Exact,
    /// Normal approximation with tie and continuity correction.
    Normal,
}

/// Mann-Whitney U of `g1` against `g2`; the one-sided alternative is that
/// `g1` tends to be larger.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MannWhitney {
    /// Pairs with `g1 > g2`, ties counted one half.
    pub u: f64,
    pub p_one_sided: f64,
    pub p_two_sided: f64,
    pub method: MwMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSampleReport {
    pub n1: usize,
    pub n2: usize,
    pub welch: WelchT,
    pub mann_whitney: MannWhitney,
}

fn mean_var(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    (m, x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0))
}

fn check_sizes(g1: &[f64], g2: &[f64]) -> Result<(), StatsError> {
    if g1.len() < 2 || g2.len() < 2 {
        return Err(StatsError::DegenerateGroup(format!("group sizes {} and {}; both need at least 2", g1.len(), g2.len())));
    }
    Ok(())
}

pub fn welch_t_test(g1: &[f64], g2: &[f64]) -> Result<WelchT, StatsError> {
    check_sizes(g1, g2)?;
    let (m1, v1) = mean_var(g1);
    let (m2, v2) = mean_var(g2);
    let (n1, n2) = (g1.len() as f64, g2.len() as f64);
    let se2 = v1 / n1 + v2 / n2;
    if se2 == 0.0 {
        return Err(StatsError::DegenerateGroup("both groups have zero variance".into()));
    }
    let t = (m1 - m2) / se2.sqrt();
    let df = se2 * se2 / ((v1 / n1).powi(2) / (n1 - 1.0) + (v2 / n2).powi(2) / (n2 - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| StatsError::DegenerateGroup(e.to_string()))?;
    Ok(WelchT {
        t,
        df,
        p_one_sided: dist.sf(t),
        p_two_sided: (2.0 * dist.sf(t.abs())).min(1.0),
        mean1: m1,
        mean2: m2,
        var1: v1,
        var2: v2,
    })
}

/// Mid-ranks (1-based) of the pooled sample.
fn midranks(pooled: &[f64]) -> Vec<f64> {
    let n = pooled.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && pooled[order[j + 1]] == pooled[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

pub fn mann_whitney(g1: &[f64], g2: &[f64]) -> Result<MannWhitney, StatsError> {
    check_sizes(g1, g2)?;
    let (n1, n2) = (g1.len(), g2.len());
    let pooled: Vec<f64> = g1.iter().chain(g2).copied().collect();
    let ranks = midranks(&pooled);
    let r1: f64 = ranks[..n1].iter().sum();
    let u = r1 - (n1 * (n1 + 1)) as f64 / 2.0;
    if n1 + n2 <= EXACT_MW_MAX {
        // doubled mid-ranks are integers
        let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
        let max_sum: usize = doubled.iter().sum();
        let mut ways = vec![vec![0.0f64; max_sum + 1]; n1 + 1];
        ways[0][0] = 1.0;
        for &d in &doubled {
            for k in (1..=n1).rev() {
                for s in (d..=max_sum).rev() {
                    let add = ways[k - 1][s - d];
                    if add != 0.0 {
                        ways[k][s] += add;
                    }
                }
            }
        }
        let total: f64 = ways[n1].iter().sum();
        let obs = (2.0 * r1).round() as usize;
        let upper: f64 = ways[n1][obs..].iter().sum::<f64>() / total;
        let lower: f64 = ways[n1][..=obs].iter().sum::<f64>() / total;
        return Ok(MannWhitney {
            u,
            p_one_sided: upper,
            p_two_sided: (2.0 * upper.min(lower)).min(1.0),
            method: MwMethod::Exact,
        });
    }
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let n = n1f + n2f;
    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_sum = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        let t = j as f64;
        tie_sum += t * t * t - t;
        i += j;
    }
    let mean = n1f * n2f / 2.0;
    let var = n1f * n2f / 12.0 * ((n + 1.0) - tie_sum / (n * (n - 1.0)));
    if var <= 0.0 {
        return Err(StatsError::DegenerateGroup("all values tied".into()));
    }
    let sd = var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let upper = normal.sf((u - mean - 0.5) / sd);
    let lower = normal.cdf((u - mean + 0.5) / sd);
    Ok(MannWhitney {
        u,
        p_one_sided: upper.min(1.0),
        p_two_sided: (2.0 * upper.min(lower)).min(1.0),
        method: MwMethod::Normal,
    })
}

/// Welch t-test and Mann-Whitney U of group 1 against group 2.
pub fn two_sample_tests(g1: &[f64], g2: &[f64]) -> Result<TwoSampleReport, StatsError> {
    Ok(TwoSampleReport {
        n1: g1.len(),
        n2: g2.len(),
        welch: welch_t_test(g1, g2)?,
        mann_whitney: mann_whitney(g1, g2)?,
    })
}
