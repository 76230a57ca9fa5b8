use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{ActivitySeries, CourseFactors, StatsError};

/// Classical least-squares fit with t-based inference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OlsFit {
    pub terms: Vec<String>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    /// Two-sided.
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub n_obs: usize,
    pub df_resid: usize,
    /// Residual standard error.
    pub sigma: f64,
    pub residuals: Vec<f64>,
    /// Observations removed before fitting (zero counts under the log target).
    pub dropped_rows: usize,
}

impl OlsFit {
    pub fn coefficient(&self, term: &str) -> Option<f64> {
        self.terms.iter().position(|t| t == term).map(|i| self.coefficients[i])
    }

    /// Two-sided confidence intervals at `level` (e.g. 0.99).
    pub fn confidence_intervals(&self, level: f64) -> Vec<(f64, f64)> {
        let t = StudentsT::new(0.0, 1.0, self.df_resid as f64).expect("positive dof");
        let q = t.inverse_cdf(0.5 + level / 2.0);
        self.coefficients
            .iter()
            .zip(&self.std_errors)
            .map(|(&b, &se)| (b - q * se, b + q * se))
            .collect()
    }
}

/// Least squares by Householder QR with column pivoting on the
/// column-normalized design. R² is the centered coefficient of determination,
/// so the design is expected to contain an intercept column.
pub fn fit_ols(x: &DMatrix<f64>, y: &[f64], terms: &[String]) -> Result<OlsFit, StatsError> {
    let (n, p) = x.shape();
    if y.len() != n || terms.len() != p {
        return Err(StatsError::DegenerateDesign(format!(
            "{n} rows, {} responses, {p} columns, {} names",
            y.len(),
            terms.len()
        )));
    }
    if n <= p {
        return Err(StatsError::DegenerateDesign(format!("{n} observations for {p} coefficients")));
    }
    let norms: Vec<f64> = (0..p).map(|j| x.column(j).norm()).collect();
    let zero: Vec<String> = (0..p).filter(|&j| norms[j] == 0.0).map(|j| terms[j].clone()).collect();
    if !zero.is_empty() {
        return Err(StatsError::RankDeficient(zero));
    }
    let mut scaled = x.clone();
    for j in 0..p {
        scaled.column_mut(j).scale_mut(1.0 / norms[j]);
    }
    let qr = scaled.clone().col_piv_qr();
    let r = qr.r();
    let mut order = DMatrix::from_fn(1, p, |_, j| j as f64);
    qr.p().permute_columns(&mut order);
    let order: Vec<usize> = order.iter().map(|&v| v as usize).collect();
    let max_diag = (0..p).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
    let deficient: Vec<String> = (0..p)
        .filter(|&i| r[(i, i)].abs() <= 1e-10 * max_diag)
        .map(|i| terms[order[i]].clone())
        .collect();
    if !deficient.is_empty() {
        return Err(StatsError::RankDeficient(deficient));
    }

    let mut qty = DVector::from_column_slice(y);
    qr.q_tr_mul(&mut qty);
    let r = r.columns(0, p).into_owned();
    let rhs = qty.rows(0, p).into_owned();
    let beta_perm = r
        .solve_upper_triangular(&rhs)
        .ok_or_else(|| StatsError::RankDeficient(terms.to_vec()))?;
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(p, p))
        .ok_or_else(|| StatsError::RankDeficient(terms.to_vec()))?;
    let cov_perm = &r_inv * r_inv.transpose();

    let mut coefficients = vec![0.0; p];
    let mut unscaled_var = vec![0.0; p];
    for (pos, &col) in order.iter().enumerate() {
        coefficients[col] = beta_perm[pos] / norms[col];
        unscaled_var[col] = cov_perm[(pos, pos)] / (norms[col] * norms[col]);
    }
    let fitted = x * DVector::from_column_slice(&coefficients);
    let residuals: Vec<f64> = y.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();
    let ssr: f64 = residuals.iter().map(|r| r * r).sum();
    let y_mean = y.iter().sum::<f64>() / n as f64;
    let sst: f64 = y.iter().map(|v| (v - y_mean) * (v - y_mean)).sum();
    let df = n - p;
    let sigma2 = ssr / df as f64;
    let std_errors: Vec<f64> = unscaled_var.iter().map(|v| (v * sigma2).sqrt()).collect();
    let t_dist = StudentsT::new(0.0, 1.0, df as f64).expect("positive dof");
    let t_stats: Vec<f64> = coefficients.iter().zip(&std_errors).map(|(b, se)| b / se).collect();
    let p_values = t_stats
        .iter()
        .map(|&t| if t.is_nan() { f64::NAN } else { (2.0 * t_dist.sf(t.abs())).min(1.0) })
        .collect();
    let r_squared = if sst > 0.0 { 1.0 - ssr / sst } else { 1.0 };
    let adj_r_squared = 1.0 - (1.0 - r_squared) * (n as f64 - 1.0) / df as f64;
    Ok(OlsFit {
        terms: terms.to_vec(),
        coefficients,
        std_errors,
        t_stats,
        p_values,
        r_squared,
        adj_r_squared,
        n_obs: n,
        df_resid: df,
        sigma: sigma2.sqrt(),
        residuals,
        dropped_rows: 0,
    })
}

/// Response of the panel regressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PanelTarget {
    /// Posts per day, with median early posts `M`.
    Y,
    /// Distinct users per day, with early users `M'`.
    Z,
    /// `ln z` on days with `z > 0`, without the `L` and `H` terms.
    LogZ,
}

/// Column names in table order.
pub fn panel_terms(target: PanelTarget) -> Vec<String> {
    let m = if target == PanelTarget::Y { "M" } else { "M'" };
    let factors = ["Q", "V", "L", "D", "P", "S", "H", m];
    let keep = |f: &&str| target != PanelTarget::LogZ || !matches!(*f, "L" | "H");
    let kept: Vec<&str> = factors.iter().copied().filter(|f| keep(&f)).collect();
    let mut terms = vec!["(Intercept)".to_string()];
    terms.extend(kept.iter().map(|f| format!("{f}*t")));
    terms.extend(kept.iter().map(|f| f.to_string()));
    terms.push("t".into());
    terms
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelDesign {
    pub x: DMatrix<f64>,
    pub y: Vec<f64>,
    pub terms: Vec<String>,
    pub dropped_rows: usize,
}

/// Stacks every (course, day) observation. `staff_scale` divides the raw
/// staff post count.
pub fn panel_design(panel: &[(ActivitySeries, CourseFactors)], target: PanelTarget, staff_scale: f64) -> PanelDesign {
    let terms = panel_terms(target);
    let mut rows: Vec<f64> = Vec::new();
    let mut y = Vec::new();
    let mut dropped = 0;
    for (series, f) in panel {
        let m = if target == PanelTarget::Y { f.m } else { f.m_prime };
        let all = [f.q, f.v, f.l, f.d, f.p, f.s / staff_scale, f.h, m];
        let factors: Vec<f64> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| target != PanelTarget::LogZ || !matches!(i, 2 | 6))
            .map(|(_, v)| *v)
            .collect();
        for day in 0..series.days() {
            let t = day as f64 + 1.0;
            let response = match target {
                PanelTarget::Y => series.y[day],
                PanelTarget::Z => series.z[day],
                PanelTarget::LogZ => {
                    if series.z[day] <= 0.0 {
                        dropped += 1;
                        continue;
                    }
                    series.z[day].ln()
                }
            };
            y.push(response);
            rows.push(1.0);
            rows.extend(factors.iter().map(|f| f * t));
            rows.extend(factors.iter().copied());
            rows.push(t);
        }
    }
    let x = DMatrix::from_row_slice(y.len(), terms.len(), &rows);
    PanelDesign {
        x,
        y,
        terms,
        dropped_rows: dropped,
    }
}

pub fn fit_panel_ols(panel: &[(ActivitySeries, CourseFactors)], target: PanelTarget, staff_scale: f64) -> Result<OlsFit, StatsError> {
    let design = panel_design(panel, target, staff_scale);
    let mut fit = fit_ols(&design.x, &design.y, &design.terms)?;
    fit.dropped_rows = design.dropped_rows;
    Ok(fit)
}
