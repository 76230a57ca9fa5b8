use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapiroWilk {
    pub w: f64,
    pub p_value: f64,
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal")
}

/// `c[0] + c[1] x + c[2] x² + ...`
fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Shapiro-Wilk W and its p-value by Royston's approximation (AS R94),
/// for 3 ≤ n ≤ 5000.
pub fn shapiro_wilk(sample: &[f64]) -> Result<ShapiroWilk, StatsError> {
    const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
    const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
    const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
    const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
    const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
    const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
    const G: [f64; 2] = [-2.273, 0.459];

    let n = sample.len();
    if n < 3 {
        return Err(StatsError::SampleTooSmall(n));
    }
    if n > 5000 {
        return Err(StatsError::SampleTooLarge(n));
    }
    let mut x = sample.to_vec();
    x.sort_by(f64::total_cmp);
    let range = x[n - 1] - x[0];
    if range < 1e-19 {
        return Err(StatsError::DegenerateGroup("all values identical".into()));
    }
    let normal = std_normal();
    let an = n as f64;
    let nn2 = n / 2;

    // coefficients for the upper half, a[0] largest
    let mut a = vec![0.0; nn2];
    if n == 3 {
        a[0] = std::f64::consts::FRAC_1_SQRT_2;
    } else {
        let m: Vec<f64> = (0..nn2)
            .map(|i| -normal.inverse_cdf((i as f64 + 1.0 - 0.375) / (an + 0.25)))
            .collect();
        let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
        let ssumm2 = summ2.sqrt();
        let rsn = 1.0 / an.sqrt();
        let a1 = poly(&C1, rsn) + m[0] / ssumm2;
        let (i1, fac) = if n > 5 {
            let a2 = m[1] / ssumm2 + poly(&C2, rsn);
            let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2)).sqrt();
            a[1] = a2;
            (2, fac)
        } else {
            let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
            (1, fac)
        };
        a[0] = a1;
        for i in i1..nn2 {
            a[i] = m[i] / fac;
        }
    }

    // W as the squared correlation between the data and the full coefficient vector
    let coef = |i: usize| -> f64 {
        let j = n - 1 - i;
        if i < j {
            -a[i]
        } else if i > j {
            a[j]
        } else {
            0.0
        }
    };
    let xs: Vec<f64> = x.iter().map(|v| v / range).collect();
    let mean_x = xs.iter().sum::<f64>() / an;
    let mean_a = (0..n).map(coef).sum::<f64>() / an;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for (i, &xi) in xs.iter().enumerate() {
        let da = coef(i) - mean_a;
        let dx = xi - mean_x;
        ssa += da * da;
        ssx += dx * dx;
        sax += da * dx;
    }
    let ssassx = (ssa * ssx).sqrt();
    let w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    let w = 1.0 - w1;

    if n == 3 {
        let pi6 = 6.0 / std::f64::consts::PI;
        let w = w.max(0.75);
        let p = (1.0 - pi6 * w.sqrt().acos()).max(0.0);
        return Ok(ShapiroWilk { w, p_value: p });
    }
    let y = w1.ln();
    let p_value = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            1e-19
        } else {
            let y = -(gamma - y).ln();
            let m = poly(&C3, an);
            let s = poly(&C4, an).exp();
            normal.sf((y - m) / s)
        }
    } else {
        let xx = an.ln();
        let m = poly(&C5, xx);
        let s = poly(&C6, xx).exp();
        normal.sf((y - m) / s)
    };
    Ok(ShapiroWilk { w, p_value })
}

/// `(Φ⁻¹((i − 0.5)/n), x_(i))` for the sorted sample.
pub fn qq_points(sample: &[f64]) -> Result<Vec<(f64, f64)>, StatsError> {
    let n = sample.len();
    if n < 2 {
        return Err(StatsError::SampleTooSmall(n));
    }
    let mut x = sample.to_vec();
    x.sort_by(f64::total_cmp);
    let normal = std_normal();
    Ok(x.into_iter()
        .enumerate()
        .map(|(i, v)| (normal.inverse_cdf((i as f64 + 0.5) / n as f64), v))
        .collect())
}

/// Q-Q points of a sample whose `tail` fraction was cut from each end,
/// against the matching truncated normal: `Φ⁻¹(tail + (1 − 2·tail)(i − 0.5)/n)`.
pub fn qq_points_trimmed(sample: &[f64], tail: f64) -> Result<Vec<(f64, f64)>, StatsError> {
    if !(0.0..0.5).contains(&tail) {
        return Err(StatsError::InvalidParameter(format!("tail fraction {tail} outside [0, 0.5)")));
    }
    let n = sample.len();
    if n < 2 {
        return Err(StatsError::SampleTooSmall(n));
    }
    let mut x = sample.to_vec();
    x.sort_by(f64::total_cmp);
    let normal = std_normal();
    Ok(x.into_iter()
        .enumerate()
        .map(|(i, v)| (normal.inverse_cdf(tail + (1.0 - 2.0 * tail) * (i as f64 + 0.5) / n as f64), v))
        .collect())
}

/// Squared Pearson correlation of Q-Q points; 1 for an exact line.
pub fn qq_r_squared(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if syy == 0.0 || sxx == 0.0 {
        return 0.0;
    }
    sxy * sxy / (sxx * syy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_limits() {
        assert_eq!(shapiro_wilk(&[1.0, 2.0]), Err(StatsError::SampleTooSmall(2)));
        assert_eq!(shapiro_wilk(&vec![0.0; 5001]), Err(StatsError::SampleTooLarge(5001)));
    }

    #[test]
    fn ideal_normal_scores_near_one() {
        let n = 20;
        let normal = std_normal();
        let x: Vec<f64> = (1..=n).map(|i| normal.inverse_cdf((i as f64 - 0.375) / (n as f64 + 0.25))).collect();
        let r = shapiro_wilk(&x).unwrap();
        assert!(r.w >= 0.99, "{r:?}");
        assert!(r.p_value > 0.5);
    }

    #[test]
    fn bimodal_rejected() {
        let x: Vec<f64> = (0..50).map(|i| if i % 2 == 0 { -10.0 } else { 10.0 } + (i as f64) * 0.01).collect();
        assert!(shapiro_wilk(&x).unwrap().p_value < 0.01);
    }

    #[test]
    fn three_points() {
        let r = shapiro_wilk(&[1.0, 2.0, 3.0]).unwrap();
        assert!((r.w - 1.0).abs() < 1e-12);
        assert!((r.p_value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn qq_two_points() {
        let q = qq_points(&[1.0, -1.0]).unwrap();
        assert!((q[0].0 + 0.6744897501960817).abs() < 1e-9);
        assert!((q[1].0 - 0.6744897501960817).abs() < 1e-9);
        assert_eq!((q[0].1, q[1].1), (-1.0, 1.0));
        assert!((qq_r_squared(&q) - 1.0).abs() < 1e-12);
        assert_eq!(qq_points_trimmed(&[1.0, -1.0], 0.0).unwrap(), q);
    }

    #[test]
    fn trimmed_reference_covers_inner_quantiles() {
        let q = qq_points_trimmed(&[3.0, 1.0, 2.0, 4.0], 0.25).unwrap();
        let normal = std_normal();
        assert!((q[0].0 - normal.inverse_cdf(0.25 + 0.5 * 0.125)).abs() < 1e-12);
        assert_eq!(q.iter().map(|p| p.1).collect::<Vec<_>>(), [1.0, 2.0, 3.0, 4.0]);
    }
}
