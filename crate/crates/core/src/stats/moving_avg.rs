use serde::{Deserialize, Serialize};

use super::StatsError;

/// Denominator of the small-talk moving average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaDenominator {
    /// `Σ_{i≤t} α^i`. Not a convex average: all-ones input gives `1/α`.
    #[default]
    Printed,
    /// `Σ_{i≤t} α^(t−i)`, the exponential-smoothing normalizer.
    TimeAligned,
}

/// `s_t = Σ_{i≤t} η_i α^(t−i) / den_t` over time-ordered indicators `η`.
pub fn smalltalk_moving_average(eta: &[f64], alpha: f64, denominator: MaDenominator) -> Result<Vec<f64>, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::InvalidParameter(format!("alpha {alpha} outside (0, 1)")));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    let mut power = 1.0;
    Ok(eta
        .iter()
        .map(|&e| {
            num = alpha * num + e;
            match denominator {
                MaDenominator::Printed => {
                    power *= alpha;
                    den += power;
                }
                MaDenominator::TimeAligned => den = alpha * den + 1.0,
            }
            num / den
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        let s = smalltalk_moving_average(&[1.0], 0.99, MaDenominator::Printed).unwrap();
        assert!((s[0] - 1.0 / 0.99).abs() < 1e-12);
        let s = smalltalk_moving_average(&[1.0, 0.0, 0.0], 0.5, MaDenominator::Printed).unwrap();
        assert!((s[2] - 0.25 / 0.875).abs() < 1e-12);
        assert_eq!(smalltalk_moving_average(&[0.0; 5], 0.9, MaDenominator::Printed).unwrap(), vec![0.0; 5]);
    }

    #[test]
    fn time_aligned_is_convex() {
        let s = smalltalk_moving_average(&[1.0; 10], 0.7, MaDenominator::TimeAligned).unwrap();
        assert!(s.iter().all(|v| (v - 1.0).abs() < 1e-12));
        let s = smalltalk_moving_average(&[1.0, 0.0, 0.0], 0.5, MaDenominator::TimeAligned).unwrap();
        assert!((s[2] - 0.25 / 1.75).abs() < 1e-12);
    }

    #[test]
    fn matches_literal_sum() {
        let eta = [1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let a: f64 = 0.8;
        let s = smalltalk_moving_average(&eta, a, MaDenominator::Printed).unwrap();
        for t in 1..=eta.len() {
            let num: f64 = (1..=t).map(|i| eta[i - 1] * a.powi((t - i) as i32)).sum();
            let den: f64 = (1..=t).map(|i| a.powi(i as i32)).sum();
            assert!((s[t - 1] - num / den).abs() < 1e-12);
            assert!(s[t - 1] >= 0.0 && s[t - 1] <= 1.0 / a + 1e-12);
        }
    }
}
