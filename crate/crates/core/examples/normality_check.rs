//! Screens trimmed day-over-day differences of simulated courses with the
//! Shapiro-Wilk test and reports per-course trend fits.

use forumlens::stats::{fit_course_trend, qq_points_trimmed, qq_r_squared, shapiro_wilk, trim_and_diff};
use forumlens::synth::{gaussian_increment_panel, IncrementPanelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let panel = gaussian_increment_panel(&IncrementPanelParams { courses: 20, seed: 6, ..Default::default() });
    println!("{:>10} {:>8} {:>8} {:>7} {:>7}", "course", "slope", "se", "W", "p");
    for series in &panel {
        let trend = fit_course_trend(&series.y)?;
        let diffs = trim_and_diff(&series.y, 0.03)?;
        let sw = shapiro_wilk(&diffs)?;
        println!(
            "{:>10} {:8.3} {:8.3} {:7.4} {:7.4}",
            series.course_id, trend.slope, trend.slope_se, sw.w, sw.p_value
        );
    }
    let diffs = trim_and_diff(&panel[0].y, 0.03)?;
    println!("Q-Q R^2 of the first course: {:.4}", qq_r_squared(&qq_points_trimmed(&diffs, 0.0)?));
    Ok(())
}
