//! Fits the activity model to a simulated course panel and prints each
//! coefficient next to its true value.

use forumlens::stats::{fit_panel_ols, PanelTarget};
use forumlens::synth::{coefficient_panel, PanelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sim = coefficient_panel(&PanelParams { seed: 5, ..Default::default() });
    let fit = fit_panel_ols(&sim.panel, PanelTarget::Y, 100.0)?;
    let ci = fit.confidence_intervals(0.95);
    println!("{:>10} {:>10} {:>10} {:>22}", "term", "true", "estimate", "95% interval");
    for (i, term) in fit.terms.iter().enumerate() {
        println!(
            "{term:>10} {:10.3} {:10.3} [{:9.3}, {:9.3}]",
            sim.beta[i], fit.coefficients[i], ci[i].0, ci[i].1
        );
    }
    Ok(())
}
