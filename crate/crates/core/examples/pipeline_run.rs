//! Drives the pipeline as a library: generates an activity corpus, then runs
//! the series and Shapiro-Wilk stages over it.

use forumlens::pipeline::{run_pipeline, Command, RunConfig, Scenario, StatsAction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::args().nth(1).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("forumlens-example"));
    let mut gen = RunConfig { seed: 5, out: root.join("gen"), ..Default::default() };
    gen.gen.scenario = Scenario::Activity;
    gen.gen.courses = 4;
    let manifest = run_pipeline(Command::Gen, &gen)?;
    let stats = RunConfig {
        seed: 5,
        input: Some(root.join("gen/corpus.jsonl")),
        metadata: Some(root.join("gen/metadata.csv")),
        ..Default::default()
    };
    let mut runs = vec![manifest];
    for (action, dir) in [(StatsAction::Series, "series"), (StatsAction::Shapiro, "shapiro")] {
        let config = RunConfig { out: root.join(dir), ..stats.clone() };
        runs.push(run_pipeline(Command::Stats(action), &config)?);
    }
    for m in &runs {
        println!("{}:", m.command);
        for a in &m.artifacts {
            println!("  {} {}", &a.sha256[..12], a.path);
        }
    }
    println!("artifacts under {}", root.display());
    Ok(())
}
