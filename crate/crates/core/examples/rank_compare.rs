//! Plants irrelevant threads in a course window and counts how many reach
//! the top 15 under the keyword ranker, tf-idf and HITS.

use forumlens::ranking::{compare_window, ComparisonConfig};
use forumlens::rng::trial_seed;
use forumlens::synth::{ranking_scenario, RankingParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let config = ComparisonConfig::default();
    let (mut beat_tfidf, mut beat_hits) = (0, 0);
    println!("trial ours_vs_tfidf ours_vs_hits");
    for trial in 0..trials {
        let scenario = ranking_scenario(&RankingParams {
            seed: trial_seed(7, trial),
            ..Default::default()
        })?;
        let (_, [tfidf, hits]) =
            compare_window(&scenario.corpus, &scenario.course_id, scenario.window, &config, &scenario.irrelevant)?;
        beat_tfidf += usize::from(tfidf.d1_irrelevant < tfidf.d2_irrelevant);
        beat_hits += usize::from(hits.d1_irrelevant < hits.d2_irrelevant);
        println!(
            "{trial:5} {:>6}/{:<6} {:>6}/{:<6}",
            tfidf.d1_irrelevant, tfidf.d2_irrelevant, hits.d1_irrelevant, hits.d2_irrelevant
        );
    }
    println!("fewer irrelevant than tf-idf in {beat_tfidf}/{trials}, than HITS in {beat_hits}/{trials}");
    Ok(())
}
