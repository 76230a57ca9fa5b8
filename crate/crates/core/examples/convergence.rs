//! Tracks how the keyword ranking of a course settles as days of text
//! accumulate.

use forumlens::genmodel::TopicProfile;
use forumlens::synth::{topic_stream, StreamParams};
use forumlens::topics::convergence_series;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stream = topic_stream(&StreamParams {
        n: 5000,
        epsilon: 0.5,
        profile: TopicProfile::Geometric(0.95),
        tokens_per_day: 5000,
        days: 40,
        seed: 4,
        ..Default::default()
    })?;
    let points = convergence_series(&stream.background, &stream.days, 50)?;
    println!("day tokens setdiff kendall");
    for p in &points {
        println!("{:3} {:7} {:7} {:.4}", p.day, p.cumulative_tokens, p.setdiff, p.kendall);
    }
    Ok(())
}
