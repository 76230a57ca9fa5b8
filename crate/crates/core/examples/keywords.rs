//! Recovers the support of a planted course topic from surprise weights
//! against a background corpus.

use std::collections::HashSet;

use forumlens::corpus::UnigramModel;
use forumlens::synth::{topic_stream, StreamParams};
use forumlens::topics::surprise_weights;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stream = topic_stream(&StreamParams { days: 50, seed: 3, ..Default::default() })?;
    let course = UnigramModel::from_docs(stream.days.iter().flatten())?;
    let combined = UnigramModel::combine([&stream.background, &course])?;
    let ranking = surprise_weights(&combined, &course, stream.background.total_tokens());
    let truth: HashSet<String> = stream.target_support().into_iter().collect();
    for (rank, (word, weight)) in ranking.entries().iter().take(15).enumerate() {
        let mark = if truth.contains(word) { "topic" } else { "" };
        println!("{:2} {word:>8} {weight:10.3} {mark}", rank + 1);
    }
    let hits = ranking.words().take(truth.len()).filter(|w| truth.contains(*w)).count();
    println!("top-{} recall {:.3}", truth.len(), hits as f64 / truth.len() as f64);
    Ok(())
}
