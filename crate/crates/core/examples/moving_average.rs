//! Daily small-talk share of a simulated course and its exponential moving
//! average.

use forumlens::corpus::Label;
use forumlens::stats::{smalltalk_moving_average, MaDenominator};
use forumlens::synth::{activity_corpus, ActivityParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = activity_corpus(&ActivityParams { courses: 1, seed: 8, ..Default::default() })?;
    let course = &corpus.courses[0];
    let mut threads: Vec<_> = course.threads.iter().filter(|t| t.label() != Label::Unlabeled).collect();
    threads.sort_by_key(|t| t.created_at());
    let eta: Vec<f64> = threads.iter().map(|t| f64::from(u8::from(t.label() == Label::SmallTalk))).collect();
    let ma = smalltalk_moving_average(&eta, 0.99, MaDenominator::TimeAligned)?;
    for (i, t) in threads.iter().enumerate().step_by((threads.len() / 20).max(1)) {
        println!("day {:3} thread {:5} average {:.3}", course.day_index(t.created_at()), i + 1, ma[i]);
    }
    Ok(())
}
