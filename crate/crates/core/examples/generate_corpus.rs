//! Samples a labeled two-course corpus from a synthetic generative model and
//! writes it as JSON lines.
//!
//! `cargo run --example generate_corpus -- [out.jsonl]`

use std::fs::File;
use std::io::BufWriter;

use forumlens::corpus::write_corpus_jsonl;
use forumlens::genmodel::{sample_corpus, CorpusLayout, GenerativeSpec, SyntheticParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GenerativeSpec::synthetic(&SyntheticParams {
        p: vec![0.5, 0.2],
        s: 40,
        seed: 1,
        ..Default::default()
    })?;
    spec.validate()?;
    let corpus = sample_corpus(&spec, &[200, 200], CorpusLayout::default())?;
    for course in &corpus.courses {
        let smalltalk = course.threads.iter().filter(|t| t.label().as_str() == "small_talk").count();
        println!("{}: {} threads, {smalltalk} small-talk", course.course_id, course.threads.len());
    }
    match std::env::args().nth(1) {
        Some(path) => {
            write_corpus_jsonl(&corpus, BufWriter::new(File::create(&path)?))?;
            println!("wrote {path}");
        }
        None => println!("pass a path to write the corpus"),
    }
    Ok(())
}
