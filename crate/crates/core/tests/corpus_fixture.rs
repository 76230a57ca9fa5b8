use std::path::PathBuf;

use forumlens::classify::docs_from_corpus;
use forumlens::corpus::{
    attach_metadata, ingest_corpus, read_corpus, read_metadata, thread_tokens, write_corpus_csv, write_corpus_jsonl,
    Category, CorpusError, CorpusFormat, Label, StopWords, TokenOptions,
};
use forumlens::stats::{build_all_series, thread_neighborhood};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn tiny() -> forumlens::Corpus {
    ingest_corpus(fixture("tiny_forum.jsonl"), CorpusFormat::JsonLines).unwrap()
}

#[test]
fn loads_courses_threads_and_labels() {
    let corpus = tiny();
    assert_eq!(corpus.num_courses(), 2);
    assert_eq!(corpus.num_threads(), 5);
    let ml = corpus.course("ml-101").unwrap();
    assert_eq!(ml.start_date, 1_600_041_600);
    assert_eq!(ml.num_posts(), 6);
    assert_eq!(ml.thread("ml-t3").unwrap().label(), Label::Logistics);
    let hist = corpus.course("hist-200").unwrap();
    assert_eq!(hist.thread("hi-t2").unwrap().label(), Label::Unlabeled);
    assert_eq!(hist.day_index(hist.thread("hi-t2").unwrap().created_at()), 2);
}

#[test]
fn jsonl_and_csv_round_trip() {
    let corpus = tiny();
    let mut jsonl = Vec::new();
    write_corpus_jsonl(&corpus, &mut jsonl).unwrap();
    assert_eq!(read_corpus(jsonl.as_slice(), CorpusFormat::JsonLines).unwrap(), corpus);
    let mut csv = Vec::new();
    write_corpus_csv(&corpus, &mut csv).unwrap();
    assert_eq!(read_corpus(csv.as_slice(), CorpusFormat::Csv).unwrap(), corpus);
}

#[test]
fn metadata_attaches_by_course_id() {
    let mut corpus = tiny();
    let meta = read_metadata(std::fs::File::open(fixture("tiny_forum_metadata.csv")).unwrap()).unwrap();
    attach_metadata(&mut corpus, meta).unwrap();
    let ml = corpus.course("ml-101").unwrap();
    assert_eq!(ml.category, Category::AppliedScience);
    assert_eq!(ml.metadata.as_ref().unwrap().duration_days, 42);
    let series = build_all_series(&corpus);
    let ml_series = series.iter().find(|s| s.course_id == "ml-101").unwrap();
    assert_eq!(ml_series.days(), 42);
    // day 1: four posts, day 2: two posts
    assert_eq!(&ml_series.y[..3], &[4.0, 2.0, 0.0]);
}

#[test]
fn staff_posts_can_be_excluded() {
    let corpus = tiny();
    let thread = corpus.course("ml-101").unwrap().thread("ml-t2").unwrap();
    let with_staff = thread_tokens(thread, &TokenOptions::default());
    let without = thread_tokens(
        thread,
        &TokenOptions {
            stopwords: StopWords::english(),
            include_staff: false,
        },
    );
    assert!(with_staff.contains(&"overshoots".to_string()));
    assert!(!without.contains(&"overshoots".to_string()));
}

#[test]
fn unlabeled_threads_are_not_classifier_docs() {
    let docs = docs_from_corpus(&tiny(), &TokenOptions::default());
    assert_eq!(docs.len(), 4);
    assert_eq!(docs.iter().filter(|d| d.is_smalltalk).count(), 1);
}

#[test]
fn neighborhood_counts_other_threads_only() {
    let corpus = tiny();
    let ml = corpus.course("ml-101").unwrap();
    // t1 at 0h, t2 at 3h, t3 at 24h
    assert_eq!(thread_neighborhood(ml, "ml-t1", 1.0).unwrap(), 2);
    assert_eq!(thread_neighborhood(ml, "ml-t3", 0.5).unwrap(), 0);
}

#[test]
fn malformed_line_reports_its_number() {
    let text = std::fs::read_to_string(fixture("tiny_forum.jsonl")).unwrap();
    let broken = text.replacen("\"posts\"", "\"postz\"", 2);
    match read_corpus(broken.as_bytes(), CorpusFormat::JsonLines) {
        Err(CorpusError::Parse { line, .. }) => assert_eq!(line, 1),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn created_at_must_match_first_post() {
    let text = std::fs::read_to_string(fixture("tiny_forum.jsonl")).unwrap();
    let broken = text.replacen("\"created_at\":1600128000", "\"created_at\":1600128001", 1);
    assert!(matches!(
        read_corpus(broken.as_bytes(), CorpusFormat::JsonLines),
        Err(CorpusError::InvariantViolation { .. })
    ));
}

#[test]
fn contradictory_category_rejected() {
    let text = std::fs::read_to_string(fixture("tiny_forum_metadata.csv")).unwrap();
    let broken = text.replace("hist-200,1600646400,0,0,", "hist-200,1600646400,0,1,");
    let meta = read_metadata(broken.as_bytes()).unwrap();
    let mut corpus = tiny();
    assert!(matches!(attach_metadata(&mut corpus, meta), Err(CorpusError::CourseInvariant { .. })));
}
