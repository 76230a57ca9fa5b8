//! Corpus file formats.
//!
//! Threads are stored one per line as JSON:
//!
//! ```text
//! {"course_id":..,"thread_id":..,"created_at":..,"label":..,"posts":[{"post_id","author_id","timestamp","text","is_staff"}]}
//! ```
//!
//! The CSV thread format flattens the same data to one post per row with
//! header `course_id,thread_id,created_at,label,post_id,author_id,timestamp,is_staff,text`.
//! Course metadata is a separate CSV with header
//! `course_id,start_date,Q,V,L,D,P,S,H,category`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::model::{Category, Corpus, Course, Label, Post, Thread};
use super::CorpusError;
use crate::SECONDS_PER_DAY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    JsonLines,
    Csv,
}

impl CorpusFormat {
    /// Guess from the file extension; anything but `.csv` is JSON-lines.
    pub fn from_path(path: &Path) -> CorpusFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => CorpusFormat::Csv,
            _ => CorpusFormat::JsonLines,
        }
    }
}

/// Per-course regressors read from the metadata CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CourseMetadata {
    pub course_id: String,
    pub start_date: i64,
    #[serde(rename = "Q")]
    pub quantitative: u8,
    #[serde(rename = "V")]
    pub vocational: u8,
    /// Total lecture video length in hours.
    #[serde(rename = "L")]
    pub video_hours: f64,
    /// Course duration in days.
    #[serde(rename = "D")]
    pub duration_days: u32,
    #[serde(rename = "P")]
    pub peer_graded: u8,
    /// Raw number of staff posts.
    #[serde(rename = "S")]
    pub staff_posts: u64,
    #[serde(rename = "H")]
    pub graded_homework: u32,
    pub category: Category,
}

#[derive(Serialize, Deserialize)]
struct ThreadRecord {
    course_id: String,
    thread_id: String,
    created_at: i64,
    #[serde(default)]
    label: Option<Label>,
    posts: Vec<Post>,
}

#[derive(Serialize, Deserialize)]
struct PostRow {
    course_id: String,
    thread_id: String,
    created_at: i64,
    label: String,
    post_id: String,
    author_id: String,
    timestamp: i64,
    is_staff: bool,
    text: String,
}

/// Reads a corpus file. Courses appear in order of first mention; a course's
/// start date defaults to UTC midnight of its earliest thread until metadata
/// is attached.
pub fn ingest_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Corpus, CorpusError> {
    let file = File::open(path)?;
    read_corpus(file, format)
}

pub fn read_corpus(reader: impl Read, format: CorpusFormat) -> Result<Corpus, CorpusError> {
    let records = match format {
        CorpusFormat::JsonLines => read_jsonl(reader)?,
        CorpusFormat::Csv => read_post_rows(reader)?,
    };
    assemble(records)
}

fn read_jsonl(reader: impl Read) -> Result<Vec<ThreadRecord>, CorpusError> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ThreadRecord = serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
            line: i + 1,
            reason: e.to_string(),
        })?;
        out.push(rec);
    }
    Ok(out)
}

fn read_post_rows(reader: impl Read) -> Result<Vec<ThreadRecord>, CorpusError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out: Vec<ThreadRecord> = Vec::new();
    let mut index: HashMap<(String, String), usize> = HashMap::new();
    for (i, row) in rdr.deserialize::<PostRow>().enumerate() {
        // header is line 1
        let line = i + 2;
        let row = row.map_err(|e| CorpusError::Parse {
            line,
            reason: e.to_string(),
        })?;
        let label = Label::parse(&row.label).ok_or_else(|| CorpusError::Parse {
            line,
            reason: format!("unknown label {:?}", row.label),
        })?;
        let key = (row.course_id.clone(), row.thread_id.clone());
        let post = Post {
            post_id: row.post_id,
            author_id: row.author_id,
            timestamp: row.timestamp,
            text: row.text,
            is_staff: row.is_staff,
        };
        match index.get(&key) {
            Some(&j) => {
                let rec = &mut out[j];
                if rec.created_at != row.created_at || rec.label != Some(label) {
                    return Err(CorpusError::Parse {
                        line,
                        reason: format!("thread {} has inconsistent created_at/label across rows", row.thread_id),
                    });
                }
                rec.posts.push(post);
            }
            None => {
                index.insert(key, out.len());
                out.push(ThreadRecord {
                    course_id: row.course_id,
                    thread_id: row.thread_id,
                    created_at: row.created_at,
                    label: Some(label),
                    posts: vec![post],
                });
            }
        }
    }
    Ok(out)
}

fn assemble(records: Vec<ThreadRecord>) -> Result<Corpus, CorpusError> {
    let mut courses: Vec<(String, Vec<Thread>)> = Vec::new();
    let mut by_id: HashMap<String, usize> = HashMap::new();
    for rec in records {
        let thread = Thread::new(rec.thread_id, rec.posts, rec.label.unwrap_or_default())?;
        if thread.created_at() != rec.created_at {
            return Err(CorpusError::InvariantViolation {
                thread_id: thread.thread_id().to_string(),
                reason: format!(
                    "created_at {} differs from first post timestamp {}",
                    rec.created_at,
                    thread.created_at()
                ),
            });
        }
        let idx = *by_id.entry(rec.course_id.clone()).or_insert_with(|| {
            courses.push((rec.course_id.clone(), Vec::new()));
            courses.len() - 1
        });
        courses[idx].1.push(thread);
    }
    let courses = courses
        .into_iter()
        .map(|(id, threads)| {
            let first = threads.iter().map(Thread::created_at).min().unwrap_or(0);
            let start = first.div_euclid(SECONDS_PER_DAY) * SECONDS_PER_DAY;
            Course::new(id, start, threads)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Corpus::new(courses))
}

pub fn read_metadata(reader: impl Read) -> Result<Vec<CourseMetadata>, CorpusError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<CourseMetadata>().enumerate() {
        let meta = row.map_err(|e| CorpusError::Parse {
            line: i + 2,
            reason: e.to_string(),
        })?;
        let flags_ok = meta.quantitative <= 1 && meta.vocational <= 1 && meta.peer_graded <= 1;
        if !flags_ok || meta.video_hours < 0.0 || !meta.video_hours.is_finite() {
            return Err(CorpusError::Parse {
                line: i + 2,
                reason: "Q/V/P must be 0 or 1 and L a nonnegative number".into(),
            });
        }
        out.push(meta);
    }
    Ok(out)
}

/// Sets start dates and categories from metadata. Every metadata category
/// must agree with its Q/V flags.
pub fn attach_metadata(corpus: &mut Corpus, metadata: Vec<CourseMetadata>) -> Result<(), CorpusError> {
    let mut by_id: HashMap<String, CourseMetadata> = HashMap::new();
    for meta in metadata {
        let expected = Category::from_flags(meta.quantitative == 1, meta.vocational == 1);
        if meta.category != expected {
            return Err(CorpusError::CourseInvariant {
                course_id: meta.course_id.clone(),
                reason: format!(
                    "category {} contradicts Q={} V={} (expected {})",
                    meta.category.as_str(),
                    meta.quantitative,
                    meta.vocational,
                    expected.as_str()
                ),
            });
        }
        by_id.insert(meta.course_id.clone(), meta);
    }
    for course in &mut corpus.courses {
        if let Some(meta) = by_id.remove(&course.course_id) {
            course.start_date = meta.start_date;
            course.category = meta.category;
            course.metadata = Some(meta);
        }
    }
    // metadata for courses without threads still defines (empty) courses
    let mut rest: Vec<CourseMetadata> = by_id.into_values().collect();
    rest.sort_by(|a, b| a.course_id.cmp(&b.course_id));
    for meta in rest {
        let mut course = Course::new(meta.course_id.clone(), meta.start_date, Vec::new())?;
        course.category = meta.category;
        course.metadata = Some(meta);
        corpus.courses.push(course);
    }
    Ok(())
}

pub fn write_corpus_jsonl(corpus: &Corpus, mut writer: impl Write) -> Result<(), CorpusError> {
    for course in &corpus.courses {
        for thread in &course.threads {
            let rec = ThreadRecord {
                course_id: course.course_id.clone(),
                thread_id: thread.thread_id().to_string(),
                created_at: thread.created_at(),
                label: Some(thread.label()),
                posts: thread.posts().to_vec(),
            };
            serde_json::to_writer(&mut writer, &rec).map_err(std::io::Error::other)?;
            writer.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Metadata CSV in the layout read by [`read_metadata`].
pub fn write_metadata_csv(metadata: &[CourseMetadata], writer: impl Write) -> Result<(), CorpusError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for meta in metadata {
        wtr.serialize(meta).map_err(std::io::Error::other)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_corpus_csv(corpus: &Corpus, writer: impl Write) -> Result<(), CorpusError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for course in &corpus.courses {
        for thread in &course.threads {
            for post in thread.posts() {
                wtr.serialize(PostRow {
                    course_id: course.course_id.clone(),
                    thread_id: thread.thread_id().to_string(),
                    created_at: thread.created_at(),
                    label: thread.label().as_str().to_string(),
                    post_id: post.post_id.clone(),
                    author_id: post.author_id.clone(),
                    timestamp: post.timestamp,
                    is_staff: post.is_staff,
                    text: post.text.clone(),
                })
                .map_err(std::io::Error::other)?;
            }
        }
    }
    wtr.flush()?;
    Ok(())
}
