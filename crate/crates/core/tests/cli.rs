use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn forumlens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forumlens"))
        .args(args)
        .env("FORUMLENS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn error_json(out: &Output) -> Value {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr.lines().last().expect("error line");
    serde_json::from_str(line).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {stderr}"))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_exits_zero() {
    let out = forumlens(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["gen", "ingest", "classify", "topics", "rank", "compare", "stats"] {
        assert!(text.contains(sub), "help lists {sub}");
    }
}

#[test]
fn unknown_flag_is_a_config_error() {
    let out = forumlens(&["gen", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let err = error_json(&out);
    assert_eq!(err["error"], "config");
    assert_eq!(err["exit_code"], 2);
}

#[test]
fn unknown_enum_value_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = forumlens(&["gen", "--scenario", "nonsense", "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_json(&out)["message"].as_str().unwrap().contains("nonsense"));
}

#[test]
fn missing_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.jsonl");
    let out = forumlens(&["ingest", "--input", path(&missing), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn rank_deficient_panel_is_a_numerical_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = forumlens(&[
        "stats",
        "panel",
        "--input",
        path(&fixture("tiny_forum.jsonl")),
        "--metadata",
        path(&fixture("tiny_forum_metadata.csv")),
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(error_json(&out)["error"], "numerical");
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"seed": 1, "colour": "blue"}"#).unwrap();
    let out = forumlens(&["gen", "--config", path(&config), "--out", path(&dir.path().join("o"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ingest_writes_course_summary_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = forumlens(&["ingest", "--input", path(&fixture("tiny_forum.jsonl")), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let courses = std::fs::read_to_string(dir.path().join("courses.csv")).unwrap();
    assert_eq!(courses.lines().count(), 3);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "ingest");
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 1);
    let listed: Vec<&str> = manifest["artifacts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["path"].as_str().unwrap())
        .collect();
    assert_eq!(listed, ["courses.csv", "corpus.jsonl"]);
}

#[test]
fn seeded_runs_are_byte_identical_and_seeds_matter() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, name: &str| {
        let out_dir = dir.path().join(name);
        let out = forumlens(&[
            "gen",
            "--scenario",
            "synthetic",
            "--threads-per-course",
            "40",
            "--seed",
            seed,
            "--out",
            path(&out_dir),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        out_dir
    };
    let a = run("9", "a");
    let b = run("9", "b");
    let c = run("10", "c");
    for file in ["corpus.jsonl", "spec.json", "manifest.json"] {
        assert_eq!(std::fs::read(a.join(file)).unwrap(), std::fs::read(b.join(file)).unwrap(), "{file}");
    }
    assert_ne!(std::fs::read(a.join("corpus.jsonl")).unwrap(), std::fs::read(c.join("corpus.jsonl")).unwrap());
}

#[test]
fn train_then_evaluate_with_saved_model() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen");
    let out = forumlens(&["gen", "--threads-per-course", "60", "--out", path(&gen)]);
    assert_eq!(out.status.code(), Some(0));
    let corpus = gen.join("corpus.jsonl");
    let train = dir.path().join("train");
    let out = forumlens(&[
        "classify",
        "train",
        "--classifier",
        "nb",
        "--mode",
        "per_course",
        "--input",
        path(&corpus),
        "--out",
        path(&train),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let eval = dir.path().join("eval");
    let out = forumlens(&[
        "classify",
        "eval",
        "--model",
        path(&train.join("model.json")),
        "--theta",
        "-1.5",
        "--input",
        path(&corpus),
        "--out",
        path(&eval),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(eval.join("eval.csv")).unwrap();
    let headers = rdr.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "tpr") && headers.iter().any(|h| h == "fpr"));
    assert!(rdr.records().count() >= 1);
}
