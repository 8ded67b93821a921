use std::path::{Path, PathBuf};

use chimukai_core::scene::{load_corpus, run_corpus, run_scenes, RunOptions};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_corpus_passes_against_golden_reports() {
    let summary = run_corpus(&corpus_dir(), &RunOptions::default()).unwrap();
    assert!(summary.all_passed(), "{}", summary.table());
    assert_eq!(summary.exit_code(), 0);
    assert!(summary
        .reports
        .iter()
        .all(|r| r.checks.iter().any(|c| c.name == "golden")));
    let kinds: std::collections::BTreeSet<&str> =
        summary.reports.iter().map(|r| r.kind.as_str()).collect();
    assert_eq!(kinds.len(), 8);
}

#[test]
fn parallel_runs_preserve_order_and_payloads() {
    let scenes = load_corpus(&corpus_dir()).unwrap();
    let a = run_scenes(&scenes, &RunOptions::default());
    let b = run_scenes(&scenes, &RunOptions::default());
    let ids: Vec<&str> = a.iter().map(|r| r.id.as_str()).collect();
    let want: Vec<&str> = scenes.iter().map(|s| s.id.as_str()).collect();
    assert_eq!(ids, want);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.payload_json(), y.payload_json());
    }
}

#[test]
fn empty_corpus_is_a_pass() {
    let dir = std::env::temp_dir().join(format!("chimukai-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let summary = run_corpus(&dir, &RunOptions::default()).unwrap();
    assert_eq!((summary.total, summary.exit_code()), (0, 0));
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(run_corpus(&dir, &RunOptions::default()).is_err());
}
