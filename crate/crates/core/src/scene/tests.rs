use super::*;

fn scene(text: &str) -> Scene {
    Scene::from_json(text).unwrap()
}

fn run(text: &str) -> SceneReport {
    run_scene(&scene(text), &RunOptions::default()).unwrap()
}

fn check<'a>(r: &'a SceneReport, name: &str) -> &'a Check {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn transverse_lines() {
    let r = run(
        r#"{"id": "lines", "kind": "multiplicity", "ring": {"vars": ["x", "y"]}, "m": ["x"], "n": ["y"]}"#,
    );
    assert!(r.passed, "{}", r.text());
    assert_eq!(r.result["chi"], 1);
    assert_eq!(r.result["classification"], "PROPER");
    assert!(check(&r, "euler_bridge").passed);
    assert!(r.flags.contains(&"SIGN_CONVENTION".to_string()));
}

#[test]
fn hrr_line_bundles_on_the_plane() {
    let r = run(
        r#"{"id": "h", "kind": "hrr", "space": [2], "e": {"line_bundle": [1]}, "f": {"line_bundle": [3]}}"#,
    );
    assert!(r.passed, "{}", r.text());
    assert_eq!(r.result["euler_pairing"], "6");
    assert_eq!(r.result["mukai_pairing"], "6");
}

#[test]
fn gamma_scene_and_tolerance_override() {
    let s = scene(r#"{"id": "g", "kind": "gamma", "order": 12, "tol": 1e-9}"#);
    let r = run_scene(&s, &RunOptions::default()).unwrap();
    assert!(r.passed, "{}", r.text());
    let tight = RunOptions {
        tol: Some(1e-300),
        ..Default::default()
    };
    assert!(!run_scene(&s, &tight).unwrap().passed);
}

#[test]
fn expectations_become_checks() {
    let r = run(
        r#"{"id": "e", "kind": "multiplicity", "ring": {"vars": ["x", "y"]}, "m": ["x"], "n": ["y"], "expect": {"chi": 2}}"#,
    );
    assert!(!r.passed);
    let c = check(&r, "expect.chi");
    assert_eq!((c.left.as_str(), c.right.as_str()), ("1", "2"));
}

#[test]
fn schema_violations_are_rejected() {
    assert!(Scene::from_json(r#"{"id": "x", "kind": "gamma"}"#).is_err());
    assert!(Scene::from_json(r#"{"id": "x", "kind": "nope", "order": 2}"#).is_err());
    assert!(Scene::from_json(r#"{"id": "x", "kind": "gamma", "order": 2, "extra": 1}"#).is_err());
    assert!(Scene::from_json(r#"{"id": "", "kind": "gamma", "order": 2}"#).is_err());
}

#[test]
fn module_errors_surface() {
    let s = scene(
        r#"{"id": "bad", "kind": "multiplicity", "ring": {"vars": ["x", "y", "z"]}, "m": ["x"], "n": ["y"]}"#,
    );
    assert!(matches!(
        run_scene(&s, &RunOptions::default()),
        Err(Error::Inadmissible(_))
    ));
    let r = run_scene_report(&s, &RunOptions::default());
    assert!(!r.passed && r.error.is_some());
    assert_eq!(CorpusSummary::from_reports(vec![r]).exit_code(), 2);
}

#[test]
fn violation_status_fails_the_summary() {
    let mut r = run(
        r#"{"id": "lines", "kind": "multiplicity", "ring": {"vars": ["x", "y"]}, "m": ["x"], "n": ["y"]}"#,
    );
    r.checks.push(Check::new(
        "conjecture_audit",
        false,
        "PROPER chi=0",
        "VIOLATION",
    ));
    let r = r.finish();
    let s = CorpusSummary::from_reports(vec![r]);
    assert_eq!(s.exit_code(), 1);
    assert!(s.table().contains("FAIL"));
    assert_eq!(CorpusSummary::from_reports(Vec::new()).exit_code(), 0);
}

#[test]
fn every_kind_runs() {
    let scenes = [
        r#"{"id": "l", "kind": "lefschetz", "space": [1, 1], "correspondences": [[["0","0","0","0"],["0","1","0","0"],["0","0","0","0"],["0","0","0","0"]]]}"#,
        r#"{"id": "r", "kind": "residue", "ring": {"vars": ["x"], "weights": [1]}, "f": "x^3", "g": ["x"]}"#,
        r#"{"id": "a", "kind": "residue", "ade": "D4"}"#,
        r#"{"id": "t", "kind": "transform", "x": [2], "y": [2], "kernel": "diagonal", "classes": ["1", "h", "h^2"]}"#,
        r#"{"id": "t2", "kind": "transform", "x": [1], "y": [2], "kernel": "h1 + 2*h2 + h1*h2^2", "classes": ["1 + h"]}"#,
        r#"{"id": "d", "kind": "denis", "ring": {"vars": ["x"]}, "rows": [["1", "x"], ["0", "0"]]}"#,
        r#"{"id": "c", "kind": "hochschild", "ring": {"vars": ["x", "y", "z"]}, "chains": [["x", "y", "z"], ["y", "x^2"]]}"#,
        r#"{"id": "b", "kind": "hrr", "space": [2], "e": {"linear_subvariety": [1]}, "f": {"linear_subvariety": [1]}, "lambda": "h"}"#,
    ];
    for text in scenes {
        let r = run(text);
        assert!(r.passed, "{}", r.text());
    }
    let r = run(scenes[1]);
    assert_eq!(r.result["residues"]["x"], "1/3");
    let r = run(scenes[5]);
    assert_eq!(r.result["rank"], 1);
    let r = run(scenes[7]);
    assert_eq!(r.result["intersection_number"], "1");
    assert_eq!(r.result["mukai_pairing"], "-1");
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    let s = scene(
        r#"{"id": "k", "kind": "multiplicity", "ring": {"vars": ["x", "y"]}, "m": ["x", "y"], "n": ["x", "y"]}"#,
    );
    let a = run_scene(&s, &RunOptions::default()).unwrap();
    let b = run_scene(&s, &RunOptions::default()).unwrap();
    assert_eq!(a.payload_json(), b.payload_json());
    assert!(!a.payload_json().contains("timing_ms"));
    assert_eq!(a.result["tor_lengths"], serde_json::json!([1, 2, 1]));
}

#[test]
fn explain_lists_formulas() {
    let s = scene(r#"{"id": "g", "kind": "gamma", "order": 4}"#);
    let text = explain(&s);
    assert!(text.contains("Gamma identity"));
}

#[test]
fn class_text_respects_truncation() {
    let ring = crate::charclass::CohRing::new(&[1, 1]);
    let c = parse_coh_class("1 + h1^2 + 3*h1*h2", &ring).unwrap();
    assert_eq!(c.to_string(), "1 + 3*h1*h2");
}
