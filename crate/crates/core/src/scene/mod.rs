//! Scene files: JSON requests for one computation each, their dispatch to
//! the computational modules, and corpus runs with golden comparison.

mod explain;
mod kinds;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::charclass::SheafDescriptor;
use crate::error::{Error, Result};

pub use explain::explain;
pub use kinds::parse_coh_class;

/// Variables and optional positive weights of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDecl {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplicityScene {
    pub ring: RingDecl,
    pub m: Vec<String>,
    pub n: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_resolution_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HrrScene {
    /// `[n_1, …, n_k]` for `P^{n_1} × … × P^{n_k}`.
    pub space: Vec<usize>,
    pub e: SheafDescriptor,
    pub f: SheafDescriptor,
    /// Odd class for the twisted Mukai vector, in the variables `h` or `h1, h2, …`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

fn default_tol() -> f64 {
    1e-9
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaScene {
    pub order: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LefschetzScene {
    pub space: Vec<usize>,
    /// Square matrices over the monomial basis of `H*(X)`, entries as rationals.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub correspondences: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueScene {
    /// One of `A1, A2, …, D4, …, E6, E7, E8`; replaces `ring` and `f`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ade: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub g: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformScene {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `"diagonal"` (requires `x == y`) or a class on `X × Y`.
    pub kernel: String,
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DenisScene {
    pub ring: RingDecl,
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HochschildScene {
    pub ring: RingDecl,
    /// Each chain is an elementary tensor `b_0 ⊗ … ⊗ b_r`.
    pub chains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Multiplicity(MultiplicityScene),
    Hrr(HrrScene),
    Gamma(GammaScene),
    Lefschetz(LefschetzScene),
    Residue(ResidueScene),
    Transform(TransformScene),
    Denis(DenisScene),
    Hochschild(HochschildScene),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Multiplicity(_) => "multiplicity",
            Payload::Hrr(_) => "hrr",
            Payload::Gamma(_) => "gamma",
            Payload::Lefschetz(_) => "lefschetz",
            Payload::Residue(_) => "residue",
            Payload::Transform(_) => "transform",
            Payload::Denis(_) => "denis",
            Payload::Hochschild(_) => "hochschild",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub id: String,
    #[serde(flatten)]
    pub payload: Payload,
    /// Expected values of top-level result fields; each becomes a check.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, Value>,
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Self> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if scene.id.trim().is_empty() {
            return Err(Error::Invalid("scene id must be nonempty".into()));
        }
        Ok(scene)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn kind(&self) -> &'static str {
        self.payload.kind()
    }
}

/// Overrides applied on top of the scene file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOptions {
    pub tol: Option<f64>,
    pub max_resolution_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub left: String,
    pub right: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        passed: bool,
        left: impl ToString,
        right: impl ToString,
    ) -> Self {
        Check {
            name: name.into(),
            passed,
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    pub fn eq<T: PartialEq + ToString>(name: impl Into<String>, left: T, right: T) -> Self {
        let passed = left == right;
        Self::new(name, passed, left, right)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneReport {
    pub id: String,
    pub kind: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: f64,
}

impl SceneReport {
    fn finish(mut self) -> Self {
        self.passed = self.error.is_none() && self.checks.iter().all(|c| c.passed);
        self
    }

    /// The report as JSON with the timing field removed.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Value::Object(m) = &mut v {
            m.remove("timing_ms");
        }
        v
    }

    pub fn payload_json(&self) -> String {
        serde_json::to_string_pretty(&self.payload()).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Aligned human-readable rendering of one report.
    pub fn text(&self) -> String {
        let mut s = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{} [{}] {status}", self.id, self.kind);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "  error: {e}");
        }
        if let Value::Object(m) = &self.result {
            for (k, v) in m {
                let _ = writeln!(s, "  {k}: {}", compact(v));
            }
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  {mark} {:width$}  {} | {}", c.name, c.left, c.right);
        }
        if !self.flags.is_empty() {
            let _ = writeln!(s, "  flags: {}", self.flags.join(", "));
        }
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs one scene. Module errors surface as `Err`; failed checks do not.
pub fn run_scene(scene: &Scene, opts: &RunOptions) -> Result<SceneReport> {
    let start = Instant::now();
    let out = kinds::dispatch(&scene.payload, opts)?;
    let mut checks = out.checks;
    for (key, want) in &scene.expect {
        let got = out.result.get(key).cloned().unwrap_or(Value::Null);
        checks.push(Check::new(
            format!("expect.{key}"),
            &got == want,
            compact(&got),
            compact(want),
        ));
    }
    let report = SceneReport {
        id: scene.id.clone(),
        kind: scene.kind().into(),
        inputs: serde_json::to_value(&scene.payload).expect("scenes serialize"),
        result: out.result,
        checks,
        flags: out.flags,
        passed: false,
        error: None,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(report.finish())
}

/// Like [`run_scene`], but a module error becomes a failed report.
pub fn run_scene_report(scene: &Scene, opts: &RunOptions) -> SceneReport {
    run_scene(scene, opts).unwrap_or_else(|e| {
        SceneReport {
            id: scene.id.clone(),
            kind: scene.kind().into(),
            inputs: serde_json::to_value(&scene.payload).expect("scenes serialize"),
            result: Value::Null,
            checks: Vec::new(),
            flags: vec!["ERROR".into()],
            passed: false,
            error: Some(e.to_string()),
            timing_ms: 0.0,
        }
        .finish()
    })
}

/// Scene files (`*.json`) directly inside `dir`, sorted by file name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::Parse(e.to_string()))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn load_corpus(dir: &Path) -> Result<Vec<Scene>> {
    let scenes: Vec<Scene> = corpus_files(dir)?
        .iter()
        .map(|p| Scene::from_file(p))
        .collect::<Result<_>>()?;
    let mut seen = std::collections::BTreeSet::new();
    for s in &scenes {
        if !seen.insert(s.id.as_str()) {
            return Err(Error::Invalid(format!("duplicate scene id {:?}", s.id)));
        }
    }
    Ok(scenes)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub reports: Vec<SceneReport>,
}

impl CorpusSummary {
    pub fn from_reports(reports: Vec<SceneReport>) -> Self {
        let passed = reports.iter().filter(|r| r.passed).count();
        let errors = reports.iter().filter(|r| r.error.is_some()).count();
        CorpusSummary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
            errors,
            reports,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// 0 when every scene passes, 2 when a scene hit an input error, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.errors > 0 {
            2
        } else if self.failed > 0 {
            1
        } else {
            0
        }
    }

    /// Reports without timings, one JSON array.
    pub fn payload_json(&self) -> String {
        let v: Vec<Value> = self.reports.iter().map(SceneReport::payload).collect();
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Aligned pass/fail table.
    pub fn table(&self) -> String {
        let idw = self
            .reports
            .iter()
            .map(|r| r.id.len())
            .max()
            .unwrap_or(0)
            .max(5);
        let kw = self
            .reports
            .iter()
            .map(|r| r.kind.len())
            .max()
            .unwrap_or(0)
            .max(4);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:idw$}  {:kw$}  status  checks  time_ms",
            "scene", "kind"
        );
        for r in &self.reports {
            let ok = r.checks.iter().filter(|c| c.passed).count();
            let status = if r.error.is_some() {
                "ERROR"
            } else if r.passed {
                "PASS"
            } else {
                "FAIL"
            };
            let checks = format!("{ok}/{}", r.checks.len());
            let _ = writeln!(
                s,
                "{:idw$}  {:kw$}  {status:6}  {checks:>6}  {:>7.1}",
                r.id, r.kind, r.timing_ms
            );
            for c in r.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(
                    s,
                    "{:idw$}    failed {}: {} | {}",
                    "", c.name, c.left, c.right
                );
            }
            if let Some(e) = &r.error {
                let _ = writeln!(s, "{:idw$}    {e}", "");
            }
        }
        let _ = writeln!(
            s,
            "{} scenes, {} passed, {} failed",
            self.total, self.passed, self.failed
        );
        s
    }
}

/// Runs scenes concurrently; reports keep the input order.
pub fn run_scenes(scenes: &[Scene], opts: &RunOptions) -> Vec<SceneReport> {
    scenes
        .par_iter()
        .map(|s| run_scene_report(s, opts))
        .collect()
}

/// Golden reports live in `<dir>/expected/<id>.json`.
pub fn expected_dir(dir: &Path) -> PathBuf {
    dir.join("expected")
}

/// Adds a `golden` check comparing each report (timing excluded) against
/// its stored expectation, when one exists.
pub fn compare_golden(reports: &mut [SceneReport], expected: &Path) -> Result<()> {
    for r in reports.iter_mut() {
        let path = expected.join(format!("{}.json", r.id));
        if !path.is_file() {
            r.flags.push("NO_GOLDEN".into());
            continue;
        }
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut want: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if let Value::Object(m) = &mut want {
            m.remove("timing_ms");
        }
        let got = r.payload();
        let diff = first_difference(&got, &want, "");
        let (left, right) = match &diff {
            Some((p, g, w)) => (format!("{p}: {g}"), format!("{p}: {w}")),
            None => ("report".into(), "expected".into()),
        };
        r.checks
            .push(Check::new("golden", diff.is_none(), left, right));
        r.passed = r.error.is_none() && r.checks.iter().all(|c| c.passed);
    }
    Ok(())
}

fn first_difference(got: &Value, want: &Value, path: &str) -> Option<(String, String, String)> {
    match (got, want) {
        (Value::Object(a), Value::Object(b)) => {
            let keys: std::collections::BTreeSet<&String> = a.keys().chain(b.keys()).collect();
            keys.into_iter().find_map(|k| {
                let p = format!("{path}/{k}");
                match (a.get(k), b.get(k)) {
                    (Some(x), Some(y)) => first_difference(x, y, &p),
                    (x, y) => Some((p, opt(x), opt(y))),
                }
            })
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => a
            .iter()
            .zip(b)
            .enumerate()
            .find_map(|(i, (x, y))| first_difference(x, y, &format!("{path}/{i}"))),
        _ if got == want => None,
        _ => Some((path.to_string(), got.to_string(), want.to_string())),
    }
}

fn opt(v: Option<&Value>) -> String {
    v.map_or_else(|| "missing".into(), Value::to_string)
}

/// Loads every scene in `dir`, runs them and compares against golden
/// reports. Unreadable or ill-formed scene files are an `Err`.
pub fn run_corpus(dir: &Path, opts: &RunOptions) -> Result<CorpusSummary> {
    let scenes = load_corpus(dir)?;
    let mut reports = run_scenes(&scenes, opts);
    let expected = expected_dir(dir);
    if expected.is_dir() {
        compare_golden(&mut reports, &expected)?;
    }
    Ok(CorpusSummary::from_reports(reports))
}

#[cfg(test)]
mod tests;
