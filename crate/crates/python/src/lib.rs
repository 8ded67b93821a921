use std::path::Path;

use chimukai_core::charclass::{
    euler_pairing as core_euler, mukai_pairing as core_mukai, mukai_vector, CohRing,
    SheafDescriptor,
};
use chimukai_core::polycore::scalar::fmt_q;
use chimukai_core::polycore::{parse_poly, parse_polys, PolyRing, Q};
use chimukai_core::residue::JacobiRing;
use chimukai_core::resolutions::{ModulePresentation, ResolveOptions};
use chimukai_core::scene::{self, RunOptions, Scene};
use chimukai_core::serre::serre_chi_with;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(chimukai, ChimukaiError, PyException);

fn err(e: chimukai_core::Error) -> PyErr {
    ChimukaiError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| ChimukaiError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn descriptor(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<SheafDescriptor> {
    let text: String = match obj.extract::<String>() {
        Ok(s) => s,
        Err(_) => py
            .import("json")?
            .call_method1("dumps", (obj,))?
            .extract()?,
    };
    serde_json::from_str(&text)
        .map_err(|e| ChimukaiError::new_err(format!("bad sheaf descriptor: {e}")))
}

fn ring(vars: &[String], weights: Option<Vec<u32>>) -> PyResult<std::sync::Arc<PolyRing>> {
    let w = weights.unwrap_or_else(|| vec![1; vars.len()]);
    PolyRing::weighted(vars, &w).map_err(err)
}

/// Runs a scene given as JSON text and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (scene_json, tol=None, max_resolution_length=None))]
fn run_scene<'py>(
    py: Python<'py>,
    scene_json: &str,
    tol: Option<f64>,
    max_resolution_length: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = Scene::from_json(scene_json).map_err(err)?;
    let opts = RunOptions {
        tol,
        max_resolution_length,
    };
    let report = py.detach(|| scene::run_scene(&s, &opts)).map_err(err)?;
    to_py(py, &report)
}

/// Runs every scene in a corpus directory.
#[pyfunction]
fn run_corpus<'py>(py: Python<'py>, path: &str) -> PyResult<Bound<'py, PyAny>> {
    let summary = py
        .detach(|| scene::run_corpus(Path::new(path), &RunOptions::default()))
        .map_err(err)?;
    to_py(py, &summary)
}

#[pyfunction]
fn explain(scene_json: &str) -> PyResult<String> {
    Ok(scene::explain(&Scene::from_json(scene_json).map_err(err)?))
}

/// Serre's intersection multiplicity of `A/(m)` and `A/(n)`.
#[pyfunction]
#[pyo3(signature = (vars, m, n, weights=None))]
fn serre_chi<'py>(
    py: Python<'py>,
    vars: Vec<String>,
    m: Vec<String>,
    n: Vec<String>,
    weights: Option<Vec<u32>>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = ring(&vars, weights)?;
    let mm = ModulePresentation::quotient(&r, &parse_polys(&m, &r).map_err(err)?).map_err(err)?;
    let nn = ModulePresentation::quotient(&r, &parse_polys(&n, &r).map_err(err)?).map_err(err)?;
    let report = py
        .detach(|| serre_chi_with(&mm, &nn, &ResolveOptions::new(r.nvars())))
        .map_err(err)?;
    to_py(py, &report)
}

/// Mukai pairing of two sheaf descriptors on a product of projective spaces.
#[pyfunction]
fn mukai_pairing(
    py: Python<'_>,
    space: Vec<usize>,
    e: &Bound<'_, PyAny>,
    f: &Bound<'_, PyAny>,
) -> PyResult<String> {
    let ring = CohRing::new(&space);
    let (e, f) = (descriptor(py, e)?, descriptor(py, f)?);
    let v: Q = core_mukai(
        &mukai_vector(&e, &ring).map_err(err)?,
        &mukai_vector(&f, &ring).map_err(err)?,
    )
    .map_err(err)?;
    Ok(fmt_q(&v))
}

#[pyfunction]
fn euler_pairing(
    py: Python<'_>,
    space: Vec<usize>,
    e: &Bound<'_, PyAny>,
    f: &Bound<'_, PyAny>,
) -> PyResult<String> {
    let ring = CohRing::new(&space);
    let (e, f) = (descriptor(py, e)?, descriptor(py, f)?);
    Ok(core_euler(&e, &f, &ring).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (order, tol=1e-9))]
fn gamma_identity<'py>(py: Python<'py>, order: usize, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let r = chimukai_core::charclass::gamma_identity_check(order, tol).map_err(err)?;
    to_py(py, &r)
}

fn jacobi(f: &str, vars: &[String], weights: &[u32]) -> PyResult<JacobiRing> {
    let r = PolyRing::new(vars);
    JacobiRing::new(&parse_poly(f, &r).map_err(err)?, weights).map_err(err)
}

#[pyfunction]
fn milnor_number(f: &str, vars: Vec<String>, weights: Vec<u32>) -> PyResult<usize> {
    Ok(jacobi(f, &vars, &weights)?.milnor_number())
}

/// Grothendieck residue of `g` with respect to the partials of `f`.
#[pyfunction]
fn residue(f: &str, vars: Vec<String>, weights: Vec<u32>, g: &str) -> PyResult<String> {
    let jr = jacobi(f, &vars, &weights)?;
    let gp = parse_poly(g, jr.f().ring()).map_err(err)?;
    Ok(fmt_q(&jr.residue(&gp).map_err(err)?))
}

#[pymodule]
fn chimukai(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ChimukaiError", m.py().get_type::<ChimukaiError>())?;
    m.add_function(wrap_pyfunction!(run_scene, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(explain, m)?)?;
    m.add_function(wrap_pyfunction!(serre_chi, m)?)?;
    m.add_function(wrap_pyfunction!(mukai_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(euler_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_identity, m)?)?;
    m.add_function(wrap_pyfunction!(milnor_number, m)?)?;
    m.add_function(wrap_pyfunction!(residue, m)?)?;
    Ok(())
}
