//! Python bindings: tables are lists of rows, reports are JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qk::classify::{classify_4p, classify_extraspecial2_principal, classify_pq, classify_special_p, search_8p};
use qk::io::{format_quandle, parse_quandle};
use qk::quandle::{find_isomorphism, FiniteQuandle, QuandleReport};
use qk::recipe::build_recipe;
use qk::verify::{run_suite, Suite, VerifyOptions};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(err)
}

fn from_rows(rows: Vec<Vec<u32>>) -> PyResult<FiniteQuandle> {
    FiniteQuandle::from_rows(&rows).map_err(err)
}

/// Table of a recipe, as a list of rows.
#[pyfunction]
fn construct(recipe: &str) -> PyResult<Vec<Vec<u32>>> {
    Ok(build_recipe(recipe).map_err(err)?.rows())
}

/// Invariant report of a table, as JSON.
#[pyfunction]
fn analyze(rows: Vec<Vec<u32>>) -> PyResult<String> {
    to_json(&QuandleReport::new(&from_rows(rows)?))
}

#[pyfunction]
fn parse(text: &str) -> PyResult<Vec<Vec<u32>>> {
    Ok(parse_quandle(text).map_err(err)?.rows())
}

#[pyfunction]
fn format(rows: Vec<Vec<u32>>) -> PyResult<String> {
    Ok(format_quandle(&from_rows(rows)?))
}

/// An isomorphism as an image list, or `None`.
#[pyfunction]
fn isomorphism(first: Vec<Vec<u32>>, second: Vec<Vec<u32>>) -> PyResult<Option<Vec<usize>>> {
    Ok(find_isomorphism(&from_rows(first)?, &from_rows(second)?))
}

/// Classification result as JSON; `kind` is pq, 4p, 8p, extraspecial2 or specialp.
#[pyfunction]
fn classify(kind: &str, params: Vec<u64>) -> PyResult<String> {
    let bad = || err(format!("wrong parameters {params:?} for {kind}"));
    match (kind, params.as_slice()) {
        ("pq", &[p, q]) => to_json(&classify_pq(p, q).map_err(err)?),
        ("4p", &[p]) => to_json(&classify_4p(p).map_err(err)?),
        ("8p", &[p]) => to_json(&search_8p(p).map_err(err)?),
        ("extraspecial2", &[n]) => to_json(&classify_extraspecial2_principal(n as usize).map_err(err)?),
        ("specialp", &[p]) => to_json(&classify_special_p(p).map_err(err)?),
        _ => Err(bad()),
    }
}

/// Verification report as JSON.
#[pyfunction]
#[pyo3(signature = (suite, slow = false))]
fn verify(suite: &str, slow: bool) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(err)?;
    to_json(&run_suite(suite, VerifyOptions { slow }))
}

#[pymodule]
fn quandlekit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(format, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
