//! Python bindings: digraphs, exact values with certificates, deciders,
//! constructions and the reduction gadget.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use strongk::constructors::{self, CycleCover};
use strongk::deciders;
use strongk::gadgets::build_pipeline;
use strongk::io::{parse_digraph, to_dot, write_digraph};
use strongk::solver::{self, LambdaResult};
use strongk::{Digraph, Packing, SolverConfig, VertexSet};

create_exception!(
    pystrongk,
    ParseError,
    PyValueError,
    "Malformed digraph or certificate text."
);
create_exception!(
    pystrongk,
    CapExceeded,
    PyRuntimeError,
    "A configured computational cap was hit."
);

type Parts = Vec<Vec<(usize, usize)>>;

fn to_py(e: strongk::Error) -> PyErr {
    if e.is_parse() {
        ParseError::new_err(e.to_string())
    } else if e.is_cap() {
        CapExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn config(candidate_cap: usize, oracle_threshold: usize) -> SolverConfig {
    SolverConfig {
        candidate_cap,
        oracle_threshold,
        ..SolverConfig::default()
    }
}

fn terminal_set(s: Vec<usize>, n: usize) -> PyResult<VertexSet> {
    VertexSet::new(s, n).map_err(to_py)
}

#[pyclass(name = "Digraph", module = "pystrongk", frozen)]
pub struct PyDigraph {
    inner: Digraph,
}

impl From<Digraph> for PyDigraph {
    fn from(inner: Digraph) -> Self {
        PyDigraph { inner }
    }
}

#[pymethods]
impl PyDigraph {
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        Digraph::from_arc_list(n, arcs)
            .map(Into::into)
            .map_err(to_py)
    }

    /// Parses the `n m` / `u v` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_digraph(text).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Digraph::complete(n).into()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().to_vec()
    }

    fn to_text(&self) -> String {
        write_digraph(&self.inner)
    }

    #[pyo3(signature = (name = "D"))]
    fn to_dot(&self, name: &str) -> String {
        to_dot(&self.inner, name)
    }

    fn is_strong(&self) -> bool {
        self.inner.is_strong()
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn is_semicomplete(&self) -> bool {
        self.inner.is_semicomplete()
    }

    fn reverse(&self) -> Self {
        self.inner.reverse().into()
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Digraph(n={}, m={})",
            self.inner.n(),
            self.inner.arc_count()
        )
    }
}

fn result_dict<'py>(py: Python<'py>, r: LambdaResult) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("value", r.value)?;
    out.set_item("witness", r.witness.members().to_vec())?;
    out.set_item("parts", r.certificate.parts)?;
    Ok(out)
}

/// Exact `lambda_k` as `{"value", "witness", "parts"}`.
#[pyfunction]
#[pyo3(signature = (d, k, candidate_cap = 50_000, oracle_threshold = 14))]
fn lambda_k<'py>(
    py: Python<'py>,
    d: &PyDigraph,
    k: usize,
    candidate_cap: usize,
    oracle_threshold: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config(candidate_cap, oracle_threshold);
    let r = py
        .detach(|| solver::lambda_k_exact(&d.inner, k, &cfg))
        .map_err(to_py)?;
    result_dict(py, r)
}

/// Exact `lambda_S` as `{"value", "witness", "parts"}`.
#[pyfunction]
#[pyo3(signature = (d, s, candidate_cap = 50_000, oracle_threshold = 14))]
fn lambda_s<'py>(
    py: Python<'py>,
    d: &PyDigraph,
    s: Vec<usize>,
    candidate_cap: usize,
    oracle_threshold: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let s = terminal_set(s, d.inner.n())?;
    let cfg = config(candidate_cap, oracle_threshold);
    let r = py
        .detach(|| solver::lambda_s_exact(&d.inner, &s, &cfg))
        .map_err(to_py)?;
    result_dict(py, r)
}

/// `ell` arc-disjoint `S`-strong parts, or `None` if there are fewer.
#[pyfunction]
#[pyo3(signature = (d, s, ell, candidate_cap = 50_000))]
fn decide_lambda_s(
    py: Python<'_>,
    d: &PyDigraph,
    s: Vec<usize>,
    ell: usize,
    candidate_cap: usize,
) -> PyResult<Option<Parts>> {
    let s = terminal_set(s, d.inner.n())?;
    let cfg = config(candidate_cap, SolverConfig::default().oracle_threshold);
    py.detach(|| solver::decide_lambda_s(&d.inner, &s, ell, &cfg))
        .map(|p| p.map(|p| p.parts))
        .map_err(to_py)
}

/// Brute-force `lambda_S` by arc-to-part assignment.
#[pyfunction]
#[pyo3(signature = (d, s, threshold = 14))]
fn oracle_lambda_s(d: &PyDigraph, s: Vec<usize>, threshold: usize) -> PyResult<usize> {
    let s = terminal_set(s, d.inner.n())?;
    solver::oracle_lambda_s(&d.inner, &s, threshold).map_err(to_py)
}

#[pyfunction]
fn verify_packing(d: &PyDigraph, s: Vec<usize>, parts: Parts) -> PyResult<bool> {
    let s = terminal_set(s, d.inner.n())?;
    Ok(strongk::verify_packing(&d.inner, &Packing::new(s, parts)))
}

#[pyfunction]
fn arc_connectivity(d: &PyDigraph) -> usize {
    deciders::arc_connectivity(&d.inner)
}

/// Polynomial bounds as `{"k", "lower", "upper", "lower_rule", "upper_rule"}`.
#[pyfunction]
fn bounds<'py>(py: Python<'py>, d: &PyDigraph, k: usize) -> PyResult<Bound<'py, PyDict>> {
    let b = deciders::bounds(&d.inner, k).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("k", b.k)?;
    out.set_item("lower", b.lower)?;
    out.set_item("upper", b.upper)?;
    out.set_item("lower_rule", b.lower_rule)?;
    out.set_item("upper_rule", b.upper_rule)?;
    Ok(out)
}

#[pyfunction]
fn decide2_semicomplete(d: &PyDigraph, k: usize) -> PyResult<bool> {
    deciders::decide2_semicomplete(&d.inner, k).map_err(to_py)
}

/// The two spanning parts of a strong orientation and its reverse, or `None`
/// when the digraph has a bridge.
#[pyfunction]
fn decide2_symmetric(d: &PyDigraph, k: usize) -> PyResult<Option<Parts>> {
    deciders::decide2_symmetric(&d.inner, k)
        .map(|p| p.map(|p| p.parts))
        .map_err(to_py)
}

#[pyfunction]
fn lambda2_symmetric(d: &PyDigraph) -> PyResult<usize> {
    deciders::lambda2_symmetric(&d.inner).map_err(to_py)
}

/// `lambda_k` of the complete digraph on `n` vertices.
#[pyfunction]
fn complete_lambda(n: usize, k: usize) -> usize {
    constructors::complete_lambda(n, k)
}

#[pyfunction]
fn complete_packing(n: usize, s: Vec<usize>) -> PyResult<Parts> {
    let s = terminal_set(s, n)?;
    constructors::complete_packing(n, &s)
        .map(|p| p.parts)
        .map_err(to_py)
}

/// The complete digraph minus a cycle cover such as `"0-1,2-3-4"`.
#[pyfunction]
fn minimal_graph(n: usize, cover: &str) -> PyResult<PyDigraph> {
    let cover: CycleCover = cover.parse().map_err(to_py)?;
    constructors::minimal_graph(n, &cover)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn minimal_packing(d: &PyDigraph, s: Vec<usize>) -> PyResult<Parts> {
    let s = terminal_set(s, d.inner.n())?;
    constructors::minimal_packing(&d.inner, &s)
        .map(|p| p.parts)
        .map_err(to_py)
}

#[pyfunction]
fn cartesian_product(g: &PyDigraph, h: &PyDigraph) -> PyDigraph {
    Digraph::cartesian_product(&g.inner, &h.inner).into()
}

#[pyfunction]
fn product_packing(g: &PyDigraph, h: &PyDigraph, s: Vec<usize>) -> PyResult<Parts> {
    let s = terminal_set(s, g.inner.n() * h.inner.n())?;
    constructors::product_packing(&g.inner, &h.inner, &s, &SolverConfig::default())
        .map(|p| p.parts)
        .map_err(to_py)
}

/// The reduction gadget for terminals `(s1, t1, s2, t2)`: returns the
/// digraph, its terminal set and the `name: id` sidecar text.
#[pyfunction]
fn gadget(
    d: &PyDigraph,
    terminals: (usize, usize, usize, usize),
    k: usize,
    ell: usize,
) -> PyResult<(PyDigraph, Vec<usize>, String)> {
    let (s1, t1, s2, t2) = terminals;
    let inst = build_pipeline(&d.inner, [s1, t1, s2, t2], k, ell).map_err(to_py)?;
    let sidecar = inst.sidecar();
    Ok((inst.digraph.into(), inst.s.members().to_vec(), sidecar))
}

#[pymodule]
pub fn pystrongk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_class::<PyDigraph>()?;
    m.add_function(wrap_pyfunction!(lambda_k, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_s, m)?)?;
    m.add_function(wrap_pyfunction!(decide_lambda_s, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_lambda_s, m)?)?;
    m.add_function(wrap_pyfunction!(verify_packing, m)?)?;
    m.add_function(wrap_pyfunction!(arc_connectivity, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(decide2_semicomplete, m)?)?;
    m.add_function(wrap_pyfunction!(decide2_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(lambda2_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(complete_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(complete_packing, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_graph, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_packing, m)?)?;
    m.add_function(wrap_pyfunction!(cartesian_product, m)?)?;
    m.add_function(wrap_pyfunction!(product_packing, m)?)?;
    m.add_function(wrap_pyfunction!(gadget, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
