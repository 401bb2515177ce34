//! Python bindings: graphs, cube representations, and the three builders.
//!
//! Build with `cargo build -p cubicity-py`, then rename the produced
//! `libcubicity_py.so` to `cubicity_py.so` somewhere on `sys.path`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cubicity::{
    build_det, build_detband, build_rand, gen, heuristic_arrangement, verify_representation,
    BoundMode, BuildReport, Seed, Verdict, Violation,
};

fn to_py_err(e: cubicity::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A simple undirected graph on vertices 1..n.
#[pyclass(name = "Graph", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: cubicity::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Ok(PyGraph { inner: cubicity::Graph::from_edges(n, &edges).map_err(to_py_err)? })
    }

    /// Parse the edge-list text format ("n m" header, then edge lines).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: cubicity::Graph::parse(text).map_err(to_py_err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (family, n, p = None, seed = None))]
    fn generate(family: &str, n: usize, p: Option<f64>, seed: Option<u64>) -> PyResult<Self> {
        let inner = match family {
            "path" => gen::path(n),
            "cycle" => gen::cycle(n),
            "complete" => gen::complete(n),
            "star" => gen::star(n),
            "binary-tree" => gen::binary_tree(n as u32),
            "gnp" => gen::gnp(
                n,
                p.ok_or_else(|| PyValueError::new_err("gnp requires p"))?,
                seed.unwrap_or(0),
            ),
            other => return Err(PyValueError::new_err(format!("unknown family '{other}'"))),
        };
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        self.inner.has_edge(u, v)
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// An ordered stack of indifference-graph dimensions.
#[pyclass(name = "CubeRepresentation")]
struct PyCubeRepresentation {
    inner: cubicity::CubeRepresentation,
}

#[pymethods]
impl PyCubeRepresentation {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyCubeRepresentation {
            inner: cubicity::CubeRepresentation::parse(text).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    /// Left endpoints of dimension `dim` (0-based), one per vertex.
    fn lefts(&self, dim: usize) -> PyResult<Vec<i64>> {
        self.inner
            .dims()
            .get(dim)
            .map(|d| d.lefts().to_vec())
            .ok_or_else(|| PyValueError::new_err(format!("dimension {dim} out of range")))
    }

    fn lengths(&self) -> Vec<i64> {
        self.inner.dims().iter().map(|d| d.length()).collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    /// Unit-scaled export with endpoints as exact "p/q" rationals.
    fn to_unit_text(&self) -> String {
        self.inner.to_unit_text()
    }

    fn __repr__(&self) -> String {
        format!("CubeRepresentation(n={}, k={})", self.inner.n(), self.inner.k())
    }
}

fn report_dict<'py>(py: Python<'py>, r: &BuildReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("algorithm", r.algorithm)?;
    d.set_item("k_achieved", r.k_achieved)?;
    d.set_item("k_bound", r.k_bound)?;
    d.set_item("k_bound_alt", r.k_bound_alt)?;
    d.set_item("max_degree", r.max_degree)?;
    d.set_item("n", r.n)?;
    d.set_item("seeds", r.seeds.clone())?;
    d.set_item("surviving_nonedge_trace", r.surviving_nonedge_trace.clone())?;
    d.set_item("verified", r.verified)?;
    d.set_item("fallback_used", r.fallback_used)?;
    d.set_item("batches", r.batches)?;
    d.set_item("width", r.width)?;
    d.set_item("block_size", r.block_size)?;
    d.set_item("path", r.path)?;
    let times = PyDict::new(py);
    for (phase, dur) in &r.phase_times {
        times.set_item(phase, dur.as_secs_f64() * 1e3)?;
    }
    d.set_item("phase_times_ms", times)?;
    Ok(d)
}

/// Randomized build; `mode` is "expected" or "whp".
#[pyfunction]
#[pyo3(name = "build_rand", signature = (graph, mode = "whp", seed = 0, retries = 16))]
fn py_build_rand<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    mode: &str,
    seed: u64,
    retries: u32,
) -> PyResult<(PyCubeRepresentation, Bound<'py, PyDict>)> {
    let mode = match mode {
        "expected" => BoundMode::Expected,
        "whp" => BoundMode::Whp,
        other => return Err(PyValueError::new_err(format!("unknown mode '{other}'"))),
    };
    let (rep, report) = build_rand(&graph.inner, mode, Seed(seed), retries).map_err(to_py_err)?;
    Ok((PyCubeRepresentation { inner: rep }, report_dict(py, &report)?))
}

/// Deterministic build with the 4(Δ+1) ln n dimension guarantee.
#[pyfunction]
#[pyo3(name = "build_det")]
fn py_build_det<'py>(
    py: Python<'py>,
    graph: &PyGraph,
) -> PyResult<(PyCubeRepresentation, Bound<'py, PyDict>)> {
    let (rep, report) = build_det(&graph.inner).map_err(to_py_err)?;
    Ok((PyCubeRepresentation { inner: rep }, report_dict(py, &report)?))
}

/// Bandwidth-driven build. `order` is a position->vertex list; None runs
/// the bandwidth-reduction heuristic.
#[pyfunction]
#[pyo3(name = "build_detband", signature = (graph, order = None))]
fn py_build_detband<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    order: Option<Vec<u32>>,
) -> PyResult<(PyCubeRepresentation, Bound<'py, PyDict>)> {
    let arr = match order {
        Some(order) => cubicity::LinearArrangement::from_order(order).map_err(to_py_err)?,
        None => heuristic_arrangement(&graph.inner),
    };
    let (rep, report) = build_detband(&graph.inner, &arr).map_err(to_py_err)?;
    Ok((PyCubeRepresentation { inner: rep }, report_dict(py, &report)?))
}

/// Exact verification: returns a list of violation strings, empty when
/// the representation is valid.
#[pyfunction]
#[pyo3(name = "verify")]
fn py_verify(graph: &PyGraph, rep: &PyCubeRepresentation) -> PyResult<Vec<String>> {
    match verify_representation(&graph.inner, &rep.inner).map_err(to_py_err)? {
        Verdict::Valid => Ok(Vec::new()),
        Verdict::Invalid(violations) => Ok(violations
            .iter()
            .map(|v| match v {
                Violation::Missing { u, v, dim } => format!("missing {u} {v} dim {dim}"),
                Violation::Extra { u, v } => format!("extra {u} {v}"),
            })
            .collect()),
    }
}

/// Width of the given position->vertex order.
#[pyfunction]
#[pyo3(name = "width")]
fn py_width(graph: &PyGraph, order: Vec<u32>) -> PyResult<usize> {
    let arr = cubicity::LinearArrangement::from_order(order).map_err(to_py_err)?;
    cubicity::width(&graph.inner, &arr).map_err(to_py_err)
}

/// Bandwidth-reduction heuristic; returns a position->vertex list.
#[pyfunction]
#[pyo3(name = "heuristic_arrangement")]
fn py_heuristic_arrangement(graph: &PyGraph) -> Vec<u32> {
    heuristic_arrangement(&graph.inner).order().to_vec()
}

#[pymodule]
fn cubicity_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCubeRepresentation>()?;
    m.add_function(wrap_pyfunction!(py_build_rand, m)?)?;
    m.add_function(wrap_pyfunction!(py_build_det, m)?)?;
    m.add_function(wrap_pyfunction!(py_build_detband, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify, m)?)?;
    m.add_function(wrap_pyfunction!(py_width, m)?)?;
    m.add_function(wrap_pyfunction!(py_heuristic_arrangement, m)?)?;
    Ok(())
}
