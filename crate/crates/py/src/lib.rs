//! Python bindings: trees, coloured hosts, constructions, the Ramsey
//! embedders and exact search. Structured results come back as plain
//! dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

use dirramsey::catalog::{canonical_code, named_target};
use dirramsey::constructions::{build_layered, build_lexicographic, sidecar, Stage};
use dirramsey::digraph::io::{parse_colouring, parse_tree, write_colouring, write_tree};
use dirramsey::digraph::{
    contains_monochromatic_copy, longest_monochromatic_directed_path, Colour, ColouredDigraph, HostKind, OrientedTree,
    Vertex,
};
use dirramsey::engine::{ramsey_path_embed_tournament, ramsey_tree_embed_tournament, RamseyEmbedOutcome};
use dirramsey::random::{random_coloured_tournament, seeded};
use dirramsey::search::{self, directed_ramsey_exact, oriented_ramsey_exact, SearchOptions};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// An oriented tree on vertices 0..order, optionally rooted.
#[pyclass(name = "OrientedTree", module = "pydirramsey", frozen, from_py_object)]
#[derive(Clone)]
struct PyTree {
    inner: OrientedTree,
}

#[pymethods]
impl PyTree {
    #[new]
    #[pyo3(signature = (order, edges, root=None))]
    fn new(order: usize, edges: Vec<(Vertex, Vertex)>, root: Option<Vertex>) -> PyResult<Self> {
        Ok(PyTree { inner: OrientedTree::new(order, edges, root).map_err(value_err)? })
    }

    /// Built-in target such as `p3`, `outstar4` or `alt5`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        named_target(name).map(|inner| PyTree { inner }).ok_or_else(|| value_err(format!("unknown target `{name}`")))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyTree { inner: parse_tree(text).map_err(value_err)? })
    }

    #[staticmethod]
    fn directed_path(order: usize) -> Self {
        PyTree { inner: OrientedTree::directed_path(order) }
    }

    fn to_text(&self) -> String {
        write_tree(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn root(&self) -> Option<Vertex> {
        self.inner.root()
    }

    fn leaves(&self) -> Vec<Vertex> {
        self.inner.leaves()
    }

    /// Isomorphism-invariant code; equal codes mean isomorphic trees.
    fn canonical_code(&self) -> String {
        canonical_code(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("OrientedTree(order={}, edges={:?}, root={:?})", self.inner.order(), self.inner.edges(), self.inner.root())
    }
}

/// An edge-coloured tournament, complete digraph or general digraph.
#[pyclass(name = "ColouredDigraph", module = "pydirramsey", frozen, from_py_object)]
#[derive(Clone)]
struct PyHost {
    inner: ColouredDigraph,
}

#[pymethods]
impl PyHost {
    /// `kind` is "T", "D" or "G"; edges are `(tail, head, colour)` with colours from 1.
    #[new]
    fn new(order: usize, colours: usize, kind: &str, edges: Vec<(Vertex, Vertex, Colour)>) -> PyResult<Self> {
        let kind = HostKind::from_code(kind).ok_or_else(|| value_err(format!("unknown host kind `{kind}`")))?;
        let inner = ColouredDigraph::from_edges(order, colours, kind, edges).map_err(value_err)?;
        inner.validate().map_err(value_err)?;
        Ok(PyHost { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyHost { inner: parse_colouring(text).map_err(value_err)? })
    }

    /// Uniformly random k-colouring of a uniformly random tournament.
    #[staticmethod]
    fn random_tournament(order: usize, colours: usize, seed: u64) -> Self {
        PyHost { inner: random_coloured_tournament(order, colours, &mut seeded(seed)) }
    }

    fn to_text(&self) -> String {
        write_colouring(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn colours(&self) -> usize {
        self.inner.colours()
    }

    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().code().to_string()
    }

    fn colour(&self, u: Vertex, v: Vertex) -> Option<Colour> {
        self.inner.colour(u, v)
    }

    fn edges(&self) -> Vec<(Vertex, Vertex, Colour)> {
        self.inner.edges().collect()
    }

    /// Host vertices of a copy of `tree` in `colour`, or None.
    fn find_copy(&self, tree: &PyTree, colour: Colour) -> Option<Vec<Vertex>> {
        contains_monochromatic_copy(&self.inner, colour, &tree.inner).embedding().map(|e| e.host_vertices)
    }

    fn longest_path(&self, colour: Colour) -> Vec<Vertex> {
        longest_monochromatic_directed_path(&self.inner, colour)
    }

    fn __repr__(&self) -> String {
        format!(
            "ColouredDigraph(order={}, colours={}, kind={:?})",
            self.inner.order(),
            self.inner.colours(),
            self.inner.kind().code()
        )
    }
}

fn outcome_json(host: &ColouredDigraph, o: &RamseyEmbedOutcome) -> Value {
    json!({
        "colour": o.colour(),
        "host_vertices": o.embedding.as_ref().map(|e| e.host_vertices.clone()),
        "verified": o.embedding.as_ref().map(|e| e.verify(host).is_ok()),
        "threshold": o.threshold.map(|t| t.to_string()),
        "guaranteed": o.guaranteed,
        "fallback_used": o.fallback_used,
        "guarantee_held": o.guarantee_held(),
        "trace": o.trace.steps().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })
}

/// Monochromatic copy of an oriented path in a coloured tournament.
#[pyfunction]
#[pyo3(signature = (host, path, trace=false))]
fn embed_path(py: Python<'_>, host: &PyHost, path: &PyTree, trace: bool) -> PyResult<Py<PyAny>> {
    let o = ramsey_path_embed_tournament(&host.inner, &path.inner, trace).map_err(value_err)?;
    to_py(py, &outcome_json(&host.inner, &o))
}

/// One target tree per colour; the first `tracked` colours are bounded by leaf count.
#[pyfunction]
#[pyo3(signature = (host, trees, tracked=0, trace=false))]
fn embed_trees(
    py: Python<'_>,
    host: &PyHost,
    trees: Vec<PyTree>,
    tracked: usize,
    trace: bool,
) -> PyResult<Py<PyAny>> {
    let trees: Vec<OrientedTree> = trees.into_iter().map(|t| t.inner).collect();
    let o = ramsey_tree_embed_tournament(&host.inner, &trees, tracked, trace).map_err(value_err)?;
    to_py(py, &outcome_json(&host.inner, &o))
}

/// Lexicographic tournament colouring. Returns `(host, sidecar dict)`.
#[pyfunction]
fn construct_lexicographic(py: Python<'_>, n: usize, l: usize, k: usize) -> PyResult<(PyHost, Py<PyAny>)> {
    let c = build_lexicographic(n, l, k).map_err(value_err)?;
    let side = sidecar(c.parameters(), &c.coordinates, &c.self_verify());
    Ok((PyHost { inner: c.host }, to_py(py, &side)?))
}

/// Layered complete-digraph colouring; `stage` defaults to the last stage for `k`.
#[pyfunction]
#[pyo3(signature = (n, k, stage=None))]
fn construct_layered(py: Python<'_>, n: usize, k: usize, stage: Option<&str>) -> PyResult<(PyHost, Py<PyAny>)> {
    let stage = match stage {
        None => Stage::last_for(k),
        Some(s) => Stage::parse(s).ok_or_else(|| value_err(format!("unknown stage `{s}`")))?,
    };
    let c = build_layered(n, k, stage).map_err(value_err)?;
    let side = sidecar(c.parameters(), &c.coordinates, &c.self_verify());
    Ok((PyHost { inner: c.host }, to_py(py, &side)?))
}

fn exact(py: Python<'_>, targets: Vec<PyTree>, max_n: usize, tournaments: bool) -> PyResult<(Option<PyHost>, Py<PyAny>)> {
    let trees: Vec<OrientedTree> = targets.into_iter().map(|t| t.inner).collect();
    if trees.is_empty() {
        return Err(value_err("at least one target is required"));
    }
    let opts = SearchOptions::new(max_n, trees.len());
    let res = py
        .detach(|| if tournaments { oriented_ramsey_exact(&trees, &opts) } else { directed_ramsey_exact(&trees, &opts) })
        .map_err(value_err)?;
    let labels: Vec<String> = trees.iter().map(canonical_code).collect();
    let summary = res.to_json(&labels, None);
    Ok((res.witness.map(|inner| PyHost { inner }), to_py(py, &summary)?))
}

/// Exact oriented Ramsey number over tournaments. Returns `(witness, result dict)`.
#[pyfunction]
#[pyo3(signature = (targets, max_n=7))]
fn exact_tournament_ramsey(py: Python<'_>, targets: Vec<PyTree>, max_n: usize) -> PyResult<(Option<PyHost>, Py<PyAny>)> {
    exact(py, targets, max_n, true)
}

/// Exact directed Ramsey number over complete digraphs.
#[pyfunction]
#[pyo3(signature = (targets, max_n=6))]
fn exact_digraph_ramsey(py: Python<'_>, targets: Vec<PyTree>, max_n: usize) -> PyResult<(Option<PyHost>, Py<PyAny>)> {
    exact(py, targets, max_n, false)
}

/// Number of non-isomorphic tournaments on `n` vertices.
#[pyfunction]
fn count_tournaments(py: Python<'_>, n: usize) -> PyResult<usize> {
    py.detach(|| search::enumerate_tournaments(n, search::MAX_TOURNAMENT_LIMIT))
        .map(|v| v.len())
        .map_err(value_err)
}

#[pymodule]
fn pydirramsey(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTree>()?;
    m.add_class::<PyHost>()?;
    m.add_function(wrap_pyfunction!(embed_path, m)?)?;
    m.add_function(wrap_pyfunction!(embed_trees, m)?)?;
    m.add_function(wrap_pyfunction!(construct_lexicographic, m)?)?;
    m.add_function(wrap_pyfunction!(construct_layered, m)?)?;
    m.add_function(wrap_pyfunction!(exact_tournament_ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(exact_digraph_ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(count_tournaments, m)?)?;
    Ok(())
}
