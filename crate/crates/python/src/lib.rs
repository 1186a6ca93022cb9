//! Python bindings: `import distrep`.

use distrep_core as core;
use distrep_core::schoenberg::DEGENERACY_TOL;
use distrep_core::{EmbedOptions, Outcome, Source, SymMatrix};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "distrep", frozen)]
struct PyGraph(core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::from_edges(n, &edges).map(PyGraph).map_err(value_error)
    }

    /// Reads the `n` / `u v` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_graph(text).map(PyGraph).map_err(value_error)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    fn complement(&self) -> Self {
        PyGraph(self.0.complement())
    }

    /// "complete", "independent" or "mixed".
    fn classify(&self) -> &'static str {
        match self.0.classify() {
            core::GraphClass::Complete => "complete",
            core::GraphClass::Independent => "independent",
            core::GraphClass::Mixed => "mixed",
        }
    }

    fn mixed_triple(&self) -> Option<(usize, usize, usize)> {
        self.0.find_mixed_triple().map(|t| t.vertices)
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __eq__(&self, other: PyRef<'_, PyGraph>) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.0.n(), self.0.edges())
    }
}

#[pyclass(name = "ColoredGraph", module = "distrep", frozen)]
struct PyColoredGraph(core::ColoredCompleteGraph);

#[pymethods]
impl PyColoredGraph {
    /// `table[u][v]` is the color of pair `{u, v}`; the diagonal is ignored.
    #[new]
    fn new(table: Vec<Vec<i64>>) -> PyResult<Self> {
        core::ColoredCompleteGraph::from_table(&table).map(PyColoredGraph).map_err(value_error)
    }

    /// Reads the `n` / `u v c` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_colored(text).map(PyColoredGraph).map_err(value_error)
    }

    #[staticmethod]
    fn from_graph(g: PyRef<'_, PyGraph>) -> PyResult<Self> {
        core::ColoredCompleteGraph::from_graph(&g.0).map(PyColoredGraph).map_err(value_error)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn color(&self, u: usize, v: usize) -> PyResult<i64> {
        if u >= self.0.n() || v >= self.0.n() || u == v {
            return Err(value_error(format!("no pair ({u}, {v})")));
        }
        Ok(self.0.color(u, v))
    }

    fn palette(&self) -> Vec<i64> {
        self.0.palette().to_vec()
    }

    fn mixed_triple(&self) -> Option<(usize, usize, usize)> {
        self.0.find_mixed_triple().map(|t| t.vertices)
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("ColoredGraph(n={}, palette={:?})", self.0.n(), self.0.palette())
    }
}

fn source(obj: &Bound<'_, PyAny>) -> PyResult<Source> {
    if let Ok(g) = obj.cast::<PyGraph>() {
        return Ok(Source::Graph(g.get().0.clone()));
    }
    if let Ok(c) = obj.cast::<PyColoredGraph>() {
        return Ok(Source::Colored(c.get().0.clone()));
    }
    Err(pyo3::exceptions::PyTypeError::new_err("expected Graph or ColoredGraph"))
}

fn matrix(rows: Vec<Vec<f64>>) -> PyResult<SymMatrix> {
    SymMatrix::from_rows(&rows).map_err(value_error)
}

/// Returns `(q, maximizer)` for a zero-diagonal symmetric matrix.
#[pyfunction]
fn q_value(m: Vec<Vec<f64>>) -> PyResult<(f64, Vec<f64>)> {
    let v = core::q_value(&matrix(m)?).map_err(value_error)?;
    Ok((v.q, v.maximizer))
}

/// Returns `(classification, q)`; the classification is "FullDimension",
/// "Degenerate" or "NonEmbeddable".
#[pyfunction]
#[pyo3(signature = (m, tol = DEGENERACY_TOL))]
fn embeddability(m: Vec<Vec<f64>>, tol: f64) -> PyResult<(&'static str, f64)> {
    let (kind, v) = core::embeddability(&matrix(m)?, tol).map_err(value_error)?;
    Ok((kind.name(), v.q))
}

fn report_dict<'py>(py: Python<'py>, r: &core::VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("passed", r.passed)?;
    d.set_item("rel_tol", r.rel_tol)?;
    d.set_item("gram_rank", r.gram_rank)?;
    d.set_item("cayley_menger_dimension", r.cayley_menger_dimension)?;
    d.set_item("dimension_bound", r.dimension_bound)?;
    d.set_item("class_means", r.classes.iter().map(|c| c.mean).collect::<Vec<_>>())?;
    d.set_item("violations", r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>())?;
    Ok(d)
}

/// Embeds a Graph or ColoredGraph. The returned dict has `status` ("ok" or
/// "fallback"), `dim`, `coords` and `certification`; successful runs add
/// `classes`, `tau`, `final_weights` and `final_lengths`, fallbacks a `note`.
#[pyfunction]
#[pyo3(signature = (graph, tol = DEGENERACY_TOL))]
fn embed<'py>(py: Python<'py>, graph: &Bound<'py, PyAny>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let src = source(graph)?;
    let opts = EmbedOptions { degeneracy_tol: tol, ..EmbedOptions::default() };
    let out = core::embed_with(&src, &opts).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let d = PyDict::new(py);
    let emb = out.embedding();
    d.set_item("dim", emb.dim)?;
    d.set_item("coords", emb.coords.clone())?;
    match &emb.report {
        Some(r) => d.set_item("certification", report_dict(py, r)?)?,
        None => d.set_item("certification", py.None())?,
    }
    match &out {
        Outcome::Represented(r) => {
            d.set_item("status", "ok")?;
            d.set_item("classes", r.family.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>())?;
            d.set_item("tau", r.homotopy.tau)?;
            d.set_item("final_weights", r.homotopy.final_weights.clone())?;
            d.set_item("final_lengths", r.homotopy.final_lengths.clone())?;
        }
        Outcome::Fallback { reason, .. } => {
            d.set_item("status", "fallback")?;
            d.set_item("note", reason.note())?;
        }
    }
    Ok(d)
}

/// Checks coordinates against a Graph or ColoredGraph.
#[pyfunction]
#[pyo3(signature = (graph, coords, rel_tol = core::representation::REL_TOL))]
fn verify<'py>(
    py: Python<'py>,
    graph: &Bound<'py, PyAny>,
    coords: Vec<Vec<f64>>,
    rel_tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let src = source(graph)?;
    let emb = core::Embedding::from_coords(coords).map_err(value_error)?;
    let report = core::verify_representation(&src, &emb, rel_tol).map_err(value_error)?;
    report_dict(py, &report)
}

/// Vertices of the regular simplex with unit edges on `n` points.
#[pyfunction]
fn simplex(n: usize) -> PyResult<Vec<Vec<f64>>> {
    if n < 1 {
        return Err(value_error("n must be at least 1"));
    }
    Ok(core::simplex_embedding(n).coords)
}

/// All labeled graphs on `n <= 8` vertices.
#[pyfunction]
fn enumerate_graphs(n: usize) -> PyResult<Vec<PyGraph>> {
    Ok(core::enumerate_graphs(n).map_err(value_error)?.map(PyGraph).collect())
}

#[pymodule]
fn distrep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyColoredGraph>()?;
    m.add_function(wrap_pyfunction!(q_value, m)?)?;
    m.add_function(wrap_pyfunction!(embeddability, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(simplex, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_graphs, m)?)?;
    m.add("DEGENERACY_TOL", DEGENERACY_TOL)?;
    Ok(())
}
