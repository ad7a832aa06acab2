//! Python bindings: graphs, the pruned top-k engine, the textbook oracle and
//! the metrics that compare them.

use std::fs::File;
use std::io::BufReader;

use pyo3::exceptions::{PyIOError, PyIndexError, PyValueError};
use pyo3::prelude::*;

use topk_closeness as core;

fn to_py_err(err: core::Error) -> PyErr {
    match err {
        core::Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

#[pyclass(name = "Graph", module = "topk_closeness", frozen)]
pub struct PyGraph {
    inner: core::Graph,
}

impl PyGraph {
    fn check_vertex(&self, v: u32) -> PyResult<()> {
        if (v as usize) < self.inner.node_count() {
            Ok(())
        } else {
            Err(PyIndexError::new_err(format!("vertex {v} out of range")))
        }
    }
}

#[pymethods]
impl PyGraph {
    /// Graph on `n` vertices from `(u, v)` pairs.
    #[new]
    #[pyo3(signature = (n, edges, directed = false))]
    fn new(n: usize, edges: Vec<(u32, u32)>, directed: bool) -> PyResult<Self> {
        let inner = core::Graph::from_edges(n, edges, directed).map_err(to_py_err)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (path, directed = false))]
    fn load(path: &str, directed: bool) -> PyResult<Self> {
        let file = File::open(path).map_err(|e| PyIOError::new_err(format!("{path}: {e}")))?;
        let inner = core::load_edge_list(BufReader::new(file), directed).map_err(to_py_err)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (text, directed = false))]
    fn parse(text: &str, directed: bool) -> PyResult<Self> {
        let inner = core::load_edge_list(text.as_bytes(), directed).map_err(to_py_err)?;
        Ok(PyGraph { inner })
    }

    /// `model` is one of `gnp`, `pa`, `path`, `star`, `cycle`.
    #[staticmethod]
    #[pyo3(signature = (model, n, directed = false, p = None, degree = 4, seed = 0))]
    fn generate(model: &str, n: usize, directed: bool, p: Option<f64>, degree: usize, seed: u64) -> PyResult<Self> {
        let model = match model {
            "gnp" => core::Model::Gnp {
                n,
                p: p.ok_or_else(|| PyValueError::new_err("gnp needs p"))?,
            },
            "pa" => core::Model::PreferentialAttachment { n, degree },
            "path" => core::Model::Path { n },
            "star" => core::Model::Star { n },
            "cycle" => core::Model::Cycle { n },
            other => return Err(PyValueError::new_err(format!("unknown model {other:?}"))),
        };
        let inner = core::generate(model, directed, seed).map_err(to_py_err)?;
        Ok(PyGraph { inner })
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn arc_count(&self) -> usize {
        self.inner.arc_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn out_degree(&self, v: u32) -> PyResult<usize> {
        self.check_vertex(v)?;
        Ok(self.inner.out_degree(v))
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        self.check_vertex(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().collect()
    }

    /// Canonical edge-list text.
    fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.inner.write_edge_list(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("labels are utf-8")
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(nodes={}, arcs={}, directed={})",
            self.inner.node_count(),
            self.inner.arc_count(),
            if self.inner.is_directed() { "True" } else { "False" }
        )
    }
}

#[pyclass(name = "RankedVertex", module = "topk_closeness", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRankedVertex {
    rank: usize,
    vertex: u32,
    label: String,
    closeness: f64,
    farness: u64,
    reachable: u64,
}

#[pymethods]
impl PyRankedVertex {
    fn __repr__(&self) -> String {
        format!(
            "RankedVertex(rank={}, label={:?}, closeness={})",
            self.rank, self.label, self.closeness
        )
    }
}

fn ranked(result: &core::TopKResult) -> Vec<PyRankedVertex> {
    result
        .entries
        .iter()
        .map(|e| PyRankedVertex {
            rank: e.rank,
            vertex: e.vertex,
            label: e.label.clone(),
            closeness: e.closeness,
            farness: e.farness,
            reachable: e.reachable,
        })
        .collect()
}

#[pyclass(name = "TopKRun", module = "topk_closeness", frozen, get_all)]
pub struct PyTopKRun {
    results: Vec<PyRankedVertex>,
    /// m_vis
    visited_arcs: u64,
    cut_vertices: usize,
    completed_vertices: usize,
    final_threshold: f64,
    workers: usize,
    preprocessing_seconds: f64,
    total_seconds: f64,
}

#[pymethods]
impl PyTopKRun {
    fn closeness_values(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.closeness).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "TopKRun(k={}, visited_arcs={}, cut_vertices={})",
            self.results.len(),
            self.visited_arcs,
            self.cut_vertices
        )
    }
}

/// Exact top-k closeness with pruned visits; releases the GIL while running.
#[pyfunction]
#[pyo3(signature = (graph, k = 10, workers = 1))]
fn top_k(py: Python<'_>, graph: &PyGraph, k: usize, workers: usize) -> PyResult<PyTopKRun> {
    if k == 0 {
        return Err(PyValueError::new_err("k must be at least 1"));
    }
    let g = &graph.inner;
    let run = py.detach(|| core::top_k(g, k, workers.max(1)));
    Ok(PyTopKRun {
        results: ranked(&run.result),
        visited_arcs: run.stats.visited_arcs,
        cut_vertices: run.stats.cut_count(),
        completed_vertices: run.stats.completed_count(),
        final_threshold: run.final_threshold,
        workers: run.stats.workers,
        preprocessing_seconds: run.stats.preprocessing.as_secs_f64(),
        total_seconds: run.stats.total.as_secs_f64(),
    })
}

/// Top-k by one full BFS per vertex.
#[pyfunction]
#[pyo3(signature = (graph, k = 10))]
fn top_k_textbook(py: Python<'_>, graph: &PyGraph, k: usize) -> PyResult<Vec<PyRankedVertex>> {
    if k == 0 {
        return Err(PyValueError::new_err("k must be at least 1"));
    }
    let g = &graph.inner;
    Ok(ranked(&py.detach(|| core::top_k_textbook(g, k))))
}

/// `(closeness, farness, reachable, m_tot)` for every vertex.
#[pyfunction]
fn exact_closeness_all(py: Python<'_>, graph: &PyGraph) -> (Vec<f64>, Vec<u64>, Vec<u64>, u64) {
    let g = &graph.inner;
    let (table, m_tot) = py.detach(|| core::exact_closeness_all(g));
    (table.closeness, table.farness, table.reachable, m_tot)
}

/// `(distances, visited, arcs_traversed)`; unreached vertices map to `None`.
#[pyfunction]
fn bfs(graph: &PyGraph, source: u32) -> PyResult<(Vec<Option<u32>>, usize, u64)> {
    graph.check_vertex(source)?;
    let res = core::bfs(&graph.inner, source);
    let distances = graph.inner.vertices().map(|w| res.distance(w)).collect();
    Ok((distances, res.visited, res.arcs_traversed))
}

/// Component id per vertex of an undirected graph.
#[pyfunction]
fn connected_components(graph: &PyGraph) -> PyResult<Vec<u32>> {
    let cc = core::connected_components(&graph.inner).map_err(to_py_err)?;
    Ok(cc.component_ids().to_vec())
}

/// SCC id per vertex; ids follow a topological order of the condensation.
#[pyfunction]
fn strongly_connected_components(graph: &PyGraph) -> PyResult<Vec<u32>> {
    let dag = core::compute_scc_dag(&graph.inner).map_err(to_py_err)?;
    Ok(dag.scc_ids().to_vec())
}

/// `(alpha, omega)` per vertex: bounds on the number of reachable vertices.
#[pyfunction]
fn reachability_bounds(graph: &PyGraph) -> (Vec<u64>, Vec<u64>) {
    let g = &graph.inner;
    let b = core::reachability_for(g);
    (
        g.vertices().map(|v| b.alpha(v)).collect(),
        g.vertices().map(|v| b.omega(v)).collect(),
    )
}

/// `(improvement_factor, performance_ratio)`; `None` where a denominator is zero.
#[pyfunction]
fn metrics(visited_arcs: u64, textbook_arcs: u64, arcs: u64, n: u64) -> (Option<f64>, Option<f64>) {
    let m = core::metrics(visited_arcs, textbook_arcs, arcs, n);
    (m.improvement_factor, m.performance_ratio)
}

#[pyfunction]
fn textbook_arc_count(py: Python<'_>, graph: &PyGraph) -> u64 {
    let g = &graph.inner;
    py.detach(|| core::textbook_arc_count(g))
}

#[pyfunction]
fn farness_lower_bound(level: u32, farness: u64, ball: u64, gamma_next: u64, x: u64) -> i64 {
    core::farness_lower_bound(level, farness, ball, gamma_next, x)
}

#[pyfunction]
fn closeness_upper_bound(lam: i64, reachable: u64, n: u64) -> f64 {
    core::closeness_upper_bound(lam, reachable, n)
}

#[pyfunction]
fn inverse_closeness_lower_bound(
    level: u32,
    farness: u64,
    ball: u64,
    gamma_next: u64,
    alpha: u64,
    omega: u64,
    n: u64,
) -> PyResult<f64> {
    if alpha < 2 || omega < alpha {
        return Err(PyValueError::new_err("requires 2 <= alpha <= omega"));
    }
    Ok(core::inverse_closeness_lower_bound(level, farness, ball, gamma_next, alpha, omega, n))
}

#[pymodule]
#[pyo3(name = "topk_closeness")]
fn topk_closeness_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRankedVertex>()?;
    m.add_class::<PyTopKRun>()?;
    m.add_function(wrap_pyfunction!(top_k, m)?)?;
    m.add_function(wrap_pyfunction!(top_k_textbook, m)?)?;
    m.add_function(wrap_pyfunction!(exact_closeness_all, m)?)?;
    m.add_function(wrap_pyfunction!(bfs, m)?)?;
    m.add_function(wrap_pyfunction!(connected_components, m)?)?;
    m.add_function(wrap_pyfunction!(strongly_connected_components, m)?)?;
    m.add_function(wrap_pyfunction!(reachability_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(metrics, m)?)?;
    m.add_function(wrap_pyfunction!(textbook_arc_count, m)?)?;
    m.add_function(wrap_pyfunction!(farness_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(closeness_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_closeness_lower_bound, m)?)?;
    Ok(())
}
