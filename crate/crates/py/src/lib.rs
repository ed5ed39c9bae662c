//! Python bindings: graphs, instances, generators, preprocessing, both
//! solvers and the verification/metric helpers. Solver results and reports
//! cross the boundary as plain dicts in the shared JSON schema.

use hcgp_core::exact::{
    export_lp, separate, solve_exact, CutMode, SolverSettings,
};
use hcgp_core::heuristic::{solve_heuristic, HeuristicSettings};
use hcgp_core::instance::{
    build_cost_matrix, instance_from_json, instance_to_json, load_instance, mycielskian,
    preprocess_extract_biconnected, preprocess_raise_connectivity, save_instance, Balance,
    GeneratorSpec, Instance,
};
use hcgp_core::model::{
    add_degree_inequalities, build_hess_model, evaluate_balance, evaluate_compactness,
    theorem1_oracle, verify_feasible, Assignment, Partition,
};
use hcgp_core::report::{render_partition_dot, RunOutput};
use hcgp_core::Graph;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py_any(py)?,
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)?
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)?
            }
        }
        Value::String(s) => s.into_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)?
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_py_any(py)?
        }
    })
}

#[pyclass(name = "Graph", frozen, from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges, weights=None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let inner = match weights {
            Some(w) => Graph::with_weights(n, &edges, &w).map_err(value_err)?,
            None => Graph::new(n, &edges).map_err(value_err)?,
        };
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.vertex_count() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, s: Vec<usize>) -> PyResult<Vec<usize>> {
        self.inner.neighborhood(&s).map_err(value_err)
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        self.inner.connected_components()
    }

    /// Hop distances with None marking disconnected pairs.
    fn hop_distances(&self) -> Vec<Vec<Option<usize>>> {
        self.inner.hop_distances()
    }

    fn is_q_connected(&self, q: usize) -> bool {
        self.inner.is_q_connected(q)
    }

    /// (kappa, cutset) — cutset is None for complete graphs.
    fn minimum_vertex_cutset(&self) -> (usize, Option<Vec<usize>>) {
        let (k, c) = self.inner.minimum_vertex_cutset();
        (k, c.map(|c| c.vertices))
    }

    fn is_ab_separator(&self, c: Vec<usize>, a: usize, b: usize) -> PyResult<bool> {
        self.inner.is_ab_separator(&c, a, b).map_err(value_err)
    }

    fn minimal_separator(&self, s: Vec<usize>, a: usize, b: usize) -> PyResult<Vec<usize>> {
        self.inner.minimal_separator(&s, a, b).map_err(value_err)
    }

    fn largest_biconnected_block(&self) -> Vec<usize> {
        self.inner.largest_biconnected_block()
    }

    fn articulation_points(&self) -> Vec<usize> {
        self.inner.articulation_points()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

#[pyclass(name = "Instance", frozen, from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    #[pyo3(signature = (graph, k, q, tau=None, l=None, u=None, name="instance".to_string()))]
    fn new(
        graph: PyGraph,
        k: usize,
        q: usize,
        tau: Option<f64>,
        l: Option<f64>,
        u: Option<f64>,
        name: String,
    ) -> PyResult<Self> {
        let balance = match (tau, l, u) {
            (Some(t), None, None) => Balance::Tau(t),
            (None, Some(l), Some(u)) => Balance::Bounds { l, u },
            (None, None, None) => Balance::Tau(f64::INFINITY),
            _ => {
                return Err(value_err(
                    "specify balance as tau=... or as both l=... and u=...",
                ))
            }
        };
        let inner = Instance::new(graph.inner, k, q, balance, name).map_err(value_err)?;
        Ok(PyInstance { inner })
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph.clone(),
        }
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    /// Effective (L, U) bounds.
    fn bounds(&self) -> (f64, f64) {
        self.inner.bounds()
    }

    fn to_json(&self) -> String {
        instance_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        let (l, u) = self.inner.bounds();
        format!(
            "Instance(name={:?}, n={}, k={}, q={}, L={l}, U={u})",
            self.inner.name,
            self.inner.graph.vertex_count(),
            self.inner.k,
            self.inner.q
        )
    }
}

/// Build a graph from a generator spec like "grid(3,4)" or
/// "mycielskian(cycle(5),1)".
#[pyfunction]
fn generate(kind: &str) -> PyResult<PyGraph> {
    let spec: GeneratorSpec = kind.parse().map_err(value_err)?;
    Ok(PyGraph {
        inner: spec.build().map_err(value_err)?,
    })
}

/// One or more Mycielski steps applied to a base graph.
#[pyfunction]
#[pyo3(signature = (graph, levels=1))]
fn mycielskian_of(graph: PyGraph, levels: usize) -> PyGraph {
    PyGraph {
        inner: mycielskian(&graph.inner, levels),
    }
}

/// Largest 2-connected block, relabeled; returns (graph, old_labels).
#[pyfunction]
fn extract_biconnected(graph: PyGraph) -> PyResult<(PyGraph, Vec<usize>)> {
    let ex = preprocess_extract_biconnected(&graph.inner).map_err(value_err)?;
    Ok((PyGraph { inner: ex.graph }, ex.old_labels))
}

/// Edge additions until the graph is q-connected.
#[pyfunction]
fn raise_connectivity(graph: PyGraph, q: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: preprocess_raise_connectivity(&graph.inner, q).map_err(value_err)?,
    })
}

#[pyfunction]
fn load(path: &str) -> PyResult<PyInstance> {
    Ok(PyInstance {
        inner: load_instance(path).map_err(value_err)?,
    })
}

#[pyfunction]
fn loads(text: &str) -> PyResult<PyInstance> {
    Ok(PyInstance {
        inner: instance_from_json(text).map_err(value_err)?,
    })
}

#[pyfunction]
fn save(instance: PyInstance, path: &str) -> PyResult<()> {
    save_instance(&instance.inner, path).map_err(value_err)
}

fn run_output_to_py(py: Python<'_>, out: &RunOutput) -> PyResult<Py<PyAny>> {
    let value = serde_json::to_value(out).map_err(value_err)?;
    json_to_py(py, &value)
}

/// Branch-and-cut solve; returns the result record as a dict.
#[pyfunction]
#[pyo3(signature = (instance, time_limit=None, seed=0, cuts="all", root_resilience=true, node_limit=None))]
fn exact(
    py: Python<'_>,
    instance: PyInstance,
    time_limit: Option<f64>,
    seed: u64,
    cuts: &str,
    root_resilience: bool,
    node_limit: Option<u64>,
) -> PyResult<Py<PyAny>> {
    let cut_mode = match cuts {
        "all" => CutMode::All,
        "one" => CutMode::One,
        other => return Err(value_err(format!("cuts must be \"all\" or \"one\", got {other}"))),
    };
    let settings = SolverSettings {
        root_resilience,
        cut_mode,
        time_limit,
        seed,
        node_limit,
    };
    let result = solve_exact(&instance.inner, &settings);
    let record = RunOutput::from_exact(&instance.inner, &settings, &result);
    run_output_to_py(py, &record)
}

/// Ear-construction heuristic (q = 2); returns the result record as a dict.
#[pyfunction]
#[pyo3(signature = (instance, seed=0, time_limit=None, max_restarts=1000))]
fn heuristic(
    py: Python<'_>,
    instance: PyInstance,
    seed: u64,
    time_limit: Option<f64>,
    max_restarts: usize,
) -> PyResult<Py<PyAny>> {
    let settings = HeuristicSettings {
        seed,
        time_limit,
        max_restarts,
        ..HeuristicSettings::default()
    };
    let (result, trace) = solve_heuristic(&instance.inner, &settings).map_err(value_err)?;
    let record = RunOutput::from_heuristic(&instance.inner, &settings, &result, &trace);
    run_output_to_py(py, &record)
}

/// Feasibility report for a candidate partition, as a dict.
#[pyfunction]
fn verify(py: Python<'_>, instance: PyInstance, parts: Vec<Vec<usize>>) -> PyResult<Py<PyAny>> {
    let costs = build_cost_matrix(&instance.inner);
    let p = Partition::from_parts(&parts, &costs);
    let report = verify_feasible(&p, &instance.inner);
    let value = serde_json::to_value(&report).map_err(value_err)?;
    json_to_py(py, &value)
}

/// φ_comp of a partition (roots recomputed by the argmin rule).
#[pyfunction]
fn compactness(instance: PyInstance, parts: Vec<Vec<usize>>) -> f64 {
    let costs = build_cost_matrix(&instance.inner);
    let p = Partition::from_parts(&parts, &costs);
    evaluate_compactness(&p, &costs)
}

/// φ_bal of a partition against the instance bounds.
#[pyfunction]
fn balance(instance: PyInstance, parts: Vec<Vec<usize>>) -> f64 {
    let costs = build_cost_matrix(&instance.inner);
    let p = Partition::from_parts(&parts, &costs);
    evaluate_balance(&p, &instance.inner)
}

/// Exhaustive separator-based properness oracle (small graphs only).
#[pyfunction]
fn properness_oracle(graph: PyGraph, parts: Vec<Vec<usize>>, q: usize) -> bool {
    let weights = vec![1.0; graph.inner.vertex_count()];
    let inst = Instance::new(
        Graph::with_weights(graph.inner.vertex_count(), graph.inner.edges(), &weights).unwrap(),
        parts.len().max(2),
        q.max(1),
        Balance::Tau(f64::INFINITY),
        "oracle",
    );
    let costs = match inst {
        Ok(ref i) => build_cost_matrix(i),
        Err(_) => return false,
    };
    let p = Partition::from_parts(&parts, &costs);
    theorem1_oracle(&p, &graph.inner, q)
}

/// Run the integer separation routine on an explicit assignment; cuts come
/// back as dicts.
#[pyfunction]
#[pyo3(signature = (graph, parts, roots, q, root_resilience=true, cuts="all"))]
fn separation(
    py: Python<'_>,
    graph: PyGraph,
    parts: Vec<Vec<usize>>,
    roots: Vec<usize>,
    q: usize,
    root_resilience: bool,
    cuts: &str,
) -> PyResult<Py<PyAny>> {
    let cut_mode = match cuts {
        "all" => CutMode::All,
        "one" => CutMode::One,
        other => return Err(value_err(format!("cuts must be \"all\" or \"one\", got {other}"))),
    };
    let settings = SolverSettings {
        root_resilience,
        cut_mode,
        ..SolverSettings::default()
    };
    let x = Assignment::from_parts(graph.inner.vertex_count(), &parts, &roots);
    let out = separate(&graph.inner, &x, q, &settings);
    let list = PyList::empty(py);
    for cut in out {
        let d = PyDict::new(py);
        d.set_item("root", cut.root)?;
        d.set_item(
            "kind",
            match cut.kind {
                hcgp_core::CutKind::SingleAnchor => "single-anchor",
                hcgp_core::CutKind::PairAnchor => "pair-anchor",
            },
        )?;
        d.set_item("anchor_a", cut.anchor_a)?;
        d.set_item("anchor_b", cut.anchor_b)?;
        d.set_item("separator", cut.separator.clone())?;
        d.set_item("q", cut.q)?;
        list.append(d)?;
    }
    list.into_py_any(py)
}

/// Write the master model (with degree rows) in LP format.
#[pyfunction]
fn write_lp(instance: PyInstance, path: &str) -> PyResult<()> {
    let costs = build_cost_matrix(&instance.inner);
    let mut model = build_hess_model(&instance.inner, &costs).map_err(value_err)?;
    add_degree_inequalities(&mut model, &instance.inner);
    export_lp(&model, path).map_err(value_err)
}

/// DOT rendering of a partition over the instance graph.
#[pyfunction]
fn partition_dot(instance: PyInstance, parts: Vec<Vec<usize>>) -> String {
    let costs = build_cost_matrix(&instance.inner);
    let p = Partition::from_parts(&parts, &costs);
    render_partition_dot(&p, &instance.inner.graph)
}

#[pymodule]
fn hcgp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(mycielskian_of, m)?)?;
    m.add_function(wrap_pyfunction!(extract_biconnected, m)?)?;
    m.add_function(wrap_pyfunction!(raise_connectivity, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(loads, m)?)?;
    m.add_function(wrap_pyfunction!(save, m)?)?;
    m.add_function(wrap_pyfunction!(exact, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(compactness, m)?)?;
    m.add_function(wrap_pyfunction!(balance, m)?)?;
    m.add_function(wrap_pyfunction!(properness_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(separation, m)?)?;
    m.add_function(wrap_pyfunction!(write_lp, m)?)?;
    m.add_function(wrap_pyfunction!(partition_dot, m)?)?;
    Ok(())
}
