//! Python bindings for the latstick embedding pipeline.

use std::collections::BTreeMap;

use latstick::bounds;
use latstick::fixtures;
use latstick::graph_model::{census, validate_spec};
use latstick::invariants::component_determinant;
use latstick::io::{to_obj, EmbeddingDocument, InputDocument};
use latstick::{build_full, LatticeEmbedding, SpatialGraphSpec};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(latstick_py, LatstickError, PyException);

fn semantic(e: impl ToString) -> PyErr {
    LatstickError::new_err(e.to_string())
}

fn syntax(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An input graph: components given by arc presentations, glued at cut vertices.
#[pyclass(frozen, module = "latstick_py")]
struct SpatialGraph {
    spec: SpatialGraphSpec,
}

#[pymethods]
impl SpatialGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = InputDocument::parse(text).map_err(syntax)?;
        Ok(SpatialGraph { spec: doc.to_spec().map_err(syntax)? })
    }

    #[staticmethod]
    fn demo(name: &str) -> PyResult<Self> {
        fixtures::by_name(name)
            .map(|spec| SpatialGraph { spec })
            .ok_or_else(|| syntax(format!("unknown demo {name}")))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InputDocument::from_spec(&self.spec)).expect("documents serialize")
    }

    /// Problems with the input, empty when it is valid.
    fn problems(&self) -> Vec<String> {
        let report = validate_spec(&self.spec);
        if report.is_clean() {
            Vec::new()
        } else {
            report.to_string().lines().map(str::to_string).collect()
        }
    }

    /// `e`, `v`, `s`, `b`, `k` and the total arc count `alpha`.
    fn census(&self) -> PyResult<BTreeMap<&'static str, usize>> {
        let c = census(&self.spec).map_err(semantic)?;
        Ok(BTreeMap::from([("e", c.e), ("v", c.v), ("s", c.s), ("b", c.b), ("k", c.k), ("alpha", c.alpha_total)]))
    }

    fn build(&self) -> PyResult<Embedding> {
        let report = validate_spec(&self.spec);
        if !report.is_clean() {
            return Err(semantic(report));
        }
        let out = build_full(&self.spec).map_err(semantic)?;
        Ok(Embedding { doc: EmbeddingDocument::from_build(&out), lattice: out.embedding })
    }

    fn __repr__(&self) -> String {
        let ids: Vec<&str> = self.spec.components.iter().map(|c| c.id.as_str()).collect();
        format!("SpatialGraph(components={ids:?})")
    }
}

/// Integer lattice embedding with its stick counts and bounds.
#[pyclass(frozen, module = "latstick_py")]
struct Embedding {
    doc: EmbeddingDocument,
    lattice: LatticeEmbedding,
}

#[pymethods]
impl Embedding {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = EmbeddingDocument::parse(text).map_err(syntax)?;
        let lattice = doc.embedding().map_err(syntax)?;
        Ok(Embedding { doc, lattice })
    }

    #[getter]
    fn stick_count(&self) -> usize {
        self.doc.counts.total
    }

    /// Sticks per axis plus `total`.
    #[getter]
    fn counts(&self) -> BTreeMap<&'static str, usize> {
        let c = &self.doc.counts;
        BTreeMap::from([("x", c.x), ("y", c.y), ("z", c.z), ("total", c.total)])
    }

    #[getter]
    fn construction_bound(&self) -> i64 {
        self.doc.bounds_report.construction_bound
    }

    #[getter]
    fn theorem_bound(&self) -> Option<i64> {
        self.doc.bounds_report.theorem_bound
    }

    #[getter]
    fn vertices(&self) -> BTreeMap<String, [i64; 3]> {
        self.lattice.vertices.clone()
    }

    /// Sticks as `(axis, start, end)`.
    #[getter]
    fn sticks(&self) -> Vec<(String, [i64; 3], [i64; 3])> {
        self.lattice.sticks.iter().map(|s| (s.axis.name().to_string(), s.start, s.end)).collect()
    }

    /// Crossing count and determinant of one knot component.
    fn determinant(&self, component: &str) -> PyResult<(usize, u64)> {
        let complex = self.lattice.to_complex().map_err(semantic)?;
        component_determinant(&complex, component).map_err(semantic)
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.doc).expect("documents serialize")
    }

    fn to_obj(&self) -> String {
        to_obj(&self.lattice)
    }

    fn __repr__(&self) -> String {
        format!("Embedding(sticks={}, bound={})", self.doc.counts.total, self.doc.bounds_report.construction_bound)
    }
}

#[pyfunction]
fn demo_names() -> Vec<&'static str> {
    fixtures::DEMO_NAMES.to_vec()
}

#[pyfunction]
fn construction_count(alpha: i64, e: i64, v: i64, s: i64, k: i64) -> PyResult<i64> {
    bounds::construction_count(alpha, e, v, s, k).map_err(syntax)
}

#[pyfunction]
fn main_upper(c: i64, e: i64, v: i64, s: i64, b: i64, k: i64) -> i64 {
    bounds::main_upper(c, e, v, s, b, k)
}

#[pyfunction]
fn lemma_binding(alpha: i64, v: i64, e: i64) -> PyResult<i64> {
    bounds::lemma_binding(alpha, v, e).map_err(syntax)
}

#[pymodule]
fn latstick_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SpatialGraph>()?;
    m.add_class::<Embedding>()?;
    m.add("LatstickError", m.py().get_type::<LatstickError>())?;
    m.add_function(wrap_pyfunction!(demo_names, m)?)?;
    m.add_function(wrap_pyfunction!(construction_count, m)?)?;
    m.add_function(wrap_pyfunction!(main_upper, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_binding, m)?)?;
    Ok(())
}
