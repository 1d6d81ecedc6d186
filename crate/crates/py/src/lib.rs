//! Python bindings: `semitrans.TritMatrix`, `semitrans.MorphismTriple` and
//! functions returning plain dicts shaped like the CLI's JSON.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

use semitrans_core::ist::{classify_ist_with, empirical_ist_with};
use semitrans_core::morphism::dump_patterns;
use semitrans_core::{
    check_iteration, check_split, classify_row, iterate, patterns_at, semi_transitive_oracle, split_graph, Budget,
    Condition3Reading, MorphismTriple, Trit, TritMatrix,
};

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "TritMatrix", module = "semitrans", frozen)]
struct PyTritMatrix {
    inner: TritMatrix,
}

#[pymethods]
impl PyTritMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(Self { inner: TritMatrix::from_values(&rows).map_err(value_err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(value_err)? })
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    fn to_list(&self) -> Vec<Vec<i8>> {
        self.inner.row_slices().map(|r| r.iter().map(|t| t.value()).collect()).collect()
    }

    /// Distinct rows in `v:len,...` form, sorted.
    fn row_patterns(&self) -> Vec<String> {
        self.inner.row_set().iter().map(|r| r.to_string()).collect()
    }

    fn is_layered(&self) -> bool {
        self.inner.is_layered()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TritMatrix({:?})", self.to_list())
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "MorphismTriple", module = "semitrans", frozen)]
struct PyMorphismTriple {
    inner: MorphismTriple,
}

fn reading(statement: bool) -> Condition3Reading {
    if statement {
        Condition3Reading::Statement
    } else {
        Condition3Reading::Proof
    }
}

#[pymethods]
impl PyMorphismTriple {
    #[new]
    fn new(a: PyRef<'_, PyTritMatrix>, b: PyRef<'_, PyTritMatrix>, c: PyRef<'_, PyTritMatrix>) -> PyResult<Self> {
        let inner = MorphismTriple::new(a.inner.clone(), b.inner.clone(), c.inner.clone()).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Three matrices separated by `---` lines.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: MorphismTriple::parse(text).map_err(value_err)? })
    }

    #[getter]
    fn a_has_zero(&self) -> bool {
        self.inner.a_has_zero()
    }

    fn iterate(&self, k: u32) -> PyResult<PyTritMatrix> {
        Ok(PyTritMatrix { inner: iterate(&self.inner, k, Budget::default()).map_err(|e| PyRuntimeError::new_err(e.to_string()))? })
    }

    fn patterns(&self, k: u32) -> PyResult<Vec<String>> {
        let set = patterns_at(&self.inner, k, Budget::default()).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(dump_patterns(&set).lines().map(str::to_owned).collect())
    }

    fn check(&self, py: Python<'_>, k: u32) -> PyResult<Py<PyAny>> {
        let v = check_iteration(&self.inner, k, Budget::default()).map_err(value_err)?;
        to_py(py, &v.to_json())
    }

    /// Classifier verdict plus the empirical index up to `kmax`.
    #[pyo3(signature = (kmax = 6, statement_reading = false))]
    fn classify(&self, py: Python<'_>, kmax: u32, statement_reading: bool) -> PyResult<Py<PyAny>> {
        let mut r = classify_ist_with(&self.inner, reading(statement_reading)).map_err(value_err)?;
        r.empirical = Some(empirical_ist_with(&self.inner, kmax, Budget::default()).map_err(value_err)?);
        to_py(py, &r.to_json(None))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction(name = "check_split")]
fn py_check_split(py: Python<'_>, m: PyRef<'_, PyTritMatrix>) -> PyResult<Py<PyAny>> {
    to_py(py, &check_split(&m.inner).to_json())
}

#[pyfunction]
fn oracle(py: Python<'_>, m: PyRef<'_, PyTritMatrix>) -> PyResult<Py<PyAny>> {
    let v = semi_transitive_oracle(&split_graph(&m.inner)).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v.to_json())
}

#[pyfunction]
fn to_dot(m: PyRef<'_, PyTritMatrix>) -> String {
    split_graph(&m.inner).to_dot(None)
}

#[pyfunction]
fn edge_list(py: Python<'_>, m: PyRef<'_, PyTritMatrix>) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(split_graph(&m.inner).to_edge_list()).map_err(value_err)?;
    to_py(py, &v)
}

/// Form of a single row, e.g. `"Pzn { a: 1, b: 2, c: 1 }"`.
#[pyfunction(name = "classify_row")]
fn py_classify_row(row: Vec<i64>) -> PyResult<String> {
    let cells = row
        .iter()
        .map(|&v| i8::try_from(v).ok().and_then(Trit::from_value).ok_or_else(|| value_err(format!("{v} is not in {{-1, 0, 1}}"))))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(format!("{:?}", classify_row(&semitrans_core::RleRow::from_dense(&cells)).form))
}

#[pymodule]
fn semitrans(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTritMatrix>()?;
    m.add_class::<PyMorphismTriple>()?;
    m.add_function(wrap_pyfunction!(py_check_split, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(to_dot, m)?)?;
    m.add_function(wrap_pyfunction!(edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(py_classify_row, m)?)?;
    Ok(())
}
