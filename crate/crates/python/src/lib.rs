//! Python bindings for the `xsep` core crate.
//!
//! States and witnesses are wrapped as classes; structured results
//! (verdicts, certificates, membership vectors) come back as plain
//! dictionaries with the same shape as the CLI's JSON.

use num_complex::Complex64;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use xsep::gallery;
use xsep::witness::hull_witnesses;
use xsep::{
    Bipartition, DecomposeOptions, HullQuestion, Subsystem, XHermitian, XState as CoreState,
    XWitness as CoreWitness,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn bipartition(name: &str) -> PyResult<Bipartition> {
    name.parse().map_err(value_error)
}

fn subsystem(name: &str) -> PyResult<Subsystem> {
    name.parse().map_err(value_error)
}

fn question(name: &str) -> PyResult<HullQuestion> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    HullQuestion::ALL
        .into_iter()
        .find(|q| q.as_str() == compact || q.as_str().trim_start_matches("hull(").trim_end_matches(')') == compact)
        .ok_or_else(|| PyValueError::new_err(format!("unknown hull {name:?}")))
}

fn options(seed: u64, budget: usize) -> PyResult<DecomposeOptions> {
    let opts = DecomposeOptions {
        seed,
        max_iterations: budget,
        ..DecomposeOptions::default()
    };
    opts.validate().map_err(value_error)?;
    Ok(opts)
}

fn complex4(z: Vec<Complex64>) -> PyResult<[Complex64; 4]> {
    z.try_into()
        .map_err(|_| PyValueError::new_err("expected four off-diagonal entries"))
}

fn complex_list(z: &[Complex64; 4]) -> String {
    let items: Vec<String> = z.iter().map(|c| format!("({}{:+}j)", c.re, c.im)).collect();
    format!("[{}]", items.join(", "))
}

fn real4(v: Vec<f64>, what: &str) -> PyResult<[f64; 4]> {
    v.try_into()
        .map_err(|_| PyValueError::new_err(format!("expected four entries in {what}")))
}

/// A positive semidefinite three-qubit X-state (unnormalized).
#[pyclass(name = "XState", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyXState(CoreState);

#[pymethods]
impl PyXState {
    #[new]
    #[pyo3(signature = (a, b, z, tolerance = 1e-12))]
    fn new(a: Vec<f64>, b: Vec<f64>, z: Vec<Complex64>, tolerance: f64) -> PyResult<Self> {
        let x = XHermitian::new(real4(a, "a")?, real4(b, "b")?, complex4(z)?);
        CoreState::new(x, tolerance).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let x: XHermitian = serde_json::from_str(text).map_err(value_error)?;
        CoreState::new(x, 1e-12).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn ghz() -> Self {
        Self(CoreState::ghz())
    }

    #[getter]
    fn a(&self) -> [f64; 4] {
        self.0.a
    }

    #[getter]
    fn b(&self) -> [f64; 4] {
        self.0.b
    }

    #[getter]
    fn z(&self) -> [Complex64; 4] {
        self.0.z
    }

    fn trace(&self) -> f64 {
        self.0.trace()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(value_error)
    }

    /// The full 8x8 matrix as a nested list of complex numbers.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.0.embed().entries().iter().map(|row| row.to_vec()).collect()
    }

    fn flip(&self, s: &str, t: &str) -> PyResult<Self> {
        self.0.flip(subsystem(s)?, subsystem(t)?).map(Self).map_err(value_error)
    }

    fn scale(&self, factor: f64) -> PyResult<Self> {
        if factor.is_nan() || factor < 0.0 {
            return Err(PyValueError::new_err("scale factor must be nonnegative"));
        }
        Ok(Self(self.0.scale(factor)))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(self.0 + other.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("XState(a={:?}, b={:?}, z={})", self.0.a, self.0.b, complex_list(&self.0.z))
    }
}

/// An X-shaped Hermitian witness with nonnegative diagonal.
#[pyclass(name = "XWitness", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyXWitness(CoreWitness);

#[pymethods]
impl PyXWitness {
    #[new]
    fn new(s: Vec<f64>, t: Vec<f64>, u: Vec<Complex64>) -> PyResult<Self> {
        let w = XHermitian::new(real4(s, "s")?, real4(t, "t")?, complex4(u)?);
        CoreWitness::new(w).map(Self).map_err(value_error)
    }

    #[getter]
    fn s(&self) -> [f64; 4] {
        *self.0.s()
    }

    #[getter]
    fn t(&self) -> [f64; 4] {
        *self.0.t()
    }

    #[getter]
    fn u(&self) -> [Complex64; 4] {
        *self.0.u()
    }

    fn pairing(&self, state: &PyXState) -> f64 {
        self.0.pairing(state.0.as_hermitian())
    }

    fn is_block_positive(&self, bipartition: &str) -> PyResult<bool> {
        Ok(self.0.is_block_positive(self::bipartition(bipartition)?))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("XWitness(s={:?}, t={:?}, u={})", self.0.s(), self.0.t(), complex_list(self.0.u()))
    }
}

#[pyfunction]
fn is_separable(state: &PyXState, bipartition: &str) -> PyResult<bool> {
    Ok(xsep::is_separable(&state.0, self::bipartition(bipartition)?))
}

#[pyfunction]
#[pyo3(signature = (state, bipartition, tolerance = 1e-10))]
fn is_ppt(state: &PyXState, bipartition: &str, tolerance: f64) -> PyResult<bool> {
    Ok(xsep::is_ppt(&state.0, self::bipartition(bipartition)?, tolerance))
}

#[pyfunction]
fn separability_profile(state: &PyXState) -> [bool; 3] {
    xsep::separability_profile(&state.0)
}

#[pyfunction]
fn mixture_necessary(state: &PyXState, hull: &str) -> PyResult<bool> {
    Ok(xsep::mixture_necessary(state.0.as_hermitian(), question(hull)?))
}

/// Decide membership in `hull`, e.g. `"hull(B,C)"` or `"A,B,C"`.
#[pyfunction]
#[pyo3(signature = (state, hull, seed = 0, budget = 10000))]
fn membership(py: Python<'_>, state: &PyXState, hull: &str, seed: u64, budget: usize) -> PyResult<Py<PyAny>> {
    let verdict = xsep::membership(&state.0, question(hull)?, &options(seed, budget)?).map_err(value_error)?;
    to_py(py, &verdict)
}

#[pyfunction]
#[pyo3(signature = (state, bipartitions, seed = 0, budget = 10000))]
fn decompose(
    py: Python<'_>,
    state: &PyXState,
    bipartitions: Vec<String>,
    seed: u64,
    budget: usize,
) -> PyResult<Py<PyAny>> {
    let parts = bipartitions
        .iter()
        .map(|p| bipartition(p))
        .collect::<PyResult<Vec<_>>>()?;
    let verdict = xsep::decompose(&state.0, &parts, &options(seed, budget)?).map_err(value_error)?;
    to_py(py, &verdict)
}

/// Membership vector, verdicts and class label.
#[pyfunction]
#[pyo3(signature = (state, seed = 0, budget = 10000))]
fn classify(py: Python<'_>, state: &PyXState, seed: u64, budget: usize) -> PyResult<Py<PyAny>> {
    let m = xsep::membership_vector(&state.0, &options(seed, budget)?).map_err(value_error)?;
    #[derive(Serialize)]
    struct Report<'a> {
        label: xsep::ClassLabel,
        vector: &'a xsep::MembershipVector,
        membership: &'a xsep::Membership,
    }
    to_py(
        py,
        &Report {
            label: m.label(),
            vector: &m.vector,
            membership: &m,
        },
    )
}

#[pyfunction]
fn lemma_witnesses(state: &PyXState) -> PyResult<(PyXWitness, PyXWitness)> {
    let (w1, w2) = xsep::lemma_witnesses(&state.0).map_err(value_error)?;
    Ok((PyXWitness(w1), PyXWitness(w2)))
}

/// Witnesses for the hull that leaves out `excluded`.
#[pyfunction]
#[pyo3(signature = (state, excluded, epsilon = None))]
fn hull_witness_pair(state: &PyXState, excluded: &str, epsilon: Option<f64>) -> PyResult<(PyXWitness, PyXWitness)> {
    let eps = epsilon.unwrap_or_else(|| xsep::witness::default_epsilon(state.0.as_hermitian()));
    let (w1, w2) = hull_witnesses(&state.0, bipartition(excluded)?, eps).map_err(value_error)?;
    Ok((PyXWitness(w1), PyXWitness(w2)))
}

#[pyfunction]
fn gallery_names() -> Vec<&'static str> {
    gallery::names()
}

#[pyfunction]
fn gallery_state(name: &str) -> PyResult<PyXState> {
    gallery::by_name(name)
        .map(|e| PyXState(e.state))
        .ok_or_else(|| PyKeyError::new_err(format!("no gallery state named {name:?}")))
}

#[pyfunction]
fn random_xstate(seed: u64, scale: f64) -> PyXState {
    PyXState(xsep::random_xstate(seed, scale))
}

#[pymodule]
fn xsep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyXState>()?;
    m.add_class::<PyXWitness>()?;
    m.add_function(wrap_pyfunction!(is_separable, m)?)?;
    m.add_function(wrap_pyfunction!(is_ppt, m)?)?;
    m.add_function(wrap_pyfunction!(separability_profile, m)?)?;
    m.add_function(wrap_pyfunction!(mixture_necessary, m)?)?;
    m.add_function(wrap_pyfunction!(membership, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(hull_witness_pair, m)?)?;
    m.add_function(wrap_pyfunction!(gallery_names, m)?)?;
    m.add_function(wrap_pyfunction!(gallery_state, m)?)?;
    m.add_function(wrap_pyfunction!(random_xstate, m)?)?;
    Ok(())
}
