//! Python bindings for `aidcheck`.
//!
//! Results cross the boundary as JSON and come back as plain `dict`s, so the
//! Python side sees exactly the shapes the CLI prints.

// pyo3 0.22 macro expansion trips this lint on every PyResult signature
#![allow(clippy::useless_conversion)]

use aidcheck::analytic;
use aidcheck::sweep::SweepSpec;
use aidcheck::{Error, Scenario as CoreScenario};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_dict<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let json = PyModule::import_bound(py, "json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

/// A validated scenario: aid, user, reliance policy and dependency.
#[pyclass(frozen, module = "aidcheck_py")]
#[derive(Clone)]
struct Scenario {
    inner: CoreScenario,
}

#[pymethods]
impl Scenario {
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        Self::from_json(json)
    }

    #[staticmethod]
    fn from_json(json: &str) -> PyResult<Self> {
        CoreScenario::from_json(json)
            .map(|inner| Scenario { inner })
            .map_err(to_py_err)
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn policy(&self) -> &'static str {
        self.inner.policy().name()
    }

    #[getter]
    fn dependency(&self) -> &'static str {
        self.inner.dependency().name()
    }

    #[getter]
    fn degradation_mode(&self) -> &'static str {
        self.inner.degradation_mode().name()
    }

    #[getter]
    fn p_advice_correct(&self) -> f64 {
        self.inner.p_advice_correct()
    }

    #[getter]
    fn p_unaided_correct(&self) -> f64 {
        self.inner.p_unaided_correct()
    }

    #[getter]
    fn p_post_reject_correct(&self) -> f64 {
        self.inner.p_post_reject_correct()
    }

    #[getter]
    fn p_both_correct(&self) -> f64 {
        self.inner.p_both_correct()
    }

    /// Copy of the scenario with one parameter (dot-path) replaced.
    fn with_parameter(&self, path: &str, value: f64) -> PyResult<Self> {
        aidcheck::sweep::with_parameter(&self.inner, path, value)
            .map(|inner| Scenario { inner })
            .map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("Scenario({})", self.inner.to_json())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
fn evaluate(py: Python<'_>, scenario: &Scenario) -> PyResult<PyObject> {
    let r = analytic::evaluate(&scenario.inner).map_err(to_py_err)?;
    to_dict(py, &r)
}

#[pyfunction]
fn compare_policies(py: Python<'_>, scenario: &Scenario) -> PyResult<PyObject> {
    let r = analytic::compare_policies(&scenario.inner).map_err(to_py_err)?;
    to_dict(py, &r)
}

#[pyfunction]
#[pyo3(signature = (scenario, trials = 1_000_000, seed = 0, shards = 1))]
fn simulate(
    py: Python<'_>,
    scenario: &Scenario,
    trials: u64,
    seed: u64,
    shards: u64,
) -> PyResult<PyObject> {
    let inner = scenario.inner;
    let r = py
        .allow_threads(move || aidcheck::estimate_accuracy(&inner, trials, seed, shards))
        .map_err(to_py_err)?;
    to_dict(py, &r)
}

#[pyfunction]
fn sweep(
    py: Python<'_>,
    scenario: &Scenario,
    param: &str,
    start: f64,
    stop: f64,
    steps: usize,
) -> PyResult<PyObject> {
    let spec = SweepSpec {
        base: scenario.inner,
        parameter_path: param.to_string(),
        from: start,
        to: stop,
        steps,
    };
    let r = aidcheck::run_sweep(&spec).map_err(to_py_err)?;
    to_dict(py, &r)
}

#[pyfunction]
fn sensitivity(py: Python<'_>, scenario: &Scenario) -> PyResult<PyObject> {
    let r = aidcheck::sensitivity(&scenario.inner).map_err(to_py_err)?;
    to_dict(py, &r)
}

/// Break-even symmetric discrimination for the scenario's aid, user and dependency.
#[pyfunction]
fn breakeven(py: Python<'_>, scenario: &Scenario) -> PyResult<PyObject> {
    let s = &scenario.inner;
    let r = analytic::breakeven_discrimination(
        s.aid(),
        s.user(),
        s.dependency(),
        s.degradation_mode_setting(),
    )
    .map_err(to_py_err)?;
    to_dict(py, &r)
}

#[pyfunction]
fn potential_combined(scenario: &Scenario) -> f64 {
    let s = &scenario.inner;
    analytic::potential_combined(s.aid(), s.user(), s.dependency()).value()
}

/// `(P(user right | advice right), P(user right | advice wrong))`.
#[pyfunction]
fn conditional_user_rates(scenario: &Scenario) -> (f64, f64) {
    let (c, w) = aidcheck::conditional_user_rates(&scenario.inner);
    (c.value(), w.value())
}

#[pymodule]
fn aidcheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Scenario>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(compare_policies, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity, m)?)?;
    m.add_function(wrap_pyfunction!(breakeven, m)?)?;
    m.add_function(wrap_pyfunction!(potential_combined, m)?)?;
    m.add_function(wrap_pyfunction!(conditional_user_rates, m)?)?;
    Ok(())
}
