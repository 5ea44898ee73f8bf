//! Python module `ratcomp`: exact rationals and rational functions, the case
//! enumerator, the AP classifier, the decomposition oracle and the demos.
//!
//! Structured results (cases, verdicts, reports) are handed over as plain
//! Python objects built from their JSON form.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use ::ratcomp::apclassify::{classify_all as rc_classify_all, classify_case as rc_classify_case, APAssignment, SweepMode};
use ::ratcomp::casegen::{enum_cases, CaseSpec, EnumConfig, SinfMode};
use ::ratcomp::exactnum::Rational;
use ::ratcomp::poly::{compose, equal, parse_factored, parse_ratfunc, RationalFunction};
use ::ratcomp::verify::{brute_force_decompose, run_demo as rc_run_demo, DEMOS};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (s,))
}

#[pyclass(name = "Rational", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyRational(Rational);

#[pymethods]
impl PyRational {
    /// `Rational("3/4")`, `Rational(3, 4)` or `Rational(7)`.
    #[new]
    #[pyo3(signature = (num, den = None))]
    fn new(num: &Bound<'_, PyAny>, den: Option<i64>) -> PyResult<Self> {
        if let Ok(s) = num.extract::<String>() {
            if den.is_some() {
                return Err(err("a string numerator takes no denominator"));
            }
            return s.parse().map(PyRational).map_err(err);
        }
        let n: i64 = num.extract()?;
        match den {
            Some(0) => Err(PyZeroDivisionError::new_err("zero denominator")),
            Some(d) => Rational::new(n, d).map(PyRational).map_err(err),
            None => Ok(PyRational(Rational::from_int(n))),
        }
    }

    fn __add__(&self, o: &Self) -> Self {
        PyRational(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyRational(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyRational(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(PyRational).map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Self {
        PyRational(-&self.0)
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Self> {
        self.0.pow(e).map(PyRational).map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    #[getter]
    fn numerator(&self) -> String {
        self.0.numer().to_string()
    }

    #[getter]
    fn denominator(&self) -> String {
        self.0.denom().to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Rational('{}')", self.0)
    }
}

/// A reduced rational function in `x` over Q.
#[pyclass(name = "RationalFunction", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyRationalFunction(RationalFunction<Rational>);

#[pymethods]
impl PyRationalFunction {
    /// Parse `"(x^4 - 8*x)/(x^3 + 1)"` style input.
    #[new]
    fn new(s: &str) -> PyResult<Self> {
        parse_ratfunc(s).map(PyRationalFunction).map_err(err)
    }

    /// Expand a factored product such as `"x^2*(x - 3)*(x + 1)^-2"`.
    #[staticmethod]
    fn from_factored(s: &str) -> PyResult<Self> {
        let f = parse_factored(s).map_err(err)?;
        f.expand().map(PyRationalFunction).map_err(err)
    }

    /// `self(h)`.
    fn compose(&self, h: &Self) -> PyResult<Self> {
        compose(&self.0, &h.0).map(PyRationalFunction).map_err(err)
    }

    fn __call__(&self, x: &PyRational) -> PyResult<PyRational> {
        self.0.eval(&x.0).map(PyRational).map_err(err)
    }

    fn __eq__(&self, o: &Self) -> PyResult<bool> {
        equal(&self.0, &o.0).map_err(err)
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        self.0.mul(&o.0).map(PyRationalFunction).map_err(err)
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        self.0.add(&o.0).map(PyRationalFunction).map_err(err)
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        self.0.sub(&o.0).map(PyRationalFunction).map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// Distinct zeros and poles over the algebraic closure.
    fn count_zeros_poles(&self) -> PyResult<usize> {
        self.0.count_zeros_poles().map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction('{}')", self.0)
    }
}

/// Case ids for one `(n, t, ksum_zero)` slice under the default filters, in
/// enumeration order. `sinf` is "empty", "nonempty" or "any".
#[pyfunction]
#[pyo3(signature = (n, t, ksum_zero = false, sinf = "empty"))]
fn enumerate_cases(n: usize, t: usize, ksum_zero: bool, sinf: &str) -> PyResult<Vec<String>> {
    let mode: SinfMode = sinf.parse().map_err(err)?;
    let cfg = EnumConfig::default();
    let cases = enum_cases(n, t, ksum_zero, mode, &cfg).map_err(err)?;
    Ok(cases.iter().map(|c| c.id()).collect())
}

/// The JSON form of a case given by its id.
#[pyfunction]
fn case_info<'py>(py: Python<'py>, case_id: &str) -> PyResult<Bound<'py, PyAny>> {
    let case: CaseSpec = case_id.parse().map_err(err)?;
    to_py(py, &case)
}

/// Verdict for a case id and an AP assignment `T` (a permutation of `0..n`).
#[pyfunction]
fn classify_case<'py>(py: Python<'py>, case_id: &str, t: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
    let case: CaseSpec = case_id.parse().map_err(err)?;
    let ap = APAssignment::new(t).map_err(err)?;
    let v = py.detach(|| rc_classify_case(&case, &ap)).map_err(err)?;
    to_py(py, &v)
}

/// Summary of the full AP sweep for `n` (`mode` is "calibrated" or "exhaustive").
#[pyfunction]
#[pyo3(signature = (n, mode = "exhaustive"))]
fn classify_all<'py>(py: Python<'py>, n: usize, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let mode: SweepMode = mode.parse().map_err(err)?;
    let rep = py.detach(|| rc_classify_all(n, mode, false)).map_err(err)?;
    to_py(py, &rep.summary)
}

/// All `(g, h)` with `f = g(h)` of the zeros/poles shape and `2 <= deg h <= max_deg_h`.
#[pyfunction]
#[pyo3(signature = (f, max_deg_h = 4))]
fn decompose(py: Python<'_>, f: &str, max_deg_h: usize) -> PyResult<Vec<(PyRationalFunction, PyRationalFunction)>> {
    let ff = parse_factored(f).map_err(err)?;
    let ws = py.detach(|| brute_force_decompose(&ff, max_deg_h)).map_err(err)?;
    Ok(ws.iter().map(|w| (PyRationalFunction(w.g().clone()), PyRationalFunction(w.h().clone()))).collect())
}

/// Run a named worked example; see `DEMOS`.
#[pyfunction]
fn run_demo<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let rep = rc_run_demo(name).map_err(err)?;
    to_py(py, &rep)
}

#[pymodule(name = "ratcomp")]
fn ratcomp_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRational>()?;
    m.add_class::<PyRationalFunction>()?;
    m.add_function(wrap_pyfunction!(enumerate_cases, m)?)?;
    m.add_function(wrap_pyfunction!(case_info, m)?)?;
    m.add_function(wrap_pyfunction!(classify_case, m)?)?;
    m.add_function(wrap_pyfunction!(classify_all, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(run_demo, m)?)?;
    m.add("DEMOS", DEMOS.to_vec())?;
    Ok(())
}
