//! Python bindings. Reports come back as plain dicts decoded from the same
//! JSON the command-line tool writes.

use std::collections::{BTreeMap, HashMap};

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use pdm_core::catalog;
use pdm_core::dsl::parse_representation;
use pdm_core::equivalence::constant_mass_test as flat_test;
use pdm_core::expr::{self, diff, eval, parse_with, simplify, Declarations, NoFunctions, ProbeConfig};
use pdm_core::ops::optext::parse_operator;
use pdm_core::ops as core_ops;
use pdm_core::spectral::{self, RadialProblem};
use pdm_core::{suite, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Numeric(_) | Error::Inconsistent(_) | Error::Eval(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn probe(seed: Option<u64>, tol: Option<f64>) -> ProbeConfig {
    let d = ProbeConfig::default();
    ProbeConfig {
        seed: seed.unwrap_or(d.seed),
        tol: tol.unwrap_or(d.tol),
        ..d
    }
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn declarations(functions: Option<HashMap<String, usize>>) -> Declarations {
    let mut d = Declarations::default();
    for (name, arity) in functions.unwrap_or_default() {
        d.declare(&name, arity);
    }
    d
}

/// Exact symbolic expression.
#[pyclass(name = "Expr", module = "pdm", frozen)]
struct PyExpr {
    inner: expr::Expr,
}

#[pymethods]
impl PyExpr {
    #[new]
    #[pyo3(signature = (text, functions = None))]
    fn new(text: &str, functions: Option<HashMap<String, usize>>) -> PyResult<Self> {
        let inner = parse_with(text, &declarations(functions)).map_err(|e| err(e.into()))?;
        Ok(PyExpr { inner })
    }

    fn simplify(&self) -> PyExpr {
        PyExpr {
            inner: simplify(&self.inner),
        }
    }

    fn diff(&self, var: &str) -> PyExpr {
        PyExpr {
            inner: diff(&self.inner, var),
        }
    }

    fn prefix(&self) -> String {
        self.inner.to_prefix()
    }

    fn free_symbols(&self) -> Vec<String> {
        self.inner.free_symbols().into_iter().collect()
    }

    fn evaluate(&self, values: HashMap<String, f64>) -> PyResult<f64> {
        eval(&self.inner, &values, &NoFunctions).map_err(|e| err(e.into()))
    }

    /// Zero test: `"proven-zero"`, `"proven-nonzero"` or `"undecided-numeric-zero"`.
    #[pyo3(signature = (seed = None, tol = None))]
    fn zero_test(&self, py: Python<'_>, seed: Option<u64>, tol: Option<f64>) -> PyResult<Py<PyAny>> {
        to_py(py, &expr::is_zero(&self.inner, &probe(seed, tol)))
    }

    fn __add__(&self, o: PyRef<'_, PyExpr>) -> PyExpr {
        PyExpr {
            inner: &self.inner + &o.inner,
        }
    }

    fn __sub__(&self, o: PyRef<'_, PyExpr>) -> PyExpr {
        PyExpr {
            inner: &self.inner - &o.inner,
        }
    }

    fn __mul__(&self, o: PyRef<'_, PyExpr>) -> PyExpr {
        PyExpr {
            inner: &self.inner * &o.inner,
        }
    }

    fn __neg__(&self) -> PyExpr {
        PyExpr { inner: -&self.inner }
    }

    fn __eq__(&self, o: PyRef<'_, PyExpr>) -> bool {
        self.inner == o.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr('{}')", self.inner)
    }
}

/// Hamiltonian in one of the kinetic orderings.
#[pyclass(name = "Hamiltonian", module = "pdm", frozen)]
struct PyHamiltonian {
    inner: core_ops::Hamiltonian,
    decl: Declarations,
}

#[pymethods]
impl PyHamiltonian {
    #[new]
    #[pyo3(signature = (mass, potential = "0", representation = "divergence", functions = None))]
    fn new(
        mass: &str,
        potential: &str,
        representation: &str,
        functions: Option<HashMap<String, usize>>,
    ) -> PyResult<Self> {
        let decl = declarations(functions);
        let f = parse_with(mass, &decl).map_err(|e| err(e.into()))?;
        let v = parse_with(potential, &decl).map_err(|e| err(e.into()))?;
        let rep = parse_representation(representation).map_err(err)?;
        let inner = core_ops::Hamiltonian::new(rep, f, v).map_err(err)?;
        Ok(PyHamiltonian { inner, decl })
    }

    #[getter]
    fn mass(&self) -> PyExpr {
        PyExpr {
            inner: self.inner.f.clone(),
        }
    }

    #[getter]
    fn potential(&self) -> PyExpr {
        PyExpr {
            inner: self.inner.potential.clone(),
        }
    }

    #[getter]
    fn representation(&self) -> String {
        self.inner.representation.name()
    }

    fn convert(&self, representation: &str) -> PyResult<PyHamiltonian> {
        let rep = parse_representation(representation).map_err(err)?;
        Ok(PyHamiltonian {
            inner: self.inner.convert(&rep).map_err(err)?,
            decl: self.decl.clone(),
        })
    }

    #[pyo3(signature = (seed = None))]
    fn round_trip(&self, py: Python<'_>, seed: Option<u64>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.round_trip(&probe(seed, None)).map_err(err)?)
    }

    /// Symmetry report for an operator written in the input-file syntax.
    #[pyo3(signature = (operator, seed = None, tol = None))]
    fn check_symmetry(&self, py: Python<'_>, operator: &str, seed: Option<u64>, tol: Option<f64>) -> PyResult<Py<PyAny>> {
        let q = parse_operator(operator, &self.decl, &BTreeMap::new()).map_err(err)?;
        to_py(py, &core_ops::check_symmetry(&q, &self.inner, &probe(seed, tol)))
    }

    fn __repr__(&self) -> String {
        format!("Hamiltonian({})", self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (mass, seed = None))]
fn constant_mass_test(py: Python<'_>, mass: &str, seed: Option<u64>) -> PyResult<Py<PyAny>> {
    let f = parse_with(mass, &Declarations::default()).map_err(|e| err(e.into()))?;
    to_py(py, &flat_test(&f, &probe(seed, None)).map_err(err)?)
}

#[pyfunction]
fn catalog_ids() -> Vec<String> {
    catalog::ids().into_iter().map(String::from).collect()
}

#[pyfunction]
#[pyo3(signature = (id, seed = None))]
fn verify_entry(py: Python<'_>, id: &str, seed: Option<u64>) -> PyResult<Py<PyAny>> {
    to_py(py, &catalog::verify_entry(id, &probe(seed, None)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (id, seed = None))]
fn verify_algebra(py: Python<'_>, id: &str, seed: Option<u64>) -> PyResult<Py<PyAny>> {
    to_py(py, &catalog::verify_algebra(id, &probe(seed, None)).map_err(err)?)
}

#[pyfunction]
fn closed_form_energy(n: u32) -> f64 {
    spectral::closed_form_energy(n)
}

#[pyfunction]
fn eigenfunction_closed(n: u32, k: u32, r: f64) -> PyResult<f64> {
    spectral::eigenfunction_closed(n, k, r).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (k = 0, r_max = 20.0, grid_points = 4000, count = 4, potential_shift = 0.0))]
fn solve_radial(
    py: Python<'_>,
    k: i64,
    r_max: f64,
    grid_points: usize,
    count: usize,
    potential_shift: f64,
) -> PyResult<Py<PyAny>> {
    let p = RadialProblem {
        k,
        r_max,
        grid_points,
        count,
        potential_shift,
        ..RadialProblem::default()
    };
    to_py(py, &spectral::solve_radial_numeric(&p).map_err(err)?)
}

#[pyfunction]
fn casimir_check(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &spectral::casimir_check(&ProbeConfig::default()).map_err(err)?)
}

/// The `verify-all` manifest as JSON text.
#[pyfunction]
#[pyo3(signature = (seed = None))]
fn verify_all(seed: Option<u64>) -> PyResult<String> {
    Ok(suite::run_suite(&probe(seed, None)).map_err(err)?.to_json())
}

#[pymodule]
fn pdm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyHamiltonian>()?;
    m.add_function(wrap_pyfunction!(constant_mass_test, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify_entry, m)?)?;
    m.add_function(wrap_pyfunction!(verify_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_energy, m)?)?;
    m.add_function(wrap_pyfunction!(eigenfunction_closed, m)?)?;
    m.add_function(wrap_pyfunction!(solve_radial, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
