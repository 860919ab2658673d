//! Python bindings: observables, the order decision and the structural operations.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use varorder::order::{decide_order_default, default_order_tol};
use varorder::structure::QMatrix;
use varorder::{ComplexMatrix, DensityState, HermitianObservable, OracleConfig, PureState, UnitaryMap, C64};

create_exception!(
    varorder,
    VarorderError,
    PyValueError,
    "Raised for invalid inputs and failed preconditions."
);
create_exception!(
    varorder,
    InconsistentError,
    VarorderError,
    "Raised when an internal self-check fails."
);

fn err(e: varorder::Error) -> PyErr {
    if e.is_internal() {
        InconsistentError::new_err(e.to_string())
    } else {
        VarorderError::new_err(e.to_string())
    }
}

fn square(rows: Vec<Vec<C64>>) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).map_err(err)
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<C64>> {
    m.rows().map(|r| r.to_vec()).collect()
}

/// A Hermitian matrix.
#[pyclass(name = "Observable", module = "varorder", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyObservable {
    inner: HermitianObservable,
}

#[pymethods]
impl PyObservable {
    /// Builds an observable from a square list of rows of (complex) numbers.
    #[new]
    fn new(matrix: Vec<Vec<C64>>) -> PyResult<Self> {
        let inner = HermitianObservable::new(square(matrix)?).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn diagonal(values: Vec<f64>) -> Self {
        Self {
            inner: HermitianObservable::diagonal(&values),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn matrix(&self) -> Vec<Vec<C64>> {
        rows(self.inner.matrix())
    }

    /// Distinct eigenvalues, ascending.
    fn spectrum(&self) -> PyResult<Vec<f64>> {
        self.inner.spectrum().map_err(err)
    }

    fn scale(&self, alpha: f64) -> Self {
        Self {
            inner: self.inner.scale(alpha),
        }
    }

    fn shift(&self, c: f64) -> Self {
        Self {
            inner: self.inner.shift(c),
        }
    }

    /// `f(A)` for `f` tabulated as `(eigenvalue, value)` pairs on the spectrum.
    fn apply_function(&self, table: Vec<(f64, f64)>) -> PyResult<Self> {
        let f = varorder::FunctionTable::new(table).map_err(err)?;
        let inner = self.inner.spectral().and_then(|d| d.apply_function(&f)).map_err(err)?;
        Ok(Self { inner })
    }

    fn __repr__(&self) -> String {
        format!("Observable(dim={})", self.inner.dim())
    }
}

/// Result of deciding `A ⪯ B`.
#[pyclass(name = "Verdict", module = "varorder", frozen, get_all)]
struct PyVerdict {
    holds: bool,
    /// `(eigenvalue of B, f(eigenvalue))` pairs with `A = f(B)`, when the order holds.
    certificate: Option<Vec<(f64, f64)>>,
    /// Pure state with `Delta(A) > Delta(B)`, when the order fails.
    witness: Option<Vec<C64>>,
    margin: f64,
    tol: f64,
}

#[pymethods]
impl PyVerdict {
    fn __bool__(&self) -> bool {
        self.holds
    }

    fn __repr__(&self) -> String {
        format!("Verdict(holds={}, margin={})", self.holds, self.margin)
    }
}

/// Decides `A ⪯ B`, i.e. `Delta_x(A) <= Delta_x(B)` for every pure state `x`.
#[pyfunction]
#[pyo3(signature = (a, b, tol = None))]
fn decide_order(a: &PyObservable, b: &PyObservable, tol: Option<f64>) -> PyResult<PyVerdict> {
    let (a, b) = (&a.inner, &b.inner);
    let tol = tol.unwrap_or_else(|| default_order_tol(a, b));
    let v = varorder::decide_order(a, b, tol).map_err(err)?;
    Ok(PyVerdict {
        holds: v.holds(),
        certificate: v.certificate().map(|f| f.points().to_vec()),
        witness: v.witness().map(|w| w.vector().to_vec()),
        margin: v.margin(),
        tol,
    })
}

/// `A ⪯ B` with the default tolerance, as a bool.
#[pyfunction]
fn precedes(a: &PyObservable, b: &PyObservable) -> PyResult<bool> {
    Ok(decide_order_default(&a.inner, &b.inner).map_err(err)?.holds())
}

/// Variance of `a` in a state given as a vector (pure) or a density matrix.
#[pyfunction]
#[pyo3(signature = (a, vector = None, density = None))]
fn variance(a: &PyObservable, vector: Option<Vec<C64>>, density: Option<Vec<Vec<C64>>>) -> PyResult<f64> {
    match (vector, density) {
        (Some(v), None) => varorder::variance(&a.inner, &PureState::new(v).map_err(err)?).map_err(err),
        (None, Some(m)) => varorder::variance(&a.inner, &DensityState::new(square(m)?).map_err(err)?).map_err(err),
        _ => Err(VarorderError::new_err("pass exactly one of vector= or density=")),
    }
}

/// Best pure-state gap `Delta(A) - Delta(B)` found by gradient ascent, with the state.
#[pyfunction]
#[pyo3(signature = (a, b, restarts = 32, seed = 0))]
fn witness_search(a: &PyObservable, b: &PyObservable, restarts: usize, seed: u64) -> PyResult<(f64, Vec<C64>)> {
    let cfg = OracleConfig {
        restarts,
        seed,
        ..OracleConfig::default()
    };
    let w = varorder::witness_search(&a.inner, &b.inner, &cfg).map_err(err)?;
    Ok((w.value, w.state.into_vector()))
}

/// `(C, tau, beta)` with `A ⪯ C` and `B ⪯ C`; raises if `A` and `B` do not commute.
#[pyfunction]
#[pyo3(signature = (a, b, tol = 1e-8))]
fn joint_upper_bound(a: &PyObservable, b: &PyObservable, tol: f64) -> PyResult<(PyObservable, f64, f64)> {
    let ub = varorder::joint_upper_bound(&a.inner, &b.inner, tol).map_err(err)?;
    Ok((PyObservable { inner: ub.bound }, ub.tau, ub.beta))
}

/// `(subset, threshold)` for each family `t E_A(subset)` of two-point observables below `A`.
#[pyfunction]
fn two_point_lower_set(a: &PyObservable) -> PyResult<Vec<(Vec<f64>, f64)>> {
    let fams = varorder::two_point_lower_set(&a.inner).map_err(err)?;
    Ok(fams.into_iter().map(|f| (f.subset, f.threshold)).collect())
}

#[pyfunction]
fn q_matrix(spectrum: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    Ok(varorder::q_matrix(&spectrum).map_err(err)?.rows())
}

/// Pairwise distances recovered from a q-matrix.
#[pyfunction]
fn reconstruct_metric(q: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let q = QMatrix::new(q).map_err(err)?;
    Ok(varorder::reconstruct_metric(&q).map_err(err)?.distances)
}

#[pyfunction]
fn canonical_representative(a: &PyObservable) -> PyResult<PyObservable> {
    let inner = varorder::canonical_representative(&a.inner).map_err(err)?;
    Ok(PyObservable { inner })
}

#[pyfunction]
fn max_deviation(a: &PyObservable) -> PyResult<f64> {
    varorder::maximal_deviation(&a.inner).map_err(err)
}

/// Whether `A -> alpha U A U*` preserved the order on `trials` random pairs.
#[pyfunction]
#[pyo3(signature = (alpha, unitary, antiunitary = false, trials = 50, seed = 0))]
fn verify_automorphism(
    alpha: f64,
    unitary: Vec<Vec<C64>>,
    antiunitary: bool,
    trials: usize,
    seed: u64,
) -> PyResult<bool> {
    let u = UnitaryMap::new(square(unitary)?, antiunitary).map_err(err)?;
    let dim = u.dim();
    let spec = varorder::AutomorphismSpec::new(alpha, u).map_err(err)?;
    Ok(varorder::verify_automorphism(&spec, trials, dim, seed)
        .map_err(err)?
        .passed)
}

#[pymodule]
#[pyo3(name = "varorder")]
fn varorder_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", varorder::VERSION)?;
    m.add("VarorderError", m.py().get_type::<VarorderError>())?;
    m.add("InconsistentError", m.py().get_type::<InconsistentError>())?;
    m.add_class::<PyObservable>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(decide_order, m)?)?;
    m.add_function(wrap_pyfunction!(precedes, m)?)?;
    m.add_function(wrap_pyfunction!(variance, m)?)?;
    m.add_function(wrap_pyfunction!(witness_search, m)?)?;
    m.add_function(wrap_pyfunction!(joint_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(two_point_lower_set, m)?)?;
    m.add_function(wrap_pyfunction!(q_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_metric, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_representative, m)?)?;
    m.add_function(wrap_pyfunction!(max_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(verify_automorphism, m)?)?;
    Ok(())
}
