//! Python extension module exposing the main fuzzpair types and
//! operations: detector correlations, pair states, entanglement
//! measures and the brute-force oracles.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use fuzzpair_core::boson::BosonScenario;
use fuzzpair_core::fermi::DetectorProfile;
use fuzzpair_core::oracle::{DiscretizedFermiSea, Geometry};
use fuzzpair_core::qmat;
use fuzzpair_core::specfun::QuadratureConfig;
use fuzzpair_core::Error;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::NonConvergence(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn profile_from(sigma: Option<f64>) -> DetectorProfile {
    match sigma {
        Some(s) => DetectorProfile::Gaussian { sigma: s },
        None => DetectorProfile::Ideal,
    }
}

fn geometry_from(name: &str) -> PyResult<Geometry> {
    match name {
        "1d" => Ok(Geometry::OneD),
        "3d" => Ok(Geometry::ThreeDRadial),
        other => Err(PyValueError::new_err(format!(
            "unknown geometry {other:?}, expected \"1d\" or \"3d\""
        ))),
    }
}

/// A validated two-qubit density matrix (Hermitian, PSD, trace one).
#[pyclass(name = "TwoQubitState", frozen)]
struct PyTwoQubitState {
    inner: qmat::TwoQubitState,
}

#[pymethods]
impl PyTwoQubitState {
    /// The 4x4 matrix as nested lists of complex numbers.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.inner
            .entries()
            .iter()
            .map(|row| row.to_vec())
            .collect()
    }

    /// Ordered basis labels.
    fn basis(&self) -> Vec<String> {
        self.inner
            .basis()
            .labels()
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    /// Negativity from the partial-transpose spectrum.
    fn negativity(&self) -> PyResult<f64> {
        Ok(qmat::negativity(&self.inner)
            .map_err(to_py_err)?
            .negativity_eigen)
    }

    /// Peres-Horodecki flag.
    fn entangled(&self) -> PyResult<bool> {
        Ok(qmat::negativity(&self.inner)
            .map_err(to_py_err)?
            .ppt_entangled)
    }

    fn singlet_fraction(&self) -> f64 {
        self.inner
            .expectation(&qmat::bell_vector(qmat::Bell::PsiMinus))
    }

    /// Weights (phi_plus, phi_minus, psi_plus, psi_minus).
    fn bell_weights(&self) -> (f64, f64, f64, f64) {
        let w = qmat::bell_weights(&self.inner);
        (w.phi_plus, w.phi_minus, w.psi_plus, w.psi_minus)
    }

    fn trace_distance(&self, other: &PyTwoQubitState) -> PyResult<f64> {
        Ok(qmat::state_metrics(&self.inner, &other.inner)
            .map_err(to_py_err)?
            .trace_distance)
    }

    fn __repr__(&self) -> String {
        let labels = self.inner.basis().labels();
        format!(
            "TwoQubitState(basis=[{}], negativity={:.6})",
            labels.join(", "),
            qmat::negativity(&self.inner)
                .map(|r| r.negativity_eigen)
                .unwrap_or(f64::NAN)
        )
    }
}

impl From<qmat::TwoQubitState> for PyTwoQubitState {
    fn from(inner: qmat::TwoQubitState) -> Self {
        Self { inner }
    }
}

/// Validates and trace-normalizes a 4x4 matrix into a state.
/// `basis` is "spin" or "polarization".
#[pyfunction]
#[pyo3(signature = (matrix, basis="spin"))]
fn two_qubit_state(matrix: Vec<Vec<Complex64>>, basis: &str) -> PyResult<PyTwoQubitState> {
    if matrix.len() != 4 || matrix.iter().any(|row| row.len() != 4) {
        return Err(PyValueError::new_err("matrix must be 4x4"));
    }
    let basis = match basis {
        "spin" => qmat::BasisKind::Spin,
        "polarization" => qmat::BasisKind::Polarization,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown basis {other:?}, expected \"spin\" or \"polarization\""
            )))
        }
    };
    let mut m = qmat::mat_zero();
    for (i, row) in matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[i][j] = *v;
        }
    }
    qmat::validate_and_normalize(&m, basis)
        .map(Into::into)
        .map_err(to_py_err)
}

/// Spherical Bessel function j1(x).
#[pyfunction]
fn spherical_j1(x: f64) -> f64 {
    fuzzpair_core::specfun::spherical_j1(x)
}

/// Error function erf(x).
#[pyfunction]
fn erf_real(x: f64) -> f64 {
    fuzzpair_core::specfun::erf_real(x)
}

/// One-sided Gaussian-window momentum integral I(d).
#[pyfunction]
fn window_integral(p_f: f64, sigma: f64, d: f64) -> PyResult<Complex64> {
    fuzzpair_core::specfun::window_integral(p_f, sigma, d, &QuadratureConfig::default())
        .map_err(to_py_err)
}

/// Ideal-detector correlation F = 3 j1(p_f d)/(p_f d).
#[pyfunction]
fn ideal_f(p_f: f64, d: f64) -> f64 {
    fuzzpair_core::fermi::ideal_f(p_f, d)
}

/// Two-fermion spin state for ideal point detectors.
#[pyfunction]
fn ideal_pair_state(p_f: f64, d: f64) -> PyTwoQubitState {
    fuzzpair_core::fermi::ideal_pair_state(p_f, d).into()
}

/// Correlation pair (f, g) for Gaussian detectors.
#[pyfunction]
fn fuzzy_correlations(p_f: f64, sigma: f64, d: f64) -> PyResult<(f64, f64)> {
    fuzzpair_core::fermi::fuzzy_correlations(p_f, sigma, d, &QuadratureConfig::default())
        .map_err(to_py_err)
}

/// Two-fermion spin state for Gaussian detectors.
#[pyfunction]
fn fuzzy_pair_state(p_f: f64, sigma: f64, d: f64) -> PyResult<PyTwoQubitState> {
    fuzzpair_core::fermi::fuzzy_pair_state(p_f, sigma, d, &QuadratureConfig::default())
        .map(Into::into)
        .map_err(to_py_err)
}

/// Closed-form negativity of the Gaussian-detector state.
#[pyfunction]
fn fuzzy_negativity(p_f: f64, sigma: f64, d: f64) -> PyResult<f64> {
    fuzzpair_core::fermi::fuzzy_negativity_closed(p_f, sigma, d, &QuadratureConfig::default())
        .map_err(to_py_err)
}

/// Closed-form HOM polarization state in {hh, hv, vh, vv}.
#[pyfunction]
fn hom_state(sigma: f64, tau: f64) -> PyTwoQubitState {
    fuzzpair_core::boson::hom_state(sigma, tau).into()
}

/// HOM negativity exp(-sigma^2 tau^2).
#[pyfunction]
fn hom_negativity(sigma: f64, tau: f64) -> f64 {
    fuzzpair_core::boson::hom_negativity(sigma, tau)
}

/// Bell weights ((1-f)/2, (1+f)/2) of the HOM state.
#[pyfunction]
fn phi_weights(f: f64) -> PyResult<(f64, f64)> {
    fuzzpair_core::boson::phi_weights(f).map_err(to_py_err)
}

/// Wick-contraction state on a discretized Fermi sea.
#[pyfunction]
#[pyo3(signature = (modes, p_f, d, sigma=None, geometry="1d"))]
fn wick_fermi_state(
    modes: usize,
    p_f: f64,
    d: f64,
    sigma: Option<f64>,
    geometry: &str,
) -> PyResult<PyTwoQubitState> {
    let sea =
        DiscretizedFermiSea::midpoint(p_f, modes, geometry_from(geometry)?).map_err(to_py_err)?;
    fuzzpair_core::oracle::wick_fermi_state(&sea, d, &profile_from(sigma))
        .map(Into::into)
        .map_err(to_py_err)
}

/// Explicit Fock-space state (1-D geometry, at most 5 momentum modes).
#[pyfunction]
#[pyo3(signature = (modes, p_f, d, sigma=None))]
fn fock_fermi_state(
    modes: usize,
    p_f: f64,
    d: f64,
    sigma: Option<f64>,
) -> PyResult<PyTwoQubitState> {
    fuzzpair_core::oracle::fock_fermi_state(modes, p_f, d, &profile_from(sigma))
        .map(Into::into)
        .map_err(to_py_err)
}

/// Largest crossing correlation between the symmetry-resolved detection
/// operators; vanishes by the exclusion principle.
#[pyfunction]
#[pyo3(signature = (modes, p_f, d, sigma=None, geometry="1d"))]
fn crossing_term(
    modes: usize,
    p_f: f64,
    d: f64,
    sigma: Option<f64>,
    geometry: &str,
) -> PyResult<Complex64> {
    let sea =
        DiscretizedFermiSea::midpoint(p_f, modes, geometry_from(geometry)?).map_err(to_py_err)?;
    Ok(fuzzpair_core::oracle::crossing_term(
        &sea,
        d,
        &profile_from(sigma),
    ))
}

/// Binned brute-force interferometer state for the HOM configuration.
#[pyfunction]
fn boson_brute_state(sigma: f64, tau: f64, bins: usize) -> PyResult<PyTwoQubitState> {
    fuzzpair_core::oracle::boson_brute_state(&BosonScenario::hom(sigma, tau), bins)
        .map(Into::into)
        .map_err(to_py_err)
}

#[pymodule]
fn fuzzpair(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyTwoQubitState>()?;
    m.add_function(wrap_pyfunction!(two_qubit_state, m)?)?;
    m.add_function(wrap_pyfunction!(spherical_j1, m)?)?;
    m.add_function(wrap_pyfunction!(erf_real, m)?)?;
    m.add_function(wrap_pyfunction!(window_integral, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_f, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_pair_state, m)?)?;
    m.add_function(wrap_pyfunction!(fuzzy_correlations, m)?)?;
    m.add_function(wrap_pyfunction!(fuzzy_pair_state, m)?)?;
    m.add_function(wrap_pyfunction!(fuzzy_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(hom_state, m)?)?;
    m.add_function(wrap_pyfunction!(hom_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(phi_weights, m)?)?;
    m.add_function(wrap_pyfunction!(wick_fermi_state, m)?)?;
    m.add_function(wrap_pyfunction!(fock_fermi_state, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_term, m)?)?;
    m.add_function(wrap_pyfunction!(boson_brute_state, m)?)?;
    Ok(())
}
