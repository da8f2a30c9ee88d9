//! Python bindings: array geometry, precoders, metrics, configs and experiments.
//!
//! Vectors cross the boundary as `list[complex]`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use upa_precoding::channel::{extract_subarray, steering_full, subarray_index_sets, ArrayGeometry, Isotropic};
use upa_precoding::harness::{self, ExperimentKind, OutputFormat};
use upa_precoding::linalg::{self, CMatrix, CVector};
use upa_precoding::precoding::{self, ProjectorRank};
use upa_precoding::{metrics, Error};

create_exception!(upa_precoding, UpaError, PyException, "Base class of all simulator errors.");
create_exception!(upa_precoding, ConfigError, UpaError, "Invalid or unreadable configuration.");
create_exception!(upa_precoding, InfeasibleError, UpaError, "Array too small for the requested precoder.");
create_exception!(upa_precoding, DegenerateError, UpaError, "Degenerate input or failed decomposition.");

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Config(_) => ConfigError::new_err(msg),
        Error::Infeasible(_) => InfeasibleError::new_err(msg),
        Error::ProjectionDegenerate(_) | Error::DegenerateInput(_) | Error::Decomposition(_) => {
            DegenerateError::new_err(msg)
        }
        _ => UpaError::new_err(msg),
    }
}

fn rank(adaptive: bool) -> ProjectorRank {
    if adaptive {
        ProjectorRank::Adaptive
    } else {
        ProjectorRank::Fixed
    }
}

/// Uniform planar array; element `(h, v)` sits at index `v + h·m_v`.
#[pyclass(name = "ArrayGeometry", frozen)]
struct PyArrayGeometry {
    inner: ArrayGeometry,
}

#[pymethods]
impl PyArrayGeometry {
    #[new]
    #[pyo3(signature = (m_h, m_v, spacing_wavelengths = 0.5, carrier_hz = 6e9))]
    fn new(m_h: usize, m_v: usize, spacing_wavelengths: f64, carrier_hz: f64) -> PyResult<Self> {
        let inner = ArrayGeometry::from_carrier(m_h, m_v, spacing_wavelengths, carrier_hz).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn m_h(&self) -> usize {
        self.inner.m_h
    }

    #[getter]
    fn m_v(&self) -> usize {
        self.inner.m_v
    }

    #[getter]
    fn total(&self) -> usize {
        self.inner.total()
    }

    #[getter]
    fn wavelength(&self) -> f64 {
        self.inner.wavelength
    }

    /// Full steering vector of isotropic elements at (elevation, azimuth) in radians.
    fn steering(&self, elevation: f64, azimuth: f64) -> CVector {
        steering_full(&self.inner, elevation, azimuth, &Isotropic)
    }

    /// `(horizontal, vertical)` sub-array restrictions of a full channel vector.
    fn split(&self, h: CVector) -> PyResult<(CVector, CVector)> {
        let idx = subarray_index_sets(&self.inner);
        Ok((extract_subarray(&h, &idx.horizontal).map_err(to_py)?, extract_subarray(&h, &idx.vertical).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!("ArrayGeometry(m_h={}, m_v={}, wavelength={})", self.inner.m_h, self.inner.m_v, self.inner.wavelength)
    }
}

/// Scenario configuration; defaults match an empty JSON document.
#[pyclass(name = "ScenarioConfig")]
struct PyScenarioConfig {
    inner: harness::ScenarioConfig,
}

#[pymethods]
impl PyScenarioConfig {
    #[new]
    fn new() -> Self {
        Self { inner: harness::ScenarioConfig::default() }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: harness::parse_config(text, "<python>").map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn fingerprint(&self) -> String {
        self.inner.fingerprint()
    }

    fn warnings(&self) -> Vec<String> {
        self.inner.warnings()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[setter]
    fn set_seed(&mut self, seed: u64) {
        self.inner.seed = seed;
    }

    fn uplink_ttis(&self) -> Vec<u64> {
        self.inner.uplink_ttis()
    }
}

#[pyfunction]
fn bessel_j0(x: f64) -> PyResult<f64> {
    linalg::bessel_j0(x).map_err(to_py)
}

#[pyfunction]
fn mrt(h: CVector, power: f64) -> PyResult<CVector> {
    Ok(precoding::mrt(&h, power).map_err(to_py)?.f)
}

/// Zero-forcing precoder of UE `u` against all other channels.
#[pyfunction]
#[pyo3(signature = (channels, u, power, adaptive = false))]
fn zf(channels: Vec<CVector>, u: usize, power: f64, adaptive: bool) -> PyResult<CVector> {
    let h = channels.get(u).ok_or_else(|| UpaError::new_err(format!("UE index {u} out of range")))?;
    let interference = precoding::interference_matrix(&channels, u).map_err(to_py)?;
    Ok(precoding::zf(h, interference.as_ref(), power, rank(adaptive)).map_err(to_py)?.f)
}

#[pyfunction]
fn tmrt(h_horizontal: CVector, h_vertical: CVector, power: f64) -> PyResult<CVector> {
    Ok(precoding::tmrt(&h_horizontal, &h_vertical, power).map_err(to_py)?.f)
}

/// Tensor zero-forcing precoder of UE `u` from sub-array channels of all UEs.
#[pyfunction]
#[pyo3(signature = (horizontal, vertical, u, power, adaptive = false))]
fn tzf(horizontal: Vec<CVector>, vertical: Vec<CVector>, u: usize, power: f64, adaptive: bool) -> PyResult<CVector> {
    if u >= horizontal.len() || horizontal.len() != vertical.len() {
        return Err(UpaError::new_err("UE index out of range or sub-array lists of unequal length"));
    }
    let th = precoding::interference_matrix(&horizontal, u).map_err(to_py)?;
    let tv = precoding::interference_matrix(&vertical, u).map_err(to_py)?;
    let p = precoding::tzf(&horizontal[u], &vertical[u], th.as_ref(), tv.as_ref(), power, rank(adaptive));
    Ok(p.map_err(to_py)?.f)
}

#[pyfunction]
fn tzf_feasible(m_h: usize, m_v: usize, ue_count: usize) -> bool {
    precoding::tzf_feasible(m_h, m_v, ue_count)
}

#[pyfunction]
fn sinr(channels: Vec<CVector>, precoders: Vec<CVector>, noise_var: f64) -> PyResult<Vec<f64>> {
    Ok(metrics::sinr_report(&channels, &precoders, noise_var).map_err(to_py)?.sinrs())
}

#[pyfunction]
fn sum_rate(channels: Vec<CVector>, precoders: Vec<CVector>, noise_var: f64) -> PyResult<f64> {
    Ok(metrics::sinr_report(&channels, &precoders, noise_var).map_err(to_py)?.sum_rate())
}

#[pyfunction]
fn chordal_distance_sq(u: CVector, v: CVector) -> PyResult<f64> {
    metrics::chordal_distance_sq(&u, &v).map_err(to_py)
}

/// Eigenvalues (descending) and eigenvectors (as columns, returned row by row) of a Hermitian matrix.
#[pyfunction]
fn hermitian_eig(rows: Vec<CVector>) -> PyResult<(Vec<f64>, Vec<CVector>)> {
    let refs: Vec<&[Complex64]> = rows.iter().map(|r| r.as_slice()).collect();
    let m = CMatrix::from_rows(&refs).map_err(to_py)?;
    let evd = linalg::hermitian_evd(&m).map_err(to_py)?;
    let v = &evd.eigenvectors;
    Ok((evd.eigenvalues.clone(), (0..v.rows()).map(|r| v.row(r).to_vec()).collect()))
}

/// Runs `subspace`, `sumrate` or `runtime` and returns the serialized result.
#[pyfunction]
#[pyo3(signature = (kind, config, format = "json"))]
fn run_experiment(py: Python<'_>, kind: &str, config: &PyScenarioConfig, format: &str) -> PyResult<String> {
    let kind = match kind {
        "subspace" => ExperimentKind::Subspace,
        "sumrate" => ExperimentKind::Sumrate,
        "runtime" => ExperimentKind::Runtime,
        other => return Err(ConfigError::new_err(format!("unknown experiment '{other}'"))),
    };
    let format: OutputFormat = format.parse().map_err(to_py)?;
    let config = config.inner.clone();
    let bytes = py.detach(move || -> Result<Vec<u8>, Error> {
        config.validate()?;
        let result = harness::run_experiment(kind, &config)?;
        let mut buf = Vec::new();
        harness::write_results(&result, format, &mut buf)?;
        Ok(buf)
    });
    String::from_utf8(bytes.map_err(to_py)?).map_err(|e| UpaError::new_err(e.to_string()))
}

#[pymodule(name = "upa_precoding")]
fn upa_precoding_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("UpaError", py.get_type::<UpaError>())?;
    m.add("ConfigError", py.get_type::<ConfigError>())?;
    m.add("InfeasibleError", py.get_type::<InfeasibleError>())?;
    m.add("DegenerateError", py.get_type::<DegenerateError>())?;
    m.add_class::<PyArrayGeometry>()?;
    m.add_class::<PyScenarioConfig>()?;
    for f in [
        wrap_pyfunction!(bessel_j0, m)?,
        wrap_pyfunction!(mrt, m)?,
        wrap_pyfunction!(zf, m)?,
        wrap_pyfunction!(tmrt, m)?,
        wrap_pyfunction!(tzf, m)?,
        wrap_pyfunction!(tzf_feasible, m)?,
        wrap_pyfunction!(sinr, m)?,
        wrap_pyfunction!(sum_rate, m)?,
        wrap_pyfunction!(chordal_distance_sq, m)?,
        wrap_pyfunction!(hermitian_eig, m)?,
        wrap_pyfunction!(run_experiment, m)?,
    ] {
        m.add_function(f)?;
    }
    Ok(())
}
