use num_complex::Complex64;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wavelet_landau::{cascade, filters, haar, inverse, landau, line, zak, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyOSError::new_err(io.to_string()),
        Error::FilterParse { .. }
        | Error::GridParse { .. }
        | Error::UnknownFilter(_)
        | Error::EmptyFilter
        | Error::InvalidArgument(_)
        | Error::DuplicateSite(..)
        | Error::OffSublattice(..)
        | Error::NotAsymptotic { .. }
        | Error::OutsideEnvelope { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for wavelet_landau::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

#[pyclass(name = "FilterBank", module = "wavelet_landau", frozen)]
struct PyFilterBank(filters::FilterBank);

#[pymethods]
impl PyFilterBank {
    #[new]
    #[pyo3(signature = (coeffs, offset = 0, name = "user"))]
    fn new(coeffs: Vec<Complex64>, offset: i64, name: &str) -> PyResult<Self> {
        filters::FilterBank::new(name, offset, coeffs).py_err().map(Self)
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        filters::FilterBank::builtin(name).py_err().map(Self)
    }

    #[staticmethod]
    fn builtin_names() -> Vec<&'static str> {
        filters::FilterBank::builtin_names().to_vec()
    }

    #[staticmethod]
    fn read(path: std::path::PathBuf) -> PyResult<Self> {
        filters::FilterBank::read(&path).py_err().map(Self)
    }

    #[staticmethod]
    fn parse(name: &str, text: &str) -> PyResult<Self> {
        filters::FilterBank::parse(name, text).py_err().map(Self)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn offset(&self) -> i64 {
        self.0.n_min()
    }

    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.0.coeffs().to_vec()
    }

    fn coeff(&self, n: i64) -> Complex64 {
        self.0.coeff(n)
    }

    fn default_tolerance(&self) -> f64 {
        self.0.default_tolerance()
    }

    /// Residuals of the QMF identities, with `passed` against `tol`.
    #[pyo3(signature = (tol = None))]
    fn verify_qmf<'py>(&self, py: Python<'py>, tol: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.0.verify_qmf(tol.unwrap_or_else(|| self.0.default_tolerance()));
        let d = PyDict::new(py);
        for (k, v) in r.rows() {
            d.set_item(k, v)?;
        }
        d.set_item("max_residual", r.max_residual())?;
        d.set_item("tol", r.tol)?;
        d.set_item("passed", r.passed)?;
        Ok(d)
    }

    fn to_text(&self) -> String {
        self.0.to_text(&[])
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("FilterBank({:?}, offset={}, len={})", self.0.name(), self.0.n_min(), self.0.len())
    }
}

#[pyclass(name = "LineFunction", module = "wavelet_landau", frozen)]
struct PyLineFunction(line::LineFunction);

#[pymethods]
impl PyLineFunction {
    #[staticmethod]
    fn gaussian(center: f64, width: f64) -> Self {
        Self(line::LineFunction::gaussian(center, width))
    }

    #[staticmethod]
    fn ground_gaussian() -> Self {
        Self(line::LineFunction::ground_gaussian())
    }

    /// `T_{2L}` built from a filter bank.
    #[staticmethod]
    #[pyo3(name = "build_t")]
    fn from_filter(fb: &PyFilterBank, l: u32) -> PyResult<Self> {
        landau::build_t(&fb.0, l).py_err().map(Self)
    }

    /// Scaling function by the cascade algorithm.
    #[staticmethod]
    #[pyo3(signature = (fb, depth = cascade::DEFAULT_DEPTH))]
    fn scaling_function(fb: &PyFilterBank, depth: u32) -> PyResult<Self> {
        cascade::scaling_function(&fb.0, depth)
            .py_err()
            .map(|s| Self(line::LineFunction::Sampled(s)))
    }

    #[staticmethod]
    #[pyo3(signature = (fb, depth = cascade::DEFAULT_DEPTH))]
    fn mother_wavelet(fb: &PyFilterBank, depth: u32) -> PyResult<Self> {
        cascade::mother_wavelet(&fb.0, depth)
            .py_err()
            .map(|s| Self(line::LineFunction::Sampled(s)))
    }

    fn __call__(&self, x: f64) -> Complex64 {
        self.0.eval(x)
    }

    fn norm_sqr(&self) -> PyResult<f64> {
        self.0.norm_sqr().py_err()
    }

    fn window(&self) -> (f64, f64) {
        self.0.window()
    }
}

#[pyclass(name = "KqFunction", module = "wavelet_landau", frozen)]
struct PyKqFunction(zak::KqFunction);

#[pymethods]
impl PyKqFunction {
    /// Zak transform of a line function on an `n_k × n_q` cell grid.
    #[staticmethod]
    #[pyo3(signature = (f, n_k = zak::DEFAULT_GRID, n_q = zak::DEFAULT_GRID))]
    fn zak(f: &PyLineFunction, n_k: usize, n_q: usize) -> PyResult<Self> {
        let grid = zak::KqGrid::new(n_k, n_q).py_err()?;
        zak::zak_transform(&f.0, grid, zak::Truncation::default()).py_err().map(Self)
    }

    /// The kq field of `T_{2L}`.
    #[staticmethod]
    #[pyo3(signature = (fb, l, n_k = zak::DEFAULT_GRID, n_q = zak::DEFAULT_GRID))]
    fn t_field(fb: &PyFilterBank, l: u32, n_k: usize, n_q: usize) -> PyResult<Self> {
        let grid = zak::KqGrid::new(n_k, n_q).py_err()?;
        landau::t_field(&fb.0, l, grid).py_err().map(Self)
    }

    /// Pure-phase field `Σ coef e^{i(k_order k + q_order q + offset)}`,
    /// terms given as `(coef, k_order, q_order, offset)`.
    #[staticmethod]
    #[pyo3(signature = (terms, n_k = zak::DEFAULT_GRID, n_q = zak::DEFAULT_GRID))]
    fn phase(terms: Vec<(f64, i32, i32, f64)>, n_k: usize, n_q: usize) -> PyResult<Self> {
        let grid = zak::KqGrid::new(n_k, n_q).py_err()?;
        let terms = terms
            .into_iter()
            .map(|(coef, k_order, q_order, offset)| zak::PhaseTerm {
                coef,
                k_order,
                q_order,
                offset,
            })
            .collect();
        Ok(Self(zak::KqFunction::phase(terms, grid)))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        zak::KqFunction::parse(text).py_err().map(Self)
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        let g = self.0.grid();
        (g.n_k, g.n_q)
    }

    /// Samples, k-major.
    fn values(&self) -> Vec<Complex64> {
        self.0.values().to_vec()
    }

    fn __call__(&self, k: f64, q: f64) -> Complex64 {
        self.0.eval(k, q)
    }

    fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }

    fn max_k_variation(&self) -> f64 {
        self.0.max_k_variation()
    }

    /// Inverse Zak transform at `x + n a`.
    fn inverse(&self, n: i64, x: f64) -> Complex64 {
        zak::inverse_zak(&self.0, n, x)
    }

    fn check_boundary<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = zak::check_boundary(&self.0, tol).py_err()?;
        let d = PyDict::new(py);
        d.set_item("k_periodicity", r.k_periodicity)?;
        d.set_item("q_quasi_periodicity", r.q_quasi_periodicity)?;
        d.set_item("passed", r.passed)?;
        Ok(d)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

#[pyclass(name = "LandauOrbital", module = "wavelet_landau", frozen)]
struct PyLandauOrbital(landau::LandauOrbital);

#[pymethods]
impl PyLandauOrbital {
    #[new]
    #[pyo3(signature = (hp, level = 0))]
    fn new(hp: &PyLineFunction, level: u32) -> PyResult<Self> {
        let level = landau::LandauLevel::from_index(level).py_err()?;
        landau::LandauOrbital::new(level, hp.0.clone()).py_err().map(Self)
    }

    fn translated(&self, m: i64, n: i64) -> Self {
        Self(self.0.translated(m, n))
    }

    fn __call__(&self, x: f64, y: f64) -> PyResult<Complex64> {
        self.0.eval(x, y).py_err()
    }
}

/// Lattice constant `a = √(2π)`.
#[pyfunction]
fn lattice_a() -> f64 {
    wavelet_landau::LATTICE_A
}

/// `max |J_M − M/(2π)|` and the target, on the grid of `h`.
#[pyfunction]
fn j_criterion<'py>(py: Python<'py>, h: &PyKqFunction, m: i64) -> PyResult<Bound<'py, PyDict>> {
    let r = landau::j_criterion(&h.0, m).py_err()?;
    let d = PyDict::new(py);
    d.set_item("target", r.target)?;
    d.set_item("max_dev", r.max_dev)?;
    Ok(d)
}

#[pyfunction]
fn overlap(hp: &PyLineFunction, m: i64, n: i64) -> PyResult<Complex64> {
    landau::overlap_s(&hp.0, m, n).py_err()
}

#[pyfunction]
fn overlap_kq(h: &PyKqFunction, m: i64, n: i64) -> Complex64 {
    landau::overlap_s_kq(&h.0, m, n)
}

/// First-Landau-level overlap between translates.
#[pyfunction]
fn first_level_overlap(hp: &PyLineFunction, m: i64, n: i64) -> PyResult<Complex64> {
    landau::first_level_overlap(&hp.0, m, n).py_err()
}

/// Overlap table on the stride-`stride` sublattice: entries as
/// `(m, n, value, sublattice)` plus `max_dev` and `max_cross`.
#[pyfunction]
#[pyo3(signature = (hp, stride, radius = 3, kq = None))]
fn overlaps<'py>(
    py: Python<'py>,
    hp: &PyLineFunction,
    stride: i64,
    radius: i64,
    kq: Option<&PyKqFunction>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = landau::overlap_report(&hp.0, kq.map(|h| &h.0), stride, radius).py_err()?;
    let d = PyDict::new(py);
    let entries: Vec<(i64, i64, Complex64, bool)> =
        r.entries.iter().map(|e| (e.m, e.n, e.line, e.sublattice)).collect();
    d.set_item("entries", entries)?;
    d.set_item("max_dev", r.max_dev)?;
    d.set_item("max_cross", r.max_cross)?;
    Ok(d)
}

/// Gram matrix (row lists) and determinant for translates at `sites`.
#[pyfunction]
#[pyo3(signature = (hp, sites, stride = 1))]
fn gram(hp: &PyLineFunction, sites: Vec<(i64, i64)>, stride: i64) -> PyResult<(Vec<Vec<Complex64>>, Complex64)> {
    let r = landau::gram_slater(&hp.0, &sites, stride).py_err()?;
    let n = r.sites.len();
    let rows = (0..n).map(|i| (0..n).map(|j| r.matrix[(i, j)]).collect()).collect();
    Ok((rows, r.det))
}

#[pyfunction]
fn square_patch(side: usize, stride: i64) -> Vec<(i64, i64)> {
    landau::square_patch(side, stride)
}

/// Forward map and recovery: `max_deviation`, `k_variation` and the
/// recovered coefficients per sampled k.
#[pyfunction]
#[pyo3(signature = (fb, l, samples = 8))]
fn roundtrip<'py>(py: Python<'py>, fb: &PyFilterBank, l: u32, samples: usize) -> PyResult<Bound<'py, PyDict>> {
    let r = inverse::roundtrip(&fb.0, l, &inverse::sample_ks(samples)).py_err()?;
    let d = PyDict::new(py);
    d.set_item("max_deviation", r.max_deviation)?;
    d.set_item("k_variation", r.k_variation)?;
    let recovered: Vec<(f64, i64, Vec<Complex64>)> =
        r.recovered.iter().map(|e| (e.k, e.offset, e.coeffs.clone())).collect();
    d.set_item("recovered", recovered)?;
    Ok(d)
}

/// Coefficients `h_n(k)` extracted from a kq field, as a filter bank.
#[pyfunction]
#[pyo3(signature = (h, k, window = inverse::DEFAULT_WINDOW))]
fn extract_filter(h: &PyKqFunction, k: f64, window: i64) -> PyResult<PyFilterBank> {
    let ex = inverse::extract_filter(&h.0, k, window).py_err()?;
    ex.to_filter_bank("extracted").py_err().map(PyFilterBank)
}

/// `Σ_{|n| ≤ window} h_n(k) conj(h_{n+2l}(k))`.
#[pyfunction]
#[pyo3(signature = (h, l, k, window = inverse::DEFAULT_WINDOW))]
fn mra_sum(h: &PyKqFunction, l: i64, k: f64, window: i64) -> PyResult<Complex64> {
    inverse::verify_mra_condition(&h.0, l, k, window).py_err()
}

#[pyfunction]
fn cerf(z: Complex64) -> PyResult<Complex64> {
    haar::cerf(z).py_err()
}

#[pyfunction]
fn t2_closed(x: f64, y: f64) -> PyResult<Complex64> {
    haar::t2_closed(x, y).py_err()
}

#[pyfunction]
fn t2_asym(x: f64, y: f64) -> PyResult<Complex64> {
    haar::t2_asym(x, y).py_err()
}

#[pyfunction]
fn h00_closed(x: f64, y: f64) -> PyResult<Complex64> {
    haar::h00_closed(x, y).py_err()
}

#[pyfunction]
fn h00_asym(x: f64, y: f64) -> PyResult<Complex64> {
    haar::h00_asym(x, y).py_err()
}

/// Closed form against quadrature on an `n × n` grid over
/// `[−half_width, half_width]²`.
#[pyfunction]
#[pyo3(signature = (n = 21, half_width = 3.0))]
fn haar_compare<'py>(py: Python<'py>, n: usize, half_width: f64) -> PyResult<Bound<'py, PyDict>> {
    let t = haar::compare_grid(n, half_width).py_err()?;
    let d = PyDict::new(py);
    d.set_item("max_rel_err", t.max_rel_err())?;
    d.set_item("max_phase_gap", t.max_phase_gap())?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "wavelet_landau")]
fn wavelet_landau_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LATTICE_A", wavelet_landau::LATTICE_A)?;
    m.add_class::<PyFilterBank>()?;
    m.add_class::<PyLineFunction>()?;
    m.add_class::<PyKqFunction>()?;
    m.add_class::<PyLandauOrbital>()?;
    m.add_function(wrap_pyfunction!(lattice_a, m)?)?;
    m.add_function(wrap_pyfunction!(j_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(overlap, m)?)?;
    m.add_function(wrap_pyfunction!(overlap_kq, m)?)?;
    m.add_function(wrap_pyfunction!(first_level_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(overlaps, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(square_patch, m)?)?;
    m.add_function(wrap_pyfunction!(roundtrip, m)?)?;
    m.add_function(wrap_pyfunction!(extract_filter, m)?)?;
    m.add_function(wrap_pyfunction!(mra_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cerf, m)?)?;
    m.add_function(wrap_pyfunction!(t2_closed, m)?)?;
    m.add_function(wrap_pyfunction!(t2_asym, m)?)?;
    m.add_function(wrap_pyfunction!(h00_closed, m)?)?;
    m.add_function(wrap_pyfunction!(h00_asym, m)?)?;
    m.add_function(wrap_pyfunction!(haar_compare, m)?)?;
    Ok(())
}
