use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use secant_core::classify;
use secant_core::coords::{CoordIndex, FactorProfile};
use secant_core::delpezzo::{self, SurfaceName};
use secant_core::error::Error;
use secant_core::field::{FieldConfig, DEFAULT_PRIME};
use secant_core::flatten::{enumerate_splits, Flattening, Split};
use secant_core::numeric::Embedding;
use secant_core::secant;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(prime: u64, seed: u64, trials: usize) -> PyResult<FieldConfig> {
    FieldConfig::new(prime, seed, trials).map_err(err)
}

fn split(text: &str) -> PyResult<Split> {
    text.parse().map_err(err)
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A Segre-Veronese profile such as `P(1)xP(1)xP(5)`.
#[pyclass(name = "Profile", frozen)]
struct PyProfile {
    inner: FactorProfile,
}

#[pymethods]
impl PyProfile {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Profile('{}')", self.inner)
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn variety_dim(&self) -> usize {
        self.inner.variety_dim()
    }

    #[getter]
    fn coord_count(&self) -> usize {
        self.inner.coord_count()
    }

    fn coord_name(&self, index: usize) -> PyResult<String> {
        self.inner.coord_name(CoordIndex(index)).map_err(err)
    }

    /// Proper splits up to transpose, as `(split, rows, cols)`.
    fn splits(&self) -> PyResult<Vec<(String, usize, usize)>> {
        Ok(enumerate_splits(&self.inner)
            .map_err(err)?
            .into_iter()
            .map(|s| (s.split.to_string(), s.rows, s.cols))
            .collect())
    }

    /// Flattening entries as coordinate names.
    fn flatten(&self, split_text: &str) -> PyResult<Vec<Vec<String>>> {
        let flat = Flattening::build(&self.inner, &split(split_text)?, false).map_err(err)?;
        let (r, c) = flat.shape();
        (0..r)
            .map(|i| (0..c).map(|j| self.inner.coord_name(flat.entry(i, j)).map_err(err)).collect())
            .collect()
    }

    /// `k x k` minors of a flattening in the polynomial text format.
    #[pyo3(signature = (split_text, k, cap=1000))]
    fn minors(&self, split_text: &str, k: usize, cap: usize) -> PyResult<Vec<String>> {
        let flat = Flattening::build(&self.inner, &split(split_text)?, false).map_err(err)?;
        flat.emit_minors(k, cap)
            .map_err(err)?
            .map(|(_, _, p)| p.to_text(&self.inner).map_err(err))
            .collect()
    }

    fn expected_dim(&self, s: usize) -> usize {
        classify::expected_secant_dim(&self.inner, s)
    }

    #[pyo3(signature = (s, prime=DEFAULT_PRIME, seed=0, trials=3))]
    fn secant_dim(&self, s: usize, prime: u64, seed: u64, trials: usize) -> PyResult<usize> {
        let emb = Embedding::full(self.inner.clone());
        Ok(secant::terracini_dim(&emb, s, &config(prime, seed, trials)?)
            .map_err(err)?
            .projective_dim)
    }

    /// `(holds, max_rank)` for the flattening at secant samples.
    #[pyo3(signature = (split_text, s, prime=DEFAULT_PRIME, seed=0, trials=3))]
    fn rank_bound(&self, split_text: &str, s: usize, prime: u64, seed: u64, trials: usize) -> PyResult<(bool, usize)> {
        let b = secant::verify_rank_bound(&self.inner, &split(split_text)?, s, &config(prime, seed, trials)?)
            .map_err(err)?;
        Ok((b.holds, b.max_rank))
    }

    /// Report dictionary for `σ_s` including the oracle dimension.
    #[pyo3(signature = (s, prime=DEFAULT_PRIME, seed=0, trials=3))]
    fn report<'py>(&self, py: Python<'py>, s: usize, prime: u64, seed: u64, trials: usize) -> PyResult<Bound<'py, PyAny>> {
        let dim = self.secant_dim(s, prime, seed, trials)?;
        to_py(py, &classify::secant_report(&self.inner, s, Some(dim)).map_err(err)?)
    }
}

#[pyfunction]
fn giambelli_degree(a: usize, b: usize, s: usize) -> PyResult<u128> {
    classify::giambelli_degree(a, b, s).map_err(err)
}

#[pyfunction]
fn two_factor_secant_dim(a: usize, b: usize, s: usize) -> usize {
    classify::two_factor_secant_dim(a, b, s)
}

#[pyfunction]
fn critical_s(n_list: Vec<usize>) -> usize {
    classify::critical_s(&n_list)
}

#[pyfunction]
fn unbalanced_classify<'py>(py: Python<'py>, n_list: Vec<usize>, n: usize, s: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &classify::unbalanced_classify(&n_list, n, s))
}

#[pyfunction]
fn sv_defect_range(k: usize, m: usize) -> PyResult<(usize, usize)> {
    classify::sv_defect_range(k, m).map_err(err)
}

#[pyfunction]
fn symbolic_minor_vanishing(surface: &str, k: usize) -> PyResult<bool> {
    let name: SurfaceName = surface.parse().map_err(err)?;
    let spec = delpezzo::build_surface(name).map_err(err)?;
    delpezzo::symbolic_minor_vanishing(&spec, k).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (prime=DEFAULT_PRIME, seed=0, trials=3))]
fn delpezzo_report(py: Python<'_>, prime: u64, seed: u64, trials: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &delpezzo::delpezzo_report(&config(prime, seed, trials)?).map_err(err)?)
}

#[pymodule]
fn secantlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProfile>()?;
    m.add_function(wrap_pyfunction!(giambelli_degree, m)?)?;
    m.add_function(wrap_pyfunction!(two_factor_secant_dim, m)?)?;
    m.add_function(wrap_pyfunction!(critical_s, m)?)?;
    m.add_function(wrap_pyfunction!(unbalanced_classify, m)?)?;
    m.add_function(wrap_pyfunction!(sv_defect_range, m)?)?;
    m.add_function(wrap_pyfunction!(symbolic_minor_vanishing, m)?)?;
    m.add_function(wrap_pyfunction!(delpezzo_report, m)?)?;
    m.add("DEFAULT_PRIME", DEFAULT_PRIME)?;
    Ok(())
}
