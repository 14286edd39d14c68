//! Python bindings: `import pyqhp`.

use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use qhp::catalog::run_table;
use qhp::family::Family;
use qhp::io::{read_bundle, write_bundle, Bundle, Construction, MatrixFormat, Metadata};
use qhp::report::{DistanceReport, Prediction};
use qhp::{
    AnyCode, BinaryCode, BitMatrix, BitVector, Gf2Poly, LogicalOperator, PeriodicityVectors,
    SearchConfig, StabilizerCode,
};

fn to_py_err(e: qhp::Error) -> PyErr {
    match e {
        qhp::Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Serializable value to a Python object through `json.loads`.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Dense binary matrix over GF(2).
#[pyclass(name = "BitMatrix", module = "pyqhp", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyBitMatrix(BitMatrix);

#[pymethods]
impl PyBitMatrix {
    /// Builds from a list of rows of 0/1 integers; `cols` fixes the width of
    /// a matrix without rows.
    #[new]
    #[pyo3(signature = (rows, cols = None))]
    fn new(rows: Vec<Vec<u8>>, cols: Option<usize>) -> PyResult<Self> {
        let width = rows.first().map_or(cols.unwrap_or(0), Vec::len);
        if rows.iter().any(|r| r.len() != width) || rows.iter().flatten().any(|&b| b > 1) {
            return Err(PyValueError::new_err(
                "rows must be equal-length lists of 0 and 1",
            ));
        }
        Ok(PyBitMatrix(if rows.is_empty() {
            BitMatrix::zeros(0, width)
        } else {
            BitMatrix::from_dense(&rows)
        }))
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyBitMatrix(BitMatrix::identity(n))
    }

    /// Circulant whose first row holds the coefficients of `h`.
    #[staticmethod]
    fn circulant(h: Vec<usize>, n: usize) -> PyResult<Self> {
        qhp::circulant(&Gf2Poly::from_exponents(h), n)
            .map(PyBitMatrix)
            .map_err(to_py_err)
    }

    #[getter]
    fn rows(&self) -> usize {
        self.0.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.0.cols()
    }

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn transpose(&self) -> Self {
        PyBitMatrix(self.0.transpose())
    }

    fn kernel_basis(&self) -> Self {
        PyBitMatrix(self.0.kernel_basis())
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        if self.0.cols() != other.0.rows() {
            return Err(PyValueError::new_err("inner dimensions differ"));
        }
        Ok(PyBitMatrix(self.0.mul(&other.0)))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        if (self.0.rows(), self.0.cols()) != (other.0.rows(), other.0.cols()) {
            return Err(PyValueError::new_err("shapes differ"));
        }
        Ok(PyBitMatrix(self.0.add(&other.0)))
    }

    /// Rows as lists of 0/1 integers.
    fn to_list(&self) -> Vec<Vec<u32>> {
        (0..self.0.rows())
            .map(|i| {
                self.0
                    .row_vector(i)
                    .to_bits()
                    .into_iter()
                    .map(u32::from)
                    .collect()
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "BitMatrix({}x{}, rank={})",
            self.0.rows(),
            self.0.cols(),
            self.0.rank()
        )
    }
}

/// Classical binary code `ker H`.
#[pyclass(name = "ClassicalCode", module = "pyqhp", frozen)]
struct PyClassicalCode(BinaryCode);

#[pymethods]
impl PyClassicalCode {
    #[new]
    fn new(check: &PyBitMatrix) -> Self {
        PyClassicalCode(BinaryCode::new(check.0.clone()))
    }

    /// Cyclic code with check polynomial exponents `h` and length `n`.
    #[staticmethod]
    fn cyclic(h: Vec<usize>, n: usize) -> PyResult<Self> {
        qhp::cyclic_code(&Gf2Poly::from_exponents(h), n)
            .map(PyClassicalCode)
            .map_err(to_py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn check(&self) -> PyBitMatrix {
        PyBitMatrix(self.0.check().clone())
    }

    /// `(n, k, d)`; `d` is `None` when `k = 0`.
    fn params(&self) -> (usize, usize, Option<usize>) {
        let p = self.0.params();
        (p.n, p.k, p.d.finite())
    }

    /// Parameters of the code of `Hᵀ`.
    fn transposed_params(&self) -> (usize, usize, Option<usize>) {
        let p = self.0.transposed_params();
        (p.n, p.k, p.d.finite())
    }
}

/// A stabilizer code, CSS or general, with the prediction of its construction.
#[pyclass(name = "Code", module = "pyqhp", frozen)]
struct PyCode {
    code: AnyCode,
    prediction: Option<Prediction>,
    construction: Construction,
}

fn search_config(
    seed: u64,
    workers: Option<usize>,
    exact_max_weight: Option<usize>,
    iterations: Option<usize>,
) -> SearchConfig {
    let mut cfg = SearchConfig {
        rng_seed: seed,
        exact_max_weight,
        ..SearchConfig::default()
    };
    if let Some(w) = workers.filter(|&w| w > 0) {
        cfg.worker_count = w;
    }
    if let Some(i) = iterations {
        cfg.random_iterations = i;
    }
    cfg
}

fn bits(n: usize, support: &[usize]) -> PyResult<BitVector> {
    if let Some(&i) = support.iter().find(|&&i| i >= n) {
        return Err(PyValueError::new_err(format!(
            "qubit {i} out of range for n = {n}"
        )));
    }
    Ok(BitVector::from_indices(n, support.iter().copied()))
}

#[pymethods]
impl PyCode {
    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.k()
    }

    /// Largest generator weight.
    #[getter]
    fn w(&self) -> usize {
        self.code.generator_weight()
    }

    /// `"css"` or `"symplectic"`.
    #[getter]
    fn form(&self) -> &'static str {
        match self.code {
            AnyCode::Css(_) => "css",
            AnyCode::Symplectic(_) => "symplectic",
        }
    }

    #[getter]
    fn family(&self) -> &str {
        &self.construction.family
    }

    /// Closed-form parameters, or `None` for a code read without one.
    #[getter]
    fn prediction<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.prediction.as_ref().map(|p| to_py(py, p)).transpose()
    }

    /// Sector matrices: `g_x`, `g_z` for CSS codes, `a_x`, `a_z` otherwise.
    fn matrices<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (name, m) in self.code.sectors() {
            d.set_item(name, PyBitMatrix(m.clone()))?;
        }
        Ok(d)
    }

    /// Whether the Pauli with the given X and Z supports is a logical operator.
    #[pyo3(signature = (x, z))]
    fn is_logical(&self, x: Vec<usize>, z: Vec<usize>) -> PyResult<bool> {
        let n = self.code.n();
        Ok(self
            .code
            .is_logical(&LogicalOperator::new(bits(n, &x)?, bits(n, &z)?)))
    }

    /// Minimum logical weight with certainty, bounds, witness and work counters.
    /// The search releases the GIL.
    #[pyo3(signature = (seed = 0, workers = None, exact_max_weight = None, iterations = None))]
    fn distance<'py>(
        &self,
        py: Python<'py>,
        seed: u64,
        workers: Option<usize>,
        exact_max_weight: Option<usize>,
        iterations: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let cfg = search_config(seed, workers, exact_max_weight, iterations);
        let result = py.detach(|| self.code.distance(&cfg));
        to_py(py, &DistanceReport::from(&result))
    }

    /// Writes the code as a bundle directory.
    #[pyo3(signature = (path, format = "alist"))]
    fn save(&self, path: PathBuf, format: &str) -> PyResult<()> {
        let format: MatrixFormat = format.parse().map_err(to_py_err)?;
        let bundle = Bundle::new(
            self.code.clone(),
            self.construction.clone(),
            self.prediction.clone(),
            None,
            format,
            Metadata::now(None),
        );
        write_bundle(&path, &bundle).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Code({}, [[{}, {}]], w={})",
            self.construction.family,
            self.n(),
            self.k(),
            self.w()
        )
    }
}

fn build(family: Family) -> PyResult<PyCode> {
    let built = family.build().map_err(to_py_err)?;
    Ok(PyCode {
        code: built.code,
        prediction: Some(built.prediction),
        construction: built.construction,
    })
}

fn vectors(l1: (i64, i64), l2: (i64, i64)) -> PyResult<PeriodicityVectors> {
    PeriodicityVectors::new(l1, l2).map_err(to_py_err)
}

/// Canonical toric code on an `lx × leta` lattice.
#[pyfunction]
fn toric(lx: usize, leta: usize) -> PyResult<PyCode> {
    build(Family::Toric {
        l_xi: lx,
        l_eta: leta,
    })
}

/// Rotated checkerboard code; both vectors need even 1-norm.
#[pyfunction]
fn rotated(l1: (i64, i64), l2: (i64, i64)) -> PyResult<PyCode> {
    build(Family::Checkerboard(vectors(l1, l2)?))
}

/// ZXXZ code on a non-bipartite cluster.
#[pyfunction]
fn zxxz(l1: (i64, i64), l2: (i64, i64)) -> PyResult<PyCode> {
    build(Family::Zxxz(vectors(l1, l2)?))
}

#[pyfunction]
fn hypergraph(h1: &PyBitMatrix, h2: &PyBitMatrix) -> PyResult<PyCode> {
    build(Family::Hypergraph {
        h1: h1.0.clone(),
        h2: h2.0.clone(),
    })
}

/// Product of a full-rank check with its transpose.
#[pyfunction]
fn original(h1: &PyBitMatrix) -> PyResult<PyCode> {
    build(Family::Original { h1: h1.0.clone() })
}

#[pyfunction]
fn square(h1: &PyBitMatrix, h2: &PyBitMatrix) -> PyResult<PyCode> {
    build(Family::Square {
        h1: h1.0.clone(),
        h2: h2.0.clone(),
    })
}

/// Non-CSS product of two symmetric checks.
#[pyfunction]
fn symmetric(h1: &PyBitMatrix, h2: &PyBitMatrix) -> PyResult<PyCode> {
    build(Family::Symmetric {
        h1: h1.0.clone(),
        h2: h2.0.clone(),
    })
}

/// Symmetric product with both factors from a palindromic `h`.
#[pyfunction]
fn symmetric_cyclic(h: Vec<usize>, n: usize) -> PyResult<PyCode> {
    build(Family::PalindromicSymmetric {
        h: Gf2Poly::from_exponents(h),
        n,
    })
}

#[pyfunction]
fn two_tile(
    a1: &PyBitMatrix,
    b1: &PyBitMatrix,
    a2: &PyBitMatrix,
    b2: &PyBitMatrix,
) -> PyResult<PyCode> {
    build(Family::TwoTile {
        a1: a1.0.clone(),
        b1: b1.0.clone(),
        a2: a2.0.clone(),
        b2: b2.0.clone(),
    })
}

/// Two-tile code with both factors from the even-length circulant of `h`.
#[pyfunction]
fn two_tile_cyclic(h: Vec<usize>, n: usize) -> PyResult<PyCode> {
    build(Family::TwoTileCyclic {
        h: Gf2Poly::from_exponents(h),
        n,
    })
}

/// Reads a bundle directory or manifest.
#[pyfunction]
fn load(path: PathBuf) -> PyResult<PyCode> {
    let bundle = read_bundle(&path).map_err(to_py_err)?;
    Ok(PyCode {
        code: bundle.code,
        prediction: bundle.manifest.predicted,
        construction: bundle.manifest.construction,
    })
}

/// Runs the reference table; returns the same structure as the CLI's JSON.
#[pyfunction]
#[pyo3(signature = (seed = 0, max_n = None, workers = None))]
fn reference_table<'py>(
    py: Python<'py>,
    seed: u64,
    max_n: Option<usize>,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = search_config(seed, workers, None, None);
    let report = py.detach(|| run_table(&cfg, max_n)).map_err(to_py_err)?;
    to_py(py, &report)
}

#[pymodule]
fn pyqhp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyBitMatrix>()?;
    m.add_class::<PyClassicalCode>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(toric, m)?)?;
    m.add_function(wrap_pyfunction!(rotated, m)?)?;
    m.add_function(wrap_pyfunction!(zxxz, m)?)?;
    m.add_function(wrap_pyfunction!(hypergraph, m)?)?;
    m.add_function(wrap_pyfunction!(original, m)?)?;
    m.add_function(wrap_pyfunction!(square, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(two_tile, m)?)?;
    m.add_function(wrap_pyfunction!(two_tile_cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(reference_table, m)?)?;
    Ok(())
}
