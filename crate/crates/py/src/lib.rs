//! Python bindings: `import wonderful`.

use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use engine::algebra::IntPoly;
use engine::fm::{BettiVector, DecompTable as CoreTable, FmSession, RankProfile};
use engine::limits::Limits;
use engine::wonderful::{self as wd, Arrangement as CoreArrangement};
use engine::Error;

create_exception!(wonderful, WonderfulError, PyException);
create_exception!(wonderful, CapExceededError, WonderfulError);
create_exception!(wonderful, CrossCheckError, WonderfulError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => CapExceededError::new_err(e.to_string()),
        Error::CrossCheck(_) => CrossCheckError::new_err(e.to_string()),
        Error::InvalidInput(_) | Error::Arrangement(_) | Error::IncompatibleOrder(_) | Error::Json(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => WonderfulError::new_err(e.to_string()),
    }
}

fn limits(cap: Option<usize>) -> Limits {
    cap.map(Limits::uniform).unwrap_or_else(Limits::from_env)
}

fn coeffs(p: &IntPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn betti(numbers: Option<Vec<i64>>, dim: usize) -> PyResult<BettiVector> {
    match numbers {
        None => Ok(BettiVector::projective(dim)),
        Some(b) => BettiVector::new(b).map_err(py_err),
    }
}

/// Multiplicities of `h(X^k)(i)` in `h(X[n])`.
#[pyclass(frozen, module = "wonderful")]
struct DecompTable {
    inner: CoreTable,
}

#[pymethods]
impl DecompTable {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.d()
    }

    /// `[(k, i, mult)]`, sorted by `k` descending then `i`.
    fn entries(&self) -> Vec<(usize, usize, BigUint)> {
        self.inner.entries().map(|e| (e.k, e.i, e.mult.clone())).collect()
    }

    fn get(&self, k: usize, i: usize) -> BigUint {
        self.inner.get(k, i)
    }

    fn summand_count(&self) -> BigUint {
        self.inner.summand_count()
    }

    /// Total rank given `{k: rank of A(X^k)}`, or projective space when omitted.
    #[pyo3(signature = (ranks=None))]
    fn chow_rank(&self, ranks: Option<Vec<(usize, BigUint)>>) -> PyResult<BigUint> {
        let profile = match ranks {
            None => RankProfile::projective(self.inner.d(), self.inner.n()),
            Some(r) => RankProfile::new(r).map_err(py_err)?,
        };
        self.inner.chow_rank(&profile).map_err(py_err)
    }

    /// Poincare coefficients from the Betti numbers of `X` (default `P^dim`).
    #[pyo3(signature = (betti_numbers=None))]
    fn poincare(&self, betti_numbers: Option<Vec<i64>>) -> PyResult<Vec<BigInt>> {
        let b = betti(betti_numbers, self.inner.d())?;
        Ok(coeffs(&self.inner.poincare(&b).map_err(py_err)?))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(|e| py_err(e.into()))
    }

    fn __len__(&self) -> usize {
        self.inner.entries().len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DecompTable(n={}, dim={}, summands={})", self.inner.n(), self.inner.d(), self.inner.entries().len())
    }
}

/// An arrangement of subvarieties with a building set.
#[pyclass(frozen, module = "wonderful")]
struct Arrangement {
    inner: CoreArrangement,
}

#[pymethods]
impl Arrangement {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Arrangement { inner: CoreArrangement::from_json(text).map_err(py_err)? })
    }

    /// Polydiagonals of `X^n` with all diagonals as building set.
    #[staticmethod]
    fn fm(n: usize, dim: usize) -> PyResult<Self> {
        Ok(Arrangement { inner: wd::fm_arrangement(n, dim).map_err(py_err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(py_err)
    }

    fn building(&self) -> Vec<String> {
        self.inner.names(self.inner.building()).into_iter().map(String::from).collect()
    }

    fn nests(&self) -> Vec<Vec<String>> {
        wd::enumerate_g_nests(&self.inner)
            .iter()
            .map(|t| self.inner.names(t.elements()).into_iter().map(String::from).collect())
            .collect()
    }

    /// `[(stratum, dim, twist, mult)]`.
    fn decompose(&self) -> PyResult<Vec<(String, usize, usize, BigUint)>> {
        Ok(summands(wd::decompose(&self.inner).map_err(py_err)?))
    }

    /// Blow up the centers one at a time in `order`; raises if the result
    /// differs from `decompose()`.
    fn decompose_iterative(&self, order: Vec<String>) -> PyResult<Vec<(String, usize, usize, BigUint)>> {
        Ok(summands(wd::decompose_iterative(&self.inner, &order).map_err(py_err)?))
    }

    #[pyo3(signature = (limit=1000))]
    fn admissible_orders(&self, limit: usize) -> PyResult<Vec<Vec<String>>> {
        wd::all_admissible_orders(&self.inner, limit).map_err(py_err)
    }

    #[pyo3(signature = (count, seed=0))]
    fn sample_orders(&self, count: usize, seed: u64) -> Vec<Vec<String>> {
        wd::sample_admissible_orders(&self.inner, count, seed)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

fn summands(d: wd::Decomposition) -> Vec<(String, usize, usize, BigUint)> {
    d.summands.into_iter().map(|s| (s.stratum, s.dim, s.twist, s.mult)).collect()
}

#[pyfunction]
#[pyo3(signature = (n, dim, cap=None))]
fn fm_decompose(n: usize, dim: usize, cap: Option<usize>) -> PyResult<DecompTable> {
    let mut s = FmSession::with_limits(dim, limits(cap)).map_err(py_err)?;
    Ok(DecompTable { inner: s.decomposition_table(n).map_err(py_err)? })
}

/// Coefficient lists of `f_1 .. f_order`.
#[pyfunction]
fn genfun(dim: usize, order: usize) -> PyResult<Vec<Vec<BigInt>>> {
    let series = engine::fm::solve_n(dim, order).map_err(py_err)?;
    (1..=order).map(|k| Ok(coeffs(series.coeff(k).map_err(py_err)?))).collect()
}

/// `rank A(P^d[n])` as a polynomial in `d`.
#[pyfunction]
fn rank_polynomial(n: usize) -> PyResult<Vec<BigInt>> {
    Ok(coeffs(&engine::fm::rank_polynomial(n).map_err(py_err)?))
}

/// `[(nu, m, lambda)]` for `h(X[n]/S_n)`.
#[pyfunction]
#[pyo3(signature = (n, dim, cap=None))]
fn quotient_decompose(n: usize, dim: usize, cap: Option<usize>) -> PyResult<Vec<(Vec<usize>, usize, BigUint)>> {
    let q = engine::quotient::quotient_decomposition_with(n, dim, limits(cap)).map_err(py_err)?;
    Ok(q.entries.into_iter().map(|e| (e.nu, e.m, e.lambda)).collect())
}

#[pyfunction]
#[pyo3(signature = (n, dim, betti_numbers=None))]
fn quotient_poincare(n: usize, dim: usize, betti_numbers: Option<Vec<i64>>) -> PyResult<Vec<BigInt>> {
    let b = betti(betti_numbers, dim)?;
    Ok(coeffs(&engine::quotient::quotient_poincare(n, dim, &b).map_err(py_err)?))
}

#[pyfunction]
fn symmetric_product_poincare(betti_numbers: Vec<i64>, n: usize) -> PyResult<Vec<BigInt>> {
    let b = BettiVector::new(betti_numbers).map_err(py_err)?;
    Ok(coeffs(&engine::macdonald::symmetric_product_poincare(&b, n).map_err(py_err)?))
}

#[pymodule]
pub fn wonderful(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("WonderfulError", m.py().get_type::<WonderfulError>())?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add("CrossCheckError", m.py().get_type::<CrossCheckError>())?;
    m.add_class::<DecompTable>()?;
    m.add_class::<Arrangement>()?;
    m.add_function(wrap_pyfunction!(fm_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(genfun, m)?)?;
    m.add_function(wrap_pyfunction!(rank_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_poincare, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_product_poincare, m)?)?;
    Ok(())
}
