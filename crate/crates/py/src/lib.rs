//! Python bindings: the `pentagon` extension module.
//!
//! ```python
//! import pentagon
//! s = pentagon.Solution.canonical(3, 1, 1)
//! assert s.check_pentagon() and s.classify() == (3, 1, 1)
//! ```

use std::time::Duration;

use pentagon_core as core;
use pentagon_core::{Bijection, EnumerationOptions, Error, GroupTable, SolutionTable};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded(_) | Error::BoundExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn options(workers: Option<usize>, budget_ms: Option<u64>) -> EnumerationOptions {
    EnumerationOptions { workers, budget: budget_ms.map(Duration::from_millis) }
}

/// A map `s(x, y) = (x·y, θ_x(y))` on `{0, ..., size-1}`.
#[pyclass(name = "Solution", module = "pentagon", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PySolution {
    inner: SolutionTable,
}

impl From<SolutionTable> for PySolution {
    fn from(inner: SolutionTable) -> Self {
        PySolution { inner }
    }
}

#[pymethods]
impl PySolution {
    /// `entries[x*size + y] = s(x, y)`.
    #[new]
    fn new(size: usize, entries: Vec<(usize, usize)>) -> PyResult<Self> {
        SolutionTable::new(size, entries).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        SolutionTable::identity(n).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn flip(n: usize) -> PyResult<Self> {
        SolutionTable::flip(n).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn irretractable(r: u32) -> PyResult<Self> {
        if r > 10 {
            return Err(PyValueError::new_err("r must be at most 10"));
        }
        Ok(core::irretractable_solution(r).into())
    }

    #[staticmethod]
    fn canonical(x: usize, a: u32, g: u32) -> PyResult<Self> {
        match a.checked_add(g).and_then(|d| 1usize.checked_shl(d)).and_then(|m| m.checked_mul(x)) {
            Some(n) if n <= 4096 => core::canonical_solution(x, a, g).map(Into::into).map_err(to_py),
            _ => Err(PyValueError::new_err("carrier larger than 4096 points")),
        }
    }

    /// `s(x, y) = (xy, y)` on the cyclic group of order `n`.
    #[staticmethod]
    fn cyclic_group(n: usize) -> PyResult<Self> {
        let g = GroupTable::cyclic(n).map_err(to_py)?;
        Ok(core::group_solution(&g).into())
    }

    /// The `E × C_k` family for a permutation given by its 0-based images.
    #[staticmethod]
    #[pyo3(signature = (images, cyclic_order = 1))]
    fn cycle(images: Vec<usize>, cyclic_order: usize) -> PyResult<Self> {
        let sigma = Bijection::new(images).map_err(to_py)?;
        let g = GroupTable::cyclic(cyclic_order).map_err(to_py)?;
        core::cycle_solution(&sigma, &g).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        core::parse_solution(text).map(Into::into).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_text(&self) -> String {
        core::emit_solution(&self.inner)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn entries(&self) -> Vec<(usize, usize)> {
        self.inner.entries().to_vec()
    }

    fn apply(&self, x: usize, y: usize) -> PyResult<(usize, usize)> {
        let n = self.inner.size();
        if x >= n || y >= n {
            return Err(PyValueError::new_err(format!("({x}, {y}) out of range for size {n}")));
        }
        Ok(self.inner.apply(x, y))
    }

    fn check_pentagon(&self) -> bool {
        self.inner.check_pentagon()
    }

    fn check_reversed_pentagon(&self) -> bool {
        self.inner.check_reversed_pentagon()
    }

    fn check_involutive(&self) -> bool {
        self.inner.check_involutive()
    }

    fn check_bijective(&self) -> bool {
        self.inner.check_bijective()
    }

    fn check_commutative(&self) -> bool {
        self.inner.check_commutative()
    }

    fn check_cocommutative(&self) -> bool {
        self.inner.check_cocommutative()
    }

    /// `(triple, lhs, rhs)` for the first triple where the equation fails, or `None`.
    fn pentagon_witness(&self) -> Option<([usize; 3], [usize; 3], [usize; 3])> {
        self.inner.pentagon_witness().map(|w| (w.triple, w.lhs, w.rhs))
    }

    #[pyo3(signature = (cap = 65536))]
    fn order(&self, cap: usize) -> Option<usize> {
        self.inner.order_of(cap)
    }

    fn flip_conjugate(&self) -> Self {
        self.inner.flip_conjugate().into()
    }

    fn relabel(&self, images: Vec<usize>) -> PyResult<Self> {
        let f = Bijection::new(images).map_err(to_py)?;
        self.inner.relabel(&f).map(Into::into).map_err(to_py)
    }

    fn product(&self, other: &PySolution) -> PyResult<Self> {
        if self.inner.size().saturating_mul(other.inner.size()) > 4096 {
            return Err(PyValueError::new_err("product larger than 4096 points"));
        }
        Ok(core::product_solution(&self.inner, &other.inner).into())
    }

    /// `(quotient, class_of)`.
    fn retract(&self) -> PyResult<(PySolution, Vec<usize>)> {
        let r = core::retract(&self.inner).map_err(to_py)?;
        Ok((r.quotient.into(), r.class_of))
    }

    fn is_irretractable(&self) -> PyResult<bool> {
        core::is_irretractable(&self.inner).map_err(to_py)
    }

    /// `(|X|, dim A, dim G)`.
    fn classify(&self) -> PyResult<(usize, u32, u32)> {
        let t = core::classify(&self.inner).map_err(to_py)?;
        Ok((t.x_size, t.a_dim, t.g_dim))
    }

    fn growth_series(&self, length: usize) -> PyResult<Vec<u64>> {
        core::growth_series(&self.inner, length).map(|g| g.counts).map_err(to_py)
    }

    /// Degree of polynomial growth, or `None` if it has not stabilized by `length`.
    fn growth_degree(&self, length: usize) -> PyResult<Option<usize>> {
        let g = core::growth_series(&self.inner, length).map_err(to_py)?;
        Ok(core::estimate_growth_degree(&g).degree())
    }

    fn rank_expected(&self) -> PyResult<usize> {
        core::rank_expected(&self.inner).map_err(to_py)
    }

    fn normal_forms(&self, length: usize) -> PyResult<Vec<Vec<usize>>> {
        core::normal_forms(&self.inner, length).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Solution(size={})", self.inner.size())
    }
}

/// All involutive solutions on `n` points, sorted.
#[pyfunction]
#[pyo3(signature = (n, workers = None, budget_ms = None))]
fn enumerate_solutions(py: Python<'_>, n: usize, workers: Option<usize>, budget_ms: Option<u64>) -> PyResult<Vec<PySolution>> {
    let out = py.detach(|| core::enumerate_pruned(n, &options(workers, budget_ms))).map_err(to_py)?;
    if !out.complete {
        return Err(PyRuntimeError::new_err(format!("size {n}: budget exhausted before the search finished")));
    }
    Ok(out.tables.into_iter().map(Into::into).collect())
}

/// `[((x, a, g), members, representative), ...]` for the classes on `n` points.
#[pyfunction]
#[pyo3(signature = (n, workers = None, budget_ms = None))]
fn classes(
    py: Python<'_>,
    n: usize,
    workers: Option<usize>,
    budget_ms: Option<u64>,
) -> PyResult<Vec<((usize, u32, u32), usize, PySolution)>> {
    let report = py.detach(|| core::count_up_to_iso(n, &options(workers, budget_ms))).map_err(to_py)?;
    Ok(report
        .classes
        .into_iter()
        .map(|c| ((c.triple.x_size, c.triple.a_dim, c.triple.g_dim), c.members, c.representative.into()))
        .collect())
}

#[pyfunction]
fn expected_count(n: usize) -> u64 {
    core::expected_count(n)
}

/// Permutations of `0..n` with `σ^(σ(i)+1) = σ^i` on 1-based labels, as 0-based images.
#[pyfunction]
fn sigma_search(n: usize) -> PyResult<Vec<Vec<usize>>> {
    if !(1..=9).contains(&n) {
        return Err(PyValueError::new_err("n must be between 1 and 9"));
    }
    Ok(core::sigma_search(n).into_iter().map(|p| p.images().to_vec()).collect())
}

/// Images of an isomorphism `s → t`, or `None`.
#[pyfunction]
#[pyo3(signature = (s, t, bound = core::isomorphism::DEFAULT_ISOMORPHISM_BOUND))]
fn find_isomorphism(s: &PySolution, t: &PySolution, bound: usize) -> PyResult<Option<Vec<usize>>> {
    core::find_isomorphism_bounded(&s.inner, &t.inner, bound).map(|f| f.map(|f| f.images().to_vec())).map_err(to_py)
}

#[pymodule]
fn pentagon(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(enumerate_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(classes, m)?)?;
    m.add_function(wrap_pyfunction!(expected_count, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_search, m)?)?;
    m.add_function(wrap_pyfunction!(find_isomorphism, m)?)?;
    Ok(())
}
