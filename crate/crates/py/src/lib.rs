//! Python bindings. Verdicts and witnesses are returned as the same
//! dictionaries the command-line `--json` mode prints.

use std::collections::BTreeSet;

use clonealg_core::alg::{parse_algebra, semantic_dim};
use clonealg_core::birkhoff::{alpha_star, eps_map, hsp_member, hspfin_member, str_check};
use clonealg_core::clone::{
    check_central, check_hyperidentity_bounded, check_identity, check_meta_identity, clone_gen, free_algebra, term_op,
    DEFAULT_CLONE_BUDGET,
};
use clonealg_core::term::syntax::{parse_fin, parse_meta, parse_q};
use clonealg_core::term::{bullet, circle, normalize_with_budget};
use clonealg_core::{Error, FiniteAlgebra, Signature};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(clonealg_py, ClonealgError, PyException);

fn err(e: Error) -> PyErr {
    ClonealgError::new_err(e.to_string())
}

/// Converts through JSON so that Python sees the documented schema.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| ClonealgError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A finite algebra on `{0..m-1}`.
#[pyclass(frozen, module = "clonealg_py")]
struct Algebra {
    inner: FiniteAlgebra,
}

#[pymethods]
impl Algebra {
    /// Parses the algebra file format.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Algebra {
            inner: parse_algebra(text).map_err(err)?,
        })
    }

    /// Builds an algebra from `{name: (arity, table)}`.
    #[staticmethod]
    fn from_tables(carrier: usize, ops: std::collections::BTreeMap<String, (usize, Vec<u32>)>) -> PyResult<Self> {
        let ops: Vec<(&str, usize, Vec<u32>)> = ops.iter().map(|(f, (n, t))| (f.as_str(), *n, t.clone())).collect();
        Ok(Algebra {
            inner: FiniteAlgebra::from_tables(carrier, &ops).map_err(err)?,
        })
    }

    #[getter]
    fn carrier(&self) -> usize {
        self.inner.carrier()
    }

    #[getter]
    fn signature(&self) -> String {
        self.inner.signature().to_string()
    }

    /// The table of one operation, first argument slowest.
    fn table(&self, name: &str) -> PyResult<Vec<u32>> {
        Ok(self.inner.op(name).map_err(err)?.values().to_vec())
    }

    /// Semantic dimension of each operation.
    fn dims(&self) -> Vec<(String, usize)> {
        self.inner.ops().iter().map(|(f, t)| (f.clone(), semantic_dim(t))).collect()
    }

    /// The subuniverse generated by `seed`.
    fn subalgebra(&self, seed: Vec<u32>) -> PyResult<BTreeSet<u32>> {
        self.inner.subalgebra_gen(&seed.into_iter().collect()).map_err(err)
    }

    /// The `n`-th direct power.
    fn power(&self, n: usize) -> PyResult<Algebra> {
        let (inner, _) = self.inner.power(n, clonealg_core::alg::DEFAULT_MAX_PRODUCT).map_err(err)?;
        Ok(Algebra { inner })
    }

    /// The quotient by the kernel of `labels`.
    fn quotient(&self, labels: Vec<u32>) -> PyResult<Algebra> {
        Ok(Algebra {
            inner: self.inner.quotient(&labels).map_err(err)?,
        })
    }

    /// Evaluates a finitary term at `values`.
    fn eval(&self, term: &str, values: Vec<u32>) -> PyResult<u32> {
        let t = parse_fin(term, Some(&self.inner.signature())).map_err(err)?;
        self.inner.eval_finterm(&t, values.as_slice()).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(carrier={}, signature={:?})", self.inner.carrier(), self.inner.signature().to_string())
    }

    fn __eq__(&self, other: &Algebra) -> bool {
        self.inner == other.inner
    }
}

/// Rewrites a q-term to its canonical metaterm.
#[pyfunction]
#[pyo3(signature = (term, budget = 1_000_000))]
fn normalize(term: &str, budget: u64) -> PyResult<String> {
    Ok(normalize_with_budget(&parse_q(term, None).map_err(err)?, budget).map_err(err)?.to_string())
}

/// The metaterm of a finitary term.
#[pyfunction(name = "bullet")]
fn py_bullet(term: &str) -> PyResult<String> {
    Ok(bullet(&parse_fin(term, None).map_err(err)?).to_string())
}

/// The finitary term of a closed metaterm over `sig`, such as `"f/2, c/0"`.
#[pyfunction(name = "circle")]
fn py_circle(term: &str, sig: &str) -> PyResult<String> {
    let sig = Signature::parse(sig).map_err(err)?;
    Ok(circle(&parse_meta(term, Some(&sig)).map_err(err)?, &sig).map_err(err)?.to_string())
}

/// The `arity`-ary term operations as `(table, witness)` pairs.
#[pyfunction(name = "clone")]
#[pyo3(signature = (a, arity, budget = DEFAULT_CLONE_BUDGET))]
fn py_clone(a: &Algebra, arity: usize, budget: usize) -> PyResult<Vec<(Vec<u32>, String)>> {
    let level = clone_gen(&a.inner, arity, budget).map_err(err)?;
    Ok(level.iter().map(|(t, w)| (t.values().to_vec(), w.to_string())).collect())
}

#[pyfunction(name = "check_identity")]
fn py_check_identity(py: Python<'_>, a: &Algebra, left: &str, right: &str) -> PyResult<Py<PyAny>> {
    let sig = a.inner.signature();
    let (l, r) = (parse_fin(left, Some(&sig)).map_err(err)?, parse_fin(right, Some(&sig)).map_err(err)?);
    to_py(py, &check_identity(&a.inner, &l, &r).map_err(err)?)
}

#[pyfunction(name = "check_meta_identity")]
fn py_check_meta_identity(py: Python<'_>, a: &Algebra, left: &str, right: &str) -> PyResult<Py<PyAny>> {
    let sig = a.inner.signature();
    let (l, r) = (parse_meta(left, Some(&sig)).map_err(err)?, parse_meta(right, Some(&sig)).map_err(err)?);
    to_py(py, &check_meta_identity(&a.inner, &l, &r).map_err(err)?)
}

#[pyfunction(name = "check_hyperidentity")]
#[pyo3(signature = (a, left, right, bound, budget = 1_000_000))]
fn py_check_hyper(py: Python<'_>, a: &Algebra, left: &str, right: &str, bound: usize, budget: u64) -> PyResult<Py<PyAny>> {
    let sig = a.inner.signature();
    let (l, r) = (parse_meta(left, Some(&sig)).map_err(err)?, parse_meta(right, Some(&sig)).map_err(err)?);
    to_py(py, &check_hyperidentity_bounded(&a.inner, &l, &r, bound, budget).map_err(err)?)
}

/// Whether the operation of a closed metaterm is central.
#[pyfunction(name = "check_central")]
fn py_check_central(py: Python<'_>, a: &Algebra, term: &str) -> PyResult<Py<PyAny>> {
    let op = term_op(&a.inner, &parse_meta(term, Some(&a.inner.signature())).map_err(err)?).map_err(err)?;
    to_py(py, &check_central(&op).map_err(err)?)
}

/// The free algebra of rank `rank`, with its generators.
#[pyfunction(name = "free_algebra")]
#[pyo3(signature = (a, rank, budget = DEFAULT_CLONE_BUDGET))]
fn py_free(a: &Algebra, rank: usize, budget: usize) -> PyResult<(Option<Algebra>, Vec<u32>)> {
    let free = free_algebra(&a.inner, rank, budget).map_err(err)?;
    let gens = free.generators();
    Ok((free.algebra.map(|inner| Algebra { inner }), gens))
}

#[pyfunction(name = "eps_map")]
#[pyo3(signature = (a, b, arity, budget = DEFAULT_CLONE_BUDGET))]
fn py_eps(py: Python<'_>, a: &Algebra, b: &Algebra, arity: usize, budget: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &eps_map(&a.inner, &b.inner, arity, budget).map_err(err)?)
}

/// Decides whether `b` lies in the variety generated by `a`.
#[pyfunction(name = "hsp_member")]
#[pyo3(signature = (a, b, gens = None, budget = DEFAULT_CLONE_BUDGET))]
fn py_hsp(py: Python<'_>, a: &Algebra, b: &Algebra, gens: Option<Vec<u32>>, budget: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &hsp_member(&a.inner, &b.inner, gens.as_deref(), budget).map_err(err)?)
}

/// Searches for a finite witness that `b` lies in the pseudovariety of `a`.
#[pyfunction(name = "hspfin_member")]
#[pyo3(signature = (a, b, gens, n_bound, budget = DEFAULT_CLONE_BUDGET))]
fn py_hspfin(py: Python<'_>, a: &Algebra, b: &Algebra, gens: Vec<u32>, n_bound: usize, budget: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &hspfin_member(&a.inner, &b.inner, &gens, n_bound, budget).map_err(err)?)
}

/// Pushes the operation of a closed metaterm over `a` along `alpha`.
#[pyfunction(name = "alpha_star")]
fn py_alpha_star(py: Python<'_>, a: &Algebra, b: &Algebra, alpha: Vec<u32>, phi: &str) -> PyResult<Py<PyAny>> {
    let phi = term_op(&a.inner, &parse_meta(phi, Some(&a.inner.signature())).map_err(err)?).map_err(err)?;
    to_py(py, &alpha_star(&a.inner, &b.inner, &alpha, &phi).map_err(err)?)
}

/// Reads the tables of `presentation` as ω-ary operations and checks them
/// against the declared signature.
#[pyfunction(name = "str_check")]
fn py_str_check(py: Python<'_>, presentation: &Algebra, sig: &str) -> PyResult<Py<PyAny>> {
    let sig = Signature::parse(sig).map_err(err)?;
    let p = &presentation.inner;
    to_py(py, &str_check(&sig, p.carrier(), &p.top_extensions()).map_err(err)?)
}

#[pymodule]
fn clonealg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ClonealgError", m.py().get_type::<ClonealgError>())?;
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(py_bullet, m)?)?;
    m.add_function(wrap_pyfunction!(py_circle, m)?)?;
    m.add_function(wrap_pyfunction!(py_clone, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_identity, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_meta_identity, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_hyper, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_central, m)?)?;
    m.add_function(wrap_pyfunction!(py_free, m)?)?;
    m.add_function(wrap_pyfunction!(py_eps, m)?)?;
    m.add_function(wrap_pyfunction!(py_hsp, m)?)?;
    m.add_function(wrap_pyfunction!(py_hspfin, m)?)?;
    m.add_function(wrap_pyfunction!(py_alpha_star, m)?)?;
    m.add_function(wrap_pyfunction!(py_str_check, m)?)?;
    Ok(())
}
