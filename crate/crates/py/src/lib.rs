use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use l2res_core::error::Error;
use l2res_core::homology::{reduced_homology_ranks, ComputeOptions, Field};
use l2res_core::ideal::MonomialIdeal;
use l2res_core::io;
use l2res_core::labeled::{self, BettiTable};
use l2res_core::lsquared::{self, DeletionRecord, PairVertex, DEFAULT_ENUM_Q_CAP};
use l2res_core::parse::parse_ideal;
use l2res_core::simplicial::{self, DEFAULT_FACE_CAP};
use l2res_core::sweep::{run_sweep, SweepConfig};

create_exception!(l2res_py, ResourceLimitError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    if e.is_resource_limit() {
        ResourceLimitError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn options(field: &str, face_cap: Option<usize>) -> PyResult<ComputeOptions> {
    Ok(ComputeOptions {
        field: field.parse::<Field>().map_err(to_py)?,
        face_cap: face_cap.unwrap_or(DEFAULT_FACE_CAP),
    })
}

/// A monomial ideal, stored by its minimal generators.
#[pyclass(name = "Ideal", module = "l2res_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIdeal {
    inner: MonomialIdeal,
}

#[pymethods]
impl PyIdeal {
    #[new]
    #[pyo3(signature = (text, vars = None))]
    fn new(text: &str, vars: Option<Vec<String>>) -> PyResult<Self> {
        let parsed = parse_ideal(text, vars.as_deref()).map_err(to_py)?;
        Ok(PyIdeal {
            inner: parsed.ideal,
        })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars().names().to_vec()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generator_strings()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }

    fn is_squarefree(&self) -> bool {
        self.inner.is_squarefree()
    }

    fn power(&self, r: u32) -> PyResult<Self> {
        Ok(PyIdeal {
            inner: self.inner.power(r).map_err(to_py)?,
        })
    }

    fn lcm_lattice(&self) -> Vec<String> {
        self.inner
            .lcm_lattice()
            .iter()
            .map(|m| self.inner.format_monomial(m))
            .collect()
    }

    fn to_json(&self) -> PyResult<String> {
        io::write_ideal(&self.inner).map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyIdeal {
            inner: io::read_ideal(text).map_err(to_py)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.q()
    }

    fn __repr__(&self) -> String {
        format!("Ideal({:?})", self.inner.generator_strings().join(","))
    }
}

/// A simplicial complex given by its facets.
#[pyclass(
    name = "SimplicialComplex",
    module = "l2res_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyComplex {
    inner: simplicial::SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(facets: Vec<Vec<u32>>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: simplicial::SimplicialComplex::from_vertex_lists(&facets).map_err(to_py)?,
        })
    }

    #[getter]
    fn vertices(&self) -> Vec<u32> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<u32>> {
        self.inner.facets().iter().map(|f| f.to_vec()).collect()
    }

    #[pyo3(signature = (face_cap = None))]
    fn f_vector(&self, face_cap: Option<usize>) -> PyResult<Vec<u64>> {
        Ok(self
            .inner
            .f_vector(face_cap.unwrap_or(DEFAULT_FACE_CAP))
            .map_err(to_py)?
            .counts)
    }

    /// Ranks of reduced homology in dimensions -1, 0, 1, ...
    #[pyo3(signature = (field = "rational", face_cap = None))]
    fn reduced_homology(&self, field: &str, face_cap: Option<usize>) -> PyResult<Vec<usize>> {
        let opts = options(field, face_cap)?;
        Ok(reduced_homology_ranks(&self.inner, &opts)
            .map_err(to_py)?
            .ranks()
            .to_vec())
    }

    fn induced_subcomplex(&self, vertices: Vec<u32>) -> PyResult<Self> {
        let w = l2res_core::face::Face::try_from_vertices(vertices).map_err(to_py)?;
        Ok(PyComplex {
            inner: self.inner.induced_subcomplex(w),
        })
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_quasi_forest(&self) -> bool {
        self.inner.is_quasi_forest()
    }

    /// Facets (as vertex lists) in a leaf order, or None.
    fn quasi_forest_order(&self) -> Option<Vec<Vec<u32>>> {
        let order = self.inner.quasi_forest_order()?;
        Some(
            order
                .order
                .iter()
                .map(|&i| self.inner.facets()[i].to_vec())
                .collect(),
        )
    }

    fn to_json(&self) -> PyResult<String> {
        io::write_complex(&self.inner).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("SimplicialComplex({:?})", self.facets())
    }
}

/// A simplicial complex with a monomial label on each vertex.
#[pyclass(
    name = "LabeledComplex",
    module = "l2res_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyLabeled {
    inner: labeled::LabeledComplex,
}

#[pymethods]
impl PyLabeled {
    /// `labels` maps vertex ids to monomials written over the ideal's variables.
    #[new]
    fn new(
        facets: Vec<Vec<u32>>,
        labels: BTreeMap<u32, String>,
        ideal: &PyIdeal,
    ) -> PyResult<Self> {
        let json = io::ComplexJson {
            vertices: Vec::new(),
            facets,
            labels: Some(labels),
            deletion: None,
        };
        Ok(PyLabeled {
            inner: io::labeled_from_json(&json, ideal.inner.vars()).map_err(to_py)?,
        })
    }

    #[getter]
    fn complex(&self) -> PyComplex {
        PyComplex {
            inner: self.inner.complex().clone(),
        }
    }

    #[getter]
    fn labels(&self) -> BTreeMap<u32, String> {
        self.inner
            .labels()
            .iter()
            .map(|(&v, m)| (v, self.inner.vars().format(m)))
            .collect()
    }

    fn to_json(&self) -> PyResult<String> {
        io::write_labeled(&self.inner, None).map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str, ideal: &PyIdeal) -> PyResult<Self> {
        let json = io::read_complex(text).map_err(to_py)?;
        Ok(PyLabeled {
            inner: io::labeled_from_json(&json, ideal.inner.vars()).map_err(to_py)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "LabeledComplex({} vertices, {} facets)",
            self.inner.complex().num_vertices(),
            self.inner.complex().facets().len()
        )
    }
}

fn record_dict(py: Python<'_>, record: &DeletionRecord) -> PyResult<Py<PyAny>> {
    let d = pyo3::types::PyDict::new(py);
    let deleted: Vec<(usize, usize)> = record.deleted.iter().map(|p| (p.i(), p.j())).collect();
    d.set_item("deleted", deleted)?;
    d.set_item("s", record.s)?;
    d.set_item("t", record.t.clone())?;
    Ok(d.into_any().unbind())
}

fn record_from_pairs(q: usize, deleted: Vec<(usize, usize)>) -> PyResult<DeletionRecord> {
    if let Some((i, j)) = deleted
        .iter()
        .find(|&&(i, j)| i == 0 || j == 0 || i > q || j > q || i == j)
    {
        return Err(PyValueError::new_err(format!(
            "pair ({i}, {j}) is not an off-diagonal pair for q = {q}"
        )));
    }
    Ok(DeletionRecord::new(
        q,
        deleted
            .into_iter()
            .map(|(i, j)| PairVertex::new(i, j))
            .collect(),
    ))
}

#[pyfunction]
fn build_l2q(q: usize) -> PyResult<PyComplex> {
    Ok(PyComplex {
        inner: lsquared::build_l2q(q).map_err(to_py)?,
    })
}

/// `(complex, record)` where record is `{"deleted": [(i, j)], "s": s, "t": [...]}`.
#[pyfunction]
fn build_l2i(py: Python<'_>, ideal: &PyIdeal) -> PyResult<(PyLabeled, Py<PyAny>)> {
    let (lc, record) = lsquared::build_l2i(&ideal.inner).map_err(to_py)?;
    Ok((PyLabeled { inner: lc }, record_dict(py, &record)?))
}

#[pyfunction]
#[pyo3(signature = (ideal, cap = labeled::DEFAULT_TAYLOR_CAP))]
fn taylor_complex(ideal: &PyIdeal, cap: usize) -> PyResult<PyLabeled> {
    Ok(PyLabeled {
        inner: labeled::taylor_complex_capped(&ideal.inner, cap).map_err(to_py)?,
    })
}

/// `(supported, witness, degree)`; `criterion` is "homological" or "connectivity".
#[pyfunction]
#[pyo3(signature = (complex, ideal, criterion = "homological", field = "rational"))]
fn supports_resolution(
    complex: &PyLabeled,
    ideal: &PyIdeal,
    criterion: &str,
    field: &str,
) -> PyResult<(bool, Option<String>, Option<usize>)> {
    let check = match criterion {
        "homological" => labeled::supports_resolution_homological(
            &complex.inner,
            &ideal.inner,
            &options(field, None)?,
        ),
        "connectivity" => labeled::supports_resolution_quasitree(&complex.inner, &ideal.inner),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown criterion {other:?}"
            )))
        }
    }
    .map_err(to_py)?;
    let witness = check
        .witness
        .as_ref()
        .map(|m| ideal.inner.format_monomial(m));
    Ok((check.supported, witness, check.witness_degree))
}

fn betti_dict(py: Python<'_>, table: &BettiTable, ideal: &MonomialIdeal) -> PyResult<Py<PyAny>> {
    let d = pyo3::types::PyDict::new(py);
    d.set_item("total", table.totals())?;
    if let Some(graded) = &table.graded {
        let rows: Vec<(usize, String, u64)> = graded
            .iter()
            .map(|((deg, m), &r)| (*deg, ideal.format_monomial(m), r))
            .collect();
        d.set_item("graded", rows)?;
    }
    Ok(d.into_any().unbind())
}

/// `{"total": [β_0, ...], "graded": [(d, m, rank), ...]}`.
#[pyfunction]
#[pyo3(signature = (complex, ideal, field = "rational", graded = false, face_cap = None))]
fn betti_numbers(
    py: Python<'_>,
    complex: &PyLabeled,
    ideal: &PyIdeal,
    field: &str,
    graded: bool,
    face_cap: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let opts = options(field, face_cap)?;
    let table = py
        .detach(|| labeled::betti_numbers(&complex.inner, &ideal.inner, &opts))
        .map_err(to_py)?;
    let table = if graded {
        table
    } else {
        table.without_graded()
    };
    betti_dict(py, &table, &ideal.inner)
}

#[pyfunction]
fn bound_a(q: usize, d: usize) -> u128 {
    lsquared::bound_a(q, d)
}

#[pyfunction]
fn bound_b(q: usize, deleted: Vec<(usize, usize)>, d: usize) -> PyResult<u128> {
    Ok(lsquared::bound_b(&record_from_pairs(q, deleted)?, d))
}

#[pyfunction]
fn taylor_bound(n: usize, d: usize) -> u128 {
    lsquared::taylor_bound(n, d)
}

/// One dict per degree with the Taylor, (a) and (b) bounds and, for small
/// ideals, the Betti number of the square.
#[pyfunction]
#[pyo3(signature = (ideal, field = "rational", enum_q_cap = DEFAULT_ENUM_Q_CAP))]
fn bound_table(
    py: Python<'_>,
    ideal: &PyIdeal,
    field: &str,
    enum_q_cap: usize,
) -> PyResult<Vec<Py<PyAny>>> {
    let opts = options(field, None)?;
    let table = lsquared::bound_table(&ideal.inner, &opts, enum_q_cap).map_err(to_py)?;
    table
        .rows
        .iter()
        .map(|r| {
            let d = pyo3::types::PyDict::new(py);
            d.set_item("d", r.d)?;
            d.set_item("taylor_largest", r.taylor_largest)?;
            d.set_item("taylor_actual", r.taylor_actual)?;
            d.set_item("bound_a", r.bound_a)?;
            d.set_item("bound_b", r.bound_b)?;
            d.set_item("betti", r.betti)?;
            Ok(d.into_any().unbind())
        })
        .collect()
}

/// Runs the invariant sweep; returns `(passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (seed = 1, count = 100, max_n = 6, max_q = 4, taylor = false))]
fn verify(
    py: Python<'_>,
    seed: u64,
    count: usize,
    max_n: usize,
    max_q: usize,
    taylor: bool,
) -> PyResult<(bool, String)> {
    if !(1..=l2res_core::sweep::MAX_SWEEP_VARS).contains(&max_n)
        || !(1..=lsquared::MAX_Q).contains(&max_q)
    {
        return Err(PyValueError::new_err("max_n or max_q out of range"));
    }
    let config = SweepConfig {
        seed,
        count,
        max_n,
        max_q,
        taylor,
        ..SweepConfig::default()
    };
    let report = py.detach(|| run_sweep(&config));
    Ok((report.passed(), report.to_text()))
}

#[pymodule]
fn l2res_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyLabeled>()?;
    m.add(
        "ResourceLimitError",
        m.py().get_type::<ResourceLimitError>(),
    )?;
    m.add_function(wrap_pyfunction!(build_l2q, m)?)?;
    m.add_function(wrap_pyfunction!(build_l2i, m)?)?;
    m.add_function(wrap_pyfunction!(taylor_complex, m)?)?;
    m.add_function(wrap_pyfunction!(supports_resolution, m)?)?;
    m.add_function(wrap_pyfunction!(betti_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(bound_a, m)?)?;
    m.add_function(wrap_pyfunction!(bound_b, m)?)?;
    m.add_function(wrap_pyfunction!(taylor_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bound_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
