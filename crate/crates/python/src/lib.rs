use polyrat::cdga::Cdga;
use polyrat::minimal::{self, MinimalError};
use polyrat::models::{self, CdgaFile, LiePairFamily, LiePairSpec};
use polyrat::regularity;
use polyrat::toric::{self, CharacteristicMatrix, Fan};
use polyrat::SimplicialComplex;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn minimal_error(e: MinimalError) -> PyErr {
    match e {
        MinimalError::Cdga(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Round-trips a serializable report through Python's json module.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "SimplicialComplex", module = "polyrat_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    /// `facets` use 1-based vertex labels.
    #[new]
    fn new(m: usize, facets: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = SimplicialComplex::new(m, &facets).map_err(value_error)?;
        Ok(PyComplex { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = SimplicialComplex::from_json_str(text).map_err(value_error)?;
        Ok(PyComplex { inner })
    }

    #[staticmethod]
    fn simplex_boundary(m: usize) -> Self {
        PyComplex {
            inner: SimplicialComplex::simplex_boundary(m),
        }
    }

    #[staticmethod]
    fn polygon(m: usize) -> Self {
        PyComplex {
            inner: SimplicialComplex::polygon(m),
        }
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner.facet_lists()
    }

    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        self.inner
            .minimal_nonfaces()
            .into_iter()
            .map(polyrat::simplicial::vertices_of)
            .collect()
    }

    fn h_vector(&self) -> PyResult<Vec<i64>> {
        Ok(self.inner.fh_vector().map_err(value_error)?.h)
    }

    fn hochster_betti(&self, max_degree: usize) -> Vec<usize> {
        self.inner.hochster_betti(max_degree)
    }

    fn __repr__(&self) -> String {
        format!("SimplicialComplex(m={}, facets={:?})", self.inner.m(), self.inner.facet_lists())
    }
}

#[pyclass(name = "Cdga", module = "polyrat_py", frozen)]
struct PyCdga {
    inner: Cdga,
}

#[pymethods]
impl PyCdga {
    /// Parses `{"generators": [...], "relations": [...], "differential": {...}}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: CdgaFile = serde_json::from_str(text).map_err(value_error)?;
        Ok(PyCdga {
            inner: file.build().map_err(value_error)?,
        })
    }

    fn generators(&self) -> Vec<(String, u32)> {
        self.inner
            .algebra()
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect()
    }

    fn relations(&self) -> Vec<String> {
        let alg = self.inner.algebra();
        alg.relations().iter().map(|r| alg.format(r)).collect()
    }

    fn differentials(&self) -> Vec<String> {
        let alg = self.inner.algebra();
        self.inner.generator_differentials().iter().map(|d| alg.format(d)).collect()
    }

    fn hilbert_series(&self, bound: u32) -> Vec<usize> {
        self.inner.algebra().hilbert_series(bound).coefficients
    }

    fn betti_numbers(&self, bound: u32) -> Vec<usize> {
        self.inner.betti_numbers(bound)
    }

    fn euler_characteristic(&self, bound: u32) -> i64 {
        self.inner.euler_characteristic(bound)
    }

    fn __repr__(&self) -> String {
        format!("Cdga(generators={:?})", self.generators())
    }
}

#[pyclass(name = "Fan", module = "polyrat_py", frozen)]
struct PyFan {
    inner: Fan,
}

#[pymethods]
impl PyFan {
    /// `max_cones` use 1-based ray indices.
    #[new]
    fn new(n: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyFan {
            inner: Fan::new(n, rays, max_cones).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyFan {
            inner: Fan::from_json_str(text).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn projective_space(n: usize) -> Self {
        PyFan {
            inner: Fan::projective_space(n),
        }
    }

    #[staticmethod]
    fn hirzebruch(a: i64) -> Self {
        PyFan {
            inner: Fan::hirzebruch(a),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<i64>> {
        self.inner.rays.clone()
    }

    fn complex(&self) -> PyResult<PyComplex> {
        Ok(PyComplex {
            inner: toric::fan_to_complex(&self.inner).map_err(value_error)?,
        })
    }

    fn characteristic_matrix(&self) -> Vec<Vec<i64>> {
        toric::fan_to_characteristic(&self.inner).rows().to_vec()
    }
}

#[pyfunction]
fn moment_angle_model(k: &PyComplex) -> PyCdga {
    PyCdga {
        inner: models::moment_angle_model(&k.inner),
    }
}

#[pyfunction]
fn dj_model(k: &PyComplex) -> PyCdga {
    PyCdga {
        inner: models::dj_model(&k.inner),
    }
}

/// `rows` are the linear forms `d x_i`, one entry per vertex.
#[pyfunction]
fn partial_quotient_model(k: &PyComplex, rows: Vec<Vec<i64>>) -> PyResult<PyCdga> {
    let model = toric::partial_quotient_model(&k.inner, &CharacteristicMatrix::new(rows)).map_err(value_error)?;
    Ok(PyCdga { inner: model.cdga })
}

/// Family `"unt"` (needs `n`) or `"susuk"` (needs `n` and `k`).
#[pyfunction]
#[pyo3(signature = (family, complex, n, k=None, base=false))]
fn lie_pair_model(family: &str, complex: &PyComplex, n: usize, k: Option<usize>, base: bool) -> PyResult<PyCdga> {
    let spec = lie_spec(family, complex, n, k)?;
    let inner = if base {
        models::lie_pair_base_model(&spec)
    } else {
        models::lie_pair_model(&spec)
    }
    .map_err(value_error)?;
    Ok(PyCdga { inner })
}

fn lie_spec(family: &str, complex: &PyComplex, n: usize, k: Option<usize>) -> PyResult<LiePairSpec> {
    let family = match family {
        "unt" => LiePairFamily::UnT { n },
        "susuk" => LiePairFamily::SUnSUk {
            n,
            k: k.ok_or_else(|| value_error("the susuk family needs k"))?,
        },
        other => return Err(value_error(format!("unknown family {other:?}"))),
    };
    LiePairSpec::new(family, complex.inner.clone()).map_err(value_error)
}

/// Betti numbers, relations and regularity report of a smooth fan's ring.
#[pyfunction]
fn toric_cohomology<'py>(py: Python<'py>, fan: &PyFan) -> PyResult<Bound<'py, PyAny>> {
    let result = toric::toric_cohomology_ring(&fan.inner).map_err(|e| match e {
        toric::ToricError::NotRegular { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => value_error(e),
    })?;
    let ring = &result.ring;
    let relations: Vec<String> = ring.relations().iter().map(|r| ring.format(r)).collect();
    to_py(
        py,
        &serde_json::json!({
            "betti": result.betti.betti,
            "relations": relations,
            "regularity": result.regularity,
        }),
    )
}

#[pyfunction]
fn is_regular_sequence<'py>(
    py: Python<'py>,
    k: &PyComplex,
    rows: Vec<Vec<i64>>,
    bound: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let sr = models::stanley_reisner_algebra(&k.inner);
    let forms = CharacteristicMatrix::new(rows).forms(0);
    let report = regularity::is_regular_sequence(&sr, &forms, bound).map_err(value_error)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (k, rows, n, bound, reference=None))]
fn classify_partial_quotient<'py>(
    py: Python<'py>,
    k: &PyComplex,
    rows: Vec<Vec<i64>>,
    n: usize,
    bound: u32,
    reference: Option<Vec<Vec<i64>>>,
) -> PyResult<Bound<'py, PyAny>> {
    let reference = reference.map(CharacteristicMatrix::new);
    let verdict = regularity::classify_partial_quotient(
        &k.inner,
        &CharacteristicMatrix::new(rows),
        n,
        reference.as_ref(),
        bound,
    )
    .map_err(value_error)?;
    to_py(py, &verdict)
}

/// `{degree: rank of π_degree ⊗ Q}` for a simply connected CDGA.
#[pyfunction]
fn homotopy_ranks(model: &PyCdga, bound: u32) -> PyResult<std::collections::BTreeMap<u32, usize>> {
    Ok(minimal::homotopy_ranks(&model.inner, bound).map_err(minimal_error)?.pi_ranks)
}

/// Generators of the minimal model as `(name, degree, differential)`.
#[pyfunction]
fn minimal_model(model: &PyCdga, bound: u32) -> PyResult<Vec<(String, u32, String)>> {
    let mm = minimal::minimal_model(&model.inner, bound).map_err(minimal_error)?;
    let alg = mm.model.algebra();
    Ok(alg
        .generators()
        .iter()
        .zip(mm.model.generator_differentials())
        .map(|(g, d)| (g.name.clone(), g.degree, alg.format(d)))
        .collect())
}

#[pyfunction]
fn check_ses<'py>(py: Python<'py>, complex: &PyComplex, n: usize, bound: u32) -> PyResult<Bound<'py, PyAny>> {
    let spec = lie_spec("unt", complex, n, None)?;
    let report = minimal::check_ses_thm12(&spec, bound).map_err(minimal_error)?;
    to_py(py, &report)
}

#[pymodule]
fn polyrat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyCdga>()?;
    m.add_class::<PyFan>()?;
    m.add_function(wrap_pyfunction!(moment_angle_model, m)?)?;
    m.add_function(wrap_pyfunction!(dj_model, m)?)?;
    m.add_function(wrap_pyfunction!(partial_quotient_model, m)?)?;
    m.add_function(wrap_pyfunction!(lie_pair_model, m)?)?;
    m.add_function(wrap_pyfunction!(toric_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(is_regular_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(classify_partial_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(homotopy_ranks, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_model, m)?)?;
    m.add_function(wrap_pyfunction!(check_ses, m)?)?;
    Ok(())
}
