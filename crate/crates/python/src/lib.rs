//! Python bindings for `ale_moduli`.
//!
//! Structured results (resolutions, tables, curvature reports) cross the
//! boundary as plain Python dicts and lists built from their JSON form.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use ale_moduli::cli;
use ale_moduli::group_catalog::{self, GroupKind, GroupSpec, ValidatedGroup};
use ale_moduli::hirzebruch_jung::{self, HjError};
use ale_moduli::kahler::{self, KahlerError, PotentialSpec, SamplePlan, StencilOrder};
use ale_moduli::moduli::{self, ModuliDimensions, ModuliError};

create_exception!(ale_moduli_py, VerificationError, PyException);

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn hj_err(e: HjError) -> PyErr {
    value_error(e)
}

fn moduli_err(e: ModuliError) -> PyErr {
    match e {
        ModuliError::FormulaDisagreement { .. } => VerificationError::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn kahler_err(e: KahlerError) -> PyErr {
    match e {
        KahlerError::DegenerateMetric { .. } => VerificationError::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Hirzebruch-Jung expansion of `p/q` and of the dual fraction `p/(p-q)`.
#[pyclass(name = "HjExpansion", frozen)]
struct PyHjExpansion(hirzebruch_jung::HjExpansion);

#[pymethods]
impl PyHjExpansion {
    #[new]
    fn new(p: u64, q: u64) -> PyResult<Self> {
        hirzebruch_jung::hj_expand(p, q).map(Self).map_err(hj_err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p
    }

    #[getter]
    fn q(&self) -> u64 {
        self.0.q
    }

    #[getter]
    fn coeffs(&self) -> Vec<u64> {
        self.0.coeffs.clone()
    }

    #[getter]
    fn dual_coeffs(&self) -> Vec<u64> {
        self.0.dual_coeffs.clone()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn embedding_dimension(&self) -> i64 {
        self.0.embedding_dimension()
    }

    /// True when all three Riemenschneider identities hold.
    fn riemenschneider(&self) -> bool {
        hirzebruch_jung::riemenschneider(&self.0).all()
    }

    fn __repr__(&self) -> String {
        format!("HjExpansion(p={}, q={}, coeffs={:?})", self.0.p, self.0.q, self.0.coeffs)
    }
}

#[pyfunction]
fn hj_expand(p: u64, q: u64) -> PyResult<PyHjExpansion> {
    PyHjExpansion::new(p, q)
}

/// `[e1, ..., ek]` to `(numerator, denominator)` in lowest terms.
#[pyfunction]
fn evaluate_fraction(coeffs: Vec<u64>) -> PyResult<(i64, i64)> {
    let r = hirzebruch_jung::evaluate_fraction(&coeffs).map_err(hj_err)?;
    Ok((*r.numer(), *r.denom()))
}

/// Full resolution report for `1/p(1,q)`: lattice chain, monomials, charts
/// and identity verdicts.
#[pyfunction]
fn resolve(py: Python<'_>, p: u64, q: u64) -> PyResult<Bound<'_, PyAny>> {
    let report = cli::resolve_report(p, q).map_err(hj_err)?;
    to_py(py, &report)
}

/// A validated finite subgroup of U(2), parsed from strings such as
/// `cyclic:5,2`, `dprod:l=3,n=5` or `iprod:l=7`.
#[pyclass(name = "Group", frozen)]
struct PyGroup(ValidatedGroup);

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let spec: GroupSpec = spec.parse().map_err(value_error)?;
        group_catalog::validate(spec).map(Self).map_err(value_error)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0.spec().kind() {
            GroupKind::Cyclic => "cyclic",
            GroupKind::DihedralProduct => "dprod",
            GroupKind::TetrahedralProduct => "tprod",
            GroupKind::OctahedralProduct => "oprod",
            GroupKind::IcosahedralProduct => "iprod",
            GroupKind::DihedralIndex2 => "d2",
            GroupKind::TetrahedralIndex3 => "t3",
        }
    }

    #[getter]
    fn order(&self) -> u64 {
        group_catalog::group_order(&self.0)
    }

    fn is_su2(&self) -> bool {
        group_catalog::is_su2(&self.0)
    }

    fn moduli(&self) -> PyResult<PyModuli> {
        moduli::moduli_report(&self.0).map(PyModuli).map_err(moduli_err)
    }

    fn __str__(&self) -> String {
        self.0.spec().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.0.spec())
    }
}

/// `j, k, d, m` and the formula branch that produced `m`.
#[pyclass(name = "ModuliDimensions", frozen)]
struct PyModuli(ModuliDimensions);

#[pymethods]
impl PyModuli {
    #[getter]
    fn group(&self) -> String {
        self.0.group.clone()
    }

    #[getter]
    fn j(&self) -> Option<u64> {
        self.0.j
    }

    #[getter]
    fn k(&self) -> Option<u64> {
        self.0.k
    }

    #[getter]
    fn d(&self) -> Option<u64> {
        self.0.d
    }

    #[getter]
    fn m(&self) -> i64 {
        self.0.m
    }

    #[getter]
    fn case_tag(&self) -> &'static str {
        self.0.case_tag.as_str()
    }

    #[getter]
    fn formula_note(&self) -> String {
        self.0.formula_note.clone()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn __repr__(&self) -> String {
        format!("ModuliDimensions(group='{}', m={})", self.0.group, self.0.m)
    }
}

#[pyfunction]
fn moduli_report(group: &str) -> PyResult<PyModuli> {
    PyGroup::new(group)?.moduli()
}

#[pyfunction]
#[pyo3(signature = (pmax = 50))]
fn table1(py: Python<'_>, pmax: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &moduli::table1(pmax).map_err(moduli_err)?)
}

#[pyfunction]
#[pyo3(signature = (lmax = 100))]
fn table3(py: Python<'_>, lmax: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &moduli::table3(lmax).map_err(moduli_err)?)
}

#[pyfunction]
fn riemenschneider_sweep(py: Python<'_>, pmax: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &cli::riemenschneider_sweep(pmax))
}

fn potential(name: &str, a: f64, m: f64) -> PyResult<PotentialSpec> {
    if !(a > 0.0 && m > 0.0) {
        return Err(value_error("potential parameters must be positive"));
    }
    match name {
        "flat" => Ok(PotentialSpec::Flat),
        "eguchi-hanson" => Ok(PotentialSpec::EguchiHanson { a }),
        "burns" => Ok(PotentialSpec::Burns { m }),
        other => Err(value_error(format!(
            "unknown potential {other:?}, expected flat, eguchi-hanson or burns"
        ))),
    }
}

fn stencil(order: u8) -> PyResult<StencilOrder> {
    StencilOrder::try_from(order).map_err(value_error)
}

/// Scalar curvature of a built-in potential at one point `(x1, y1, x2, y2)`.
#[pyfunction]
#[pyo3(signature = (name, point, a = 1.0, m = 1.0, h = 1e-2, order = 4))]
fn scalar_curvature(name: &str, point: [f64; 4], a: f64, m: f64, h: f64, order: u8) -> PyResult<f64> {
    let spec = potential(name, a, m)?;
    kahler::scalar_curvature(&spec, &point, h, stencil(order)?).map_err(kahler_err)
}

/// Samples `samples` points on shells between `rmin` and `rmax` and checks
/// `|S| <= tolerance` everywhere.
#[pyfunction]
#[pyo3(signature = (
    name, rmin, rmax, samples, a = 1.0, m = 1.0, h0 = kahler::DEFAULT_H0, order = 4,
    tolerance = kahler::SCALAR_FLAT_TOLERANCE, deltas = Vec::new()
))]
#[allow(clippy::too_many_arguments)]
fn verify_metric<'py>(
    py: Python<'py>,
    name: &str,
    rmin: f64,
    rmax: f64,
    samples: usize,
    a: f64,
    m: f64,
    h0: f64,
    order: u8,
    tolerance: f64,
    deltas: Vec<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = potential(name, a, m)?;
    let plan = SamplePlan::shells(rmin, rmax, samples, h0, stencil(order)?).map_err(kahler_err)?;
    let mut report = py
        .detach(|| kahler::verify_metric(&spec, &plan, tolerance))
        .map_err(kahler_err)?;
    if !deltas.is_empty() {
        report.attach_weighted_norms(&spec, &plan, &deltas).map_err(kahler_err)?;
    }
    to_py(py, &report.rounded(cli::FLOAT_DIGITS))
}

/// Decay order of `|g - I|` over the given increasing radii.
#[pyfunction]
#[pyo3(signature = (name, radii, a = 1.0, m = 1.0, h0 = kahler::DEFAULT_H0, order = 4))]
fn decay_order<'py>(
    py: Python<'py>,
    name: &str,
    radii: Vec<f64>,
    a: f64,
    m: f64,
    h0: f64,
    order: u8,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = potential(name, a, m)?;
    let order = stencil(order)?;
    let estimate = py
        .detach(|| kahler::decay_order(&spec, &radii, h0, order))
        .map_err(kahler_err)?;
    to_py(py, &estimate.rounded(cli::FLOAT_DIGITS))
}

#[pymodule]
fn ale_moduli_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    m.add_class::<PyHjExpansion>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyModuli>()?;
    m.add_function(wrap_pyfunction!(hj_expand, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(resolve, m)?)?;
    m.add_function(wrap_pyfunction!(moduli_report, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(table3, m)?)?;
    m.add_function(wrap_pyfunction!(riemenschneider_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_curvature, m)?)?;
    m.add_function(wrap_pyfunction!(verify_metric, m)?)?;
    m.add_function(wrap_pyfunction!(decay_order, m)?)?;
    Ok(())
}
