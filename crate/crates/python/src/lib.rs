//! Python bindings for the `qhomfly` engine.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qhomfly::corpus::{self, Check};
use qhomfly::holonomy::{self, GuessOptions, SequenceWindow};
use qhomfly::skein::{natural_start, specialize_two_component};
use qhomfly::twobridge::enumerate_corpus;
use qhomfly::{ContinuedFraction, Error, Normalize, Start, Substitution, TwoBridgeLink};

create_exception!(qhomfly_py, UnclosableFamilyError, PyValueError);
create_exception!(qhomfly_py, BudgetError, PyRuntimeError);
create_exception!(qhomfly_py, WindowTooShortError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnclosableFamily { .. } => UnclosableFamilyError::new_err(e.to_string()),
        Error::Budget(_) => BudgetError::new_err(e.to_string()),
        Error::WindowTooShort { .. } => WindowTooShortError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_start(start: Option<&str>, link: &TwoBridgeLink) -> PyResult<Start> {
    match start {
        None | Some("auto") => Ok(natural_start(link)),
        Some("up") => Ok(Start::Up),
        Some("op") => Ok(Start::Op),
        Some(s) => Err(PyValueError::new_err(format!("start must be 'auto', 'up' or 'op', not {s:?}"))),
    }
}

fn parse_normalize(normalize: &str) -> PyResult<Normalize> {
    match normalize {
        "canonical" => Ok(Normalize::Canonical),
        "raw" => Ok(Normalize::Raw),
        s => Err(PyValueError::new_err(format!("normalize must be 'canonical' or 'raw', not {s:?}"))),
    }
}

/// A value `N(a, q, s) / prod_l [l]^m` with `[l] = q^l - q^-l`.
#[pyclass(name = "QScalar", module = "qhomfly_py", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyQScalar {
    inner: qhomfly::QScalar,
}

impl From<qhomfly::QScalar> for PyQScalar {
    fn from(inner: qhomfly::QScalar) -> Self {
        PyQScalar { inner }
    }
}

#[pymethods]
impl PyQScalar {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        qhomfly::QScalar::from_json(text).map(Self::from).map_err(to_py)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Numerator terms as `(a, q, s, coefficient)`, sorted by `(a, s, q)`.
    fn terms(&self) -> Vec<(i32, i32, i32, num_bigint::BigInt)> {
        self.inner.num().terms().iter().map(|(e, c)| (e.a, e.q, e.s, c.clone())).collect()
    }

    /// Denominator as `(l, multiplicity)` pairs.
    fn denominator(&self) -> Vec<(u32, u32)> {
        self.inner.den().iter().map(|(&l, &m)| (l, m)).collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn involves_s(&self) -> bool {
        self.inner.involves_s()
    }

    fn canonicalize(&self) -> PyResult<Self> {
        self.inner.canonicalize().map(Self::from).map_err(to_py)
    }

    fn mirrored(&self) -> Self {
        self.inner.mirrored().into()
    }

    fn s_to_one(&self) -> PyResult<Self> {
        self.inner.substitute(&Substitution::s_to_one()).map(Self::from).map_err(to_py)
    }

    fn a_to_q_pow(&self, m: i32) -> PyResult<Self> {
        self.inner.substitute(&Substitution::a_to_q_pow(m)).map(Self::from).map_err(to_py)
    }

    fn __add__(&self, other: &Self) -> Self {
        self.inner.add_ref(&other.inner).into()
    }

    fn __sub__(&self, other: &Self) -> Self {
        self.inner.sub_ref(&other.inner).into()
    }

    fn __mul__(&self, other: &Self) -> Self {
        self.inner.mul_ref(&other.inner).into()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QScalar({})", self.inner)
    }
}

/// A 2-bridge knot or link given by a continued fraction.
#[pyclass(name = "Link", module = "qhomfly_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyLink {
    inner: TwoBridgeLink,
}

#[pymethods]
impl PyLink {
    #[new]
    fn new(cf: Vec<u32>) -> PyResult<Self> {
        let cf = ContinuedFraction::new(cf).map_err(to_py)?;
        TwoBridgeLink::new(cf).map(|inner| PyLink { inner }).map_err(to_py)
    }

    #[staticmethod]
    fn from_fraction(p: u64, q: u64) -> PyResult<Self> {
        TwoBridgeLink::from_fraction(p, q).map(|inner| PyLink { inner }).map_err(to_py)
    }

    #[getter]
    fn cf(&self) -> Vec<u32> {
        self.inner.cf.entries().to_vec()
    }

    #[getter]
    fn fraction(&self) -> (u64, u64) {
        (self.inner.p, self.inner.q)
    }

    #[getter]
    fn crossings(&self) -> u32 {
        self.inner.crossings
    }

    #[getter]
    fn components(&self) -> u8 {
        self.inner.components
    }

    fn is_knot(&self) -> bool {
        self.inner.is_knot()
    }

    fn natural_start(&self) -> &'static str {
        natural_start(&self.inner).name()
    }

    /// The reduced invariant at color `j`; `s = 1` for knots.
    #[pyo3(signature = (j, start=None, normalize="canonical"))]
    fn eval(&self, py: Python<'_>, j: u32, start: Option<&str>, normalize: &str) -> PyResult<PyQScalar> {
        let start = parse_start(start, &self.inner)?;
        let normalize = parse_normalize(normalize)?;
        let link = self.inner.clone();
        py.detach(move || qhomfly::eval_reduced(&link, j, start, normalize))
            .map(PyQScalar::from)
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Link({}, fraction={})", self.inner.cf, self.inner.fraction_string())
    }
}

/// A recurrence `sum_l (sum_m c_{l,m} M^m) L^l` in the color.
#[pyclass(name = "RecurrenceOperator", module = "qhomfly_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyOperator {
    inner: holonomy::RecurrenceOperator,
}

#[pymethods]
impl PyOperator {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn mdeg(&self) -> usize {
        self.inner.mdeg()
    }

    fn is_a_free(&self) -> bool {
        self.inner.is_a_free()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        holonomy::RecurrenceOperator::from_json(text).map(|inner| PyOperator { inner }).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RecurrenceOperator({})", self.inner)
    }
}

/// `P~_j` at `s = q^{i-j}` times the `i`-colored unknot.
#[pyfunction]
fn unreduced_two_color(value: &PyQScalar, i: u32, j: u32) -> PyResult<PyQScalar> {
    specialize_two_component(&value.inner, i, j).map(PyQScalar::from).map_err(to_py)
}

#[pyfunction]
fn corpus_links(max_crossings: u32) -> Vec<PyLink> {
    enumerate_corpus(max_crossings).into_iter().map(|inner| PyLink { inner }).collect()
}

type CheckOutcome = (usize, Vec<(String, u32, String)>);

/// Runs one named cross-check over the corpus. Returns `(cases, failures)`
/// with failures as `(cf, color, detail)`.
#[pyfunction]
fn run_check(
    py: Python<'_>,
    check: &str,
    max_crossings: u32,
) -> PyResult<CheckOutcome> {
    let check: Check = check.parse().map_err(to_py)?;
    let report = py.detach(|| corpus::run_check(check, &enumerate_corpus(max_crossings)));
    let failures = report.failures.into_iter().map(|f| (f.cf, f.color, f.detail)).collect();
    Ok((report.cases, failures))
}

/// Fits a recurrence on `values[0..len - validate]` (colors from `start`)
/// and checks it on the rest. Returns `None` or `(operator, passed)`.
#[pyfunction]
#[pyo3(signature = (values, max_order, max_mdeg, validate=0, a_free=false, start=0))]
fn guess_recurrence(
    py: Python<'_>,
    values: Vec<PyQScalar>,
    max_order: usize,
    max_mdeg: usize,
    validate: usize,
    a_free: bool,
    start: u32,
) -> PyResult<Option<(PyOperator, bool)>> {
    let window = SequenceWindow::new(start, values.into_iter().map(|v| v.inner).collect()).map_err(to_py)?;
    let opts = GuessOptions { a_free, ..Default::default() };
    let found = py.detach(|| {
        if validate == 0 {
            holonomy::guess_recurrence(&window, max_order, max_mdeg, opts).map(|o| o.map(|op| (op, true)))
        } else {
            holonomy::fit_and_validate(&window, max_order, max_mdeg, validate, opts)
                .map(|o| o.map(|(op, report)| (op, report.passed)))
        }
    });
    Ok(found.map_err(to_py)?.map(|(inner, passed)| (PyOperator { inner }, passed)))
}

#[pymodule]
pub fn qhomfly_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ENGINE_VERSION", qhomfly::ENGINE_VERSION)?;
    m.add_class::<PyQScalar>()?;
    m.add_class::<PyLink>()?;
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(unreduced_two_color, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_links, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(guess_recurrence, m)?)?;
    let py = m.py();
    m.add("UnclosableFamilyError", py.get_type::<UnclosableFamilyError>())?;
    m.add("BudgetError", py.get_type::<BudgetError>())?;
    m.add("WindowTooShortError", py.get_type::<WindowTooShortError>())?;
    Ok(())
}
