//! Python bindings: exact scalars, u_q sl(2), framed links and the lens-space
//! invariants.

use lensinv_core::error::Error;
use lensinv_core::hennings::{
    self, kr_evaluate_budget, validate_and_walk, z_henn_lens_closed, z_henn_with_data,
};
use lensinv_core::hopf::{
    self, drinfeld_double, factorizability_rank, ribbon_criterion, structure_from_json,
    structure_to_json, verify_axioms_with, AxiomOptions, AxiomReport, RibbonHopfData,
};
use lensinv_core::kuperberg::{self, lens_exponent_data, lens_indices, DEFAULT_BUDGET};
use lensinv_core::uqsl2::build_uqsl2;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    lensinv,
    BudgetError,
    PyRuntimeError,
    "A tensor outgrew the term budget."
);

fn err(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } => BudgetError::new_err(e.to_string()),
        Error::Parse(_)
        | Error::InvalidInput(_)
        | Error::InvalidBasis { .. }
        | Error::Scalar(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_string(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// An exact element of Q(ζ_l).
#[pyclass(frozen, eq, skip_from_py_object, module = "lensinv")]
#[derive(Clone, PartialEq)]
struct Scalar(hopf::Scalar);

#[pymethods]
impl Scalar {
    /// From integer coefficients of 1, ζ, ζ², … (length φ(l)).
    #[new]
    fn new(l: u32, coeffs: Vec<i64>) -> PyResult<Self> {
        hopf::Scalar::from_int_coefficients(l, &coeffs)
            .map(Scalar)
            .map_err(|e| err(e.into()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        hopf::Scalar::from_json_value(&v)
            .map(Scalar)
            .map_err(|e| err(e.into()))
    }

    fn to_json(&self) -> String {
        json_string(&self.0.to_json_value())
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    /// Rational coefficients as "num/den" strings.
    #[getter]
    fn coefficients(&self) -> Vec<String> {
        self.0
            .coefficients()
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn conjugate(&self) -> Self {
        Scalar(self.0.conjugate())
    }

    fn norm_squared(&self) -> Self {
        Scalar(self.0.norm_squared())
    }

    #[pyo3(signature = (digits = 20))]
    fn decimal(&self, digits: usize) -> String {
        self.0.to_decimal_string(digits)
    }

    fn __complex__(&self) -> (f64, f64) {
        self.0.to_complex_f64()
    }

    fn __add__(&self, other: &Scalar) -> PyResult<Self> {
        self.0
            .checked_add(&other.0)
            .map(Scalar)
            .map_err(|e| err(e.into()))
    }

    fn __sub__(&self, other: &Scalar) -> PyResult<Self> {
        self.0
            .checked_sub(&other.0)
            .map(Scalar)
            .map_err(|e| err(e.into()))
    }

    fn __mul__(&self, other: &Scalar) -> PyResult<Self> {
        self.0
            .checked_mul(&other.0)
            .map(Scalar)
            .map_err(|e| err(e.into()))
    }

    fn __truediv__(&self, other: &Scalar) -> PyResult<Self> {
        self.0
            .checked_div(&other.0)
            .map(Scalar)
            .map_err(|e| err(e.into()))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar(l={}, {})", self.0.order(), self.0)
    }
}

fn report_list(rep: &AxiomReport) -> Vec<(String, bool, String)> {
    rep.checks
        .iter()
        .map(|c| (c.name.clone(), c.passed, c.detail.clone()))
        .collect()
}

/// u_q sl(2) at an odd root of unity with its ribbon and integral data.
#[pyclass(frozen, module = "lensinv")]
struct Algebra(RibbonHopfData);

#[pymethods]
impl Algebra {
    #[staticmethod]
    fn uqsl2(py: Python<'_>, l: u32) -> PyResult<Self> {
        py.detach(|| build_uqsl2(l)).map(Algebra).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.structure.labels().to_vec()
    }

    /// Axiom report as (name, passed, detail) triples.
    #[pyo3(signature = (exhaustive = false))]
    fn verify(&self, py: Python<'_>, exhaustive: bool) -> Vec<(String, bool, String)> {
        report_list(&py.detach(|| self.0.verify(exhaustive, 400)))
    }

    /// Structure-constant file including R and θ.
    fn to_json(&self) -> String {
        json_string(&structure_to_json(
            &self.0.structure,
            Some(&self.0.r),
            Some(&self.0.theta),
        ))
    }

    fn lambda_theta(&self) -> Scalar {
        Scalar(self.0.lambda_theta())
    }

    fn lambda_theta_inv(&self) -> Scalar {
        Scalar(self.0.lambda_theta_inv())
    }

    /// Z_Kup(L(p,q)).
    #[pyo3(signature = (p, q, budget = DEFAULT_BUDGET))]
    fn z_kup(&self, py: Python<'_>, p: i64, q: i64, budget: usize) -> PyResult<Scalar> {
        py.detach(|| kuperberg::z_kup_lens(p, q, &self.0, budget))
            .map(Scalar)
            .map_err(err)
    }

    /// Z_Henn(L(p,q) # conj L(p,q)) from the closed form.
    #[pyo3(signature = (p, q, budget = DEFAULT_BUDGET))]
    fn z_henn_closed(&self, py: Python<'_>, p: i64, q: i64, budget: usize) -> PyResult<Scalar> {
        py.detach(|| z_henn_lens_closed(p, q, &self.0, budget))
            .map(Scalar)
            .map_err(err)
    }

    /// Normalized Hennings invariant of the 3-manifold obtained by surgery.
    #[pyo3(signature = (link, budget = DEFAULT_BUDGET))]
    fn z_henn(&self, py: Python<'_>, link: &MorseLink, budget: usize) -> PyResult<Scalar> {
        py.detach(|| z_henn_with_data(&link.0, &self.0, budget))
            .map(|e| Scalar(e.value))
            .map_err(err)
    }

    /// Unnormalized Kauffman–Radford trace TR(L).
    #[pyo3(signature = (link, budget = DEFAULT_BUDGET))]
    fn kr_trace(&self, py: Python<'_>, link: &MorseLink, budget: usize) -> PyResult<Scalar> {
        py.detach(|| kr_evaluate_budget(&link.0, &self.0, budget))
            .map(Scalar)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(u_q sl(2), l={}, dim={})",
            self.0.order(),
            self.0.dim()
        )
    }
}

/// A framed oriented link given by Morse slices.
#[pyclass(frozen, module = "lensinv")]
struct MorseLink(hennings::MorseLink);

#[pymethods]
impl MorseLink {
    /// Parses the text format: `cup i`, `cap i`, `x+ i`, `x- i`, `orient c ±`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(MorseLink).map_err(err)
    }

    #[staticmethod]
    fn chain_mail(p: i64, q: i64) -> PyResult<Self> {
        hennings::chain_mail(p, q).map(MorseLink).map_err(err)
    }

    #[staticmethod]
    fn framed_unknot(n: i64) -> Self {
        MorseLink(hennings::framed_unknot(n))
    }

    #[getter]
    fn components(&self) -> usize {
        self.0.component_count()
    }

    #[getter]
    fn crossings(&self) -> usize {
        self.0.crossing_count()
    }

    fn linking_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        validate_and_walk(&self.0)
            .map(|(_, lk)| lk.matrix)
            .map_err(err)
    }

    fn signature(&self) -> PyResult<i64> {
        validate_and_walk(&self.0)
            .map(|(_, lk)| lk.sigma)
            .map_err(err)
    }

    fn whitney_degrees(&self) -> PyResult<Vec<i64>> {
        validate_and_walk(&self.0)
            .map(|(w, _)| w.iter().map(|c| c.whitney_degree()).collect())
            .map_err(err)
    }

    fn mirror(&self) -> Self {
        MorseLink(self.0.mirror())
    }

    fn reversed(&self, component: usize) -> PyResult<Self> {
        if component >= self.0.component_count() {
            return Err(PyValueError::new_err("no such component"));
        }
        Ok(MorseLink(self.0.reversed(component)))
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "MorseLink({} components, {} crossings)",
            self.0.component_count(),
            self.0.crossing_count()
        )
    }
}

/// N- and k-sequences of L(p,q).
#[pyfunction]
fn lens_index_data<'py>(py: Python<'py>, p: i64, q: i64) -> PyResult<Bound<'py, PyDict>> {
    let idx = lens_indices(p, q).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("p", idx.p)?;
    d.set_item("q", idx.q)?;
    d.set_item("N", idx.n)?;
    d.set_item("k", idx.k)?;
    Ok(d)
}

/// Kuperberg exponent data of L(p,q) as a JSON string.
#[pyfunction]
fn exponent_data(p: i64, q: i64) -> PyResult<String> {
    let idx = lens_indices(p, q).map_err(err)?;
    Ok(json_string(&lens_exponent_data(&idx).to_json()))
}

/// Axiom report for a structure-constant file.
#[pyfunction]
#[pyo3(signature = (text, exhaustive = false))]
fn verify_structure(
    py: Python<'_>,
    text: &str,
    exhaustive: bool,
) -> PyResult<Vec<(String, bool, String)>> {
    let f = structure_from_json(text).map_err(err)?;
    let opts = AxiomOptions {
        exhaustive,
        ..AxiomOptions::default()
    };
    let rep = py.detach(|| verify_axioms_with(&f.structure, f.r.as_ref(), f.theta.as_ref(), &opts));
    Ok(report_list(&rep))
}

/// D(H) of a structure file: (structure JSON, factorizability rank, whether
/// the ribbon criterion holds for H).
#[pyfunction]
fn double(py: Python<'_>, text: &str) -> PyResult<(String, usize, bool)> {
    let f = structure_from_json(text).map_err(err)?;
    py.detach(|| {
        let (d, r) = drinfeld_double(&f.structure)?;
        let rank = factorizability_rank(&d, &r)?;
        let crit = ribbon_criterion(&f.structure)?;
        Ok((
            json_string(&structure_to_json(&d, Some(&r), None)),
            rank,
            crit.holds(),
        ))
    })
    .map_err(err)
}

/// C[Z/n] over Q(ζ_l) as a structure-constant file.
#[pyfunction]
#[pyo3(signature = (n, l = 3))]
fn cyclic_group_algebra(n: usize, l: u32) -> PyResult<String> {
    let h = hopf::cyclic_group_algebra(n, l).map_err(err)?;
    Ok(json_string(&structure_to_json(&h, None, None)))
}

#[pymodule]
fn lensinv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scalar>()?;
    m.add_class::<Algebra>()?;
    m.add_class::<MorseLink>()?;
    m.add_function(wrap_pyfunction!(lens_index_data, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_data, m)?)?;
    m.add_function(wrap_pyfunction!(verify_structure, m)?)?;
    m.add_function(wrap_pyfunction!(double, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_group_algebra, m)?)?;
    m.add("BudgetError", m.py().get_type::<BudgetError>())?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
