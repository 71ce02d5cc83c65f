//! Python bindings. Structured results cross the boundary as JSON strings.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use qverma::adjoint::{
    adjoint_basis, decompose, tensor_square_action, verify_prop3, AdjBasisElement,
};
use qverma::braidedmod::{
    build_intertwiner, ideal_generators, verify_braided_relations, verify_casimir,
    verify_hwv_images, verify_ideal, weight_exponent,
};
use qverma::braiding::{construct_braiding, eigen_analysis, verify_qybe, BraidingOperator};
use qverma::export::{export_braiding, export_intertwiner, export_module, to_json, OperatorJson};
use qverma::orbit::{self, OrbitAlgebraConfig, Regime};
use qverma::repcore::{
    chevalley_action, verify_uq_relations, HighestWeight, ModuleSpec, WeightModule,
};
use qverma::ring::{parse_rational, rat, ArithmeticMode, Rational};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json<T: Serialize>(v: &T) -> String {
    to_json(v)
}

/// `"sym"` for symbolic `q`, `"1"` for the classical point, otherwise a rational.
fn mode_for(q: &str) -> PyResult<ArithmeticMode> {
    if q.trim() == "sym" {
        return Ok(ArithmeticMode::ExactIntegerWeight);
    }
    let r = parse_rational(q).map_err(err)?;
    if r == rat(1) {
        return Ok(ArithmeticMode::Classical { mu: None });
    }
    ArithmeticMode::numeric(r, None).map_err(err)
}

fn rational_of(q: &str) -> PyResult<Option<Rational>> {
    match q.trim() {
        "sym" => Ok(None),
        s => parse_rational(s).map(Some).map_err(err),
    }
}

/// A rational function in `q` and `z = q^mu`, written `num / den`.
#[pyclass(name = "QScalar", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyQScalar(qverma::ring::QScalar);

#[pymethods]
impl PyQScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyQScalar).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QScalar('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __add__(&self, other: &Self) -> Self {
        PyQScalar(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyQScalar(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyQScalar(&self.0 * &other.0)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_div(&other.0).map(PyQScalar).map_err(err)
    }

    /// Value at rational `q` (and `z`, if the scalar mentions it), as `p/q` text.
    #[pyo3(signature = (q, z=None))]
    fn specialize(&self, q: &str, z: Option<&str>) -> PyResult<String> {
        let q = parse_rational(q).map_err(err)?;
        let z = z.map(parse_rational).transpose().map_err(err)?;
        let v = self.0.specialize(&q, z.as_ref()).map_err(err)?;
        Ok(qverma::ring::format_rational(&v))
    }
}

#[pyclass(name = "WeightModule", frozen)]
struct PyModule_ {
    spec: ModuleSpec,
    module: WeightModule,
}

#[pymethods]
impl PyModule_ {
    /// The finite-dimensional module with highest weight `mu * w1`.
    #[staticmethod]
    #[pyo3(signature = (n, mu, q="sym"))]
    fn finite(n: usize, mu: i64, q: &str) -> PyResult<Self> {
        Self::build(ModuleSpec::finite(n, mu, mode_for(q)?))
    }

    /// The Verma module truncated at lowering degree `truncation`; `z = q^mu`
    /// stays symbolic unless both `q` and `z` are given.
    #[staticmethod]
    #[pyo3(signature = (n, truncation, q="sym", z=None))]
    fn verma(n: usize, truncation: usize, q: &str, z: Option<&str>) -> PyResult<Self> {
        let mode = match (rational_of(q)?, z) {
            (None, None) => ArithmeticMode::GenericWeight,
            (Some(q), Some(z)) => {
                ArithmeticMode::numeric(q, Some(parse_rational(z).map_err(err)?)).map_err(err)?
            }
            _ => return Err(PyValueError::new_err("give both q and z, or neither")),
        };
        Self::build(ModuleSpec::verma(
            n,
            HighestWeight::Generic,
            truncation,
            mode,
        ))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.module.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.module.labels.clone()
    }

    #[getter]
    fn name(&self) -> String {
        self.module.name.clone()
    }

    fn verify_uq_relations(&self) -> String {
        json(&verify_uq_relations(&self.module))
    }

    fn to_json(&self) -> String {
        json(&export_module(&self.module))
    }

    /// The intertwiner `g -> Psi(g)` scaled by `alpha`.
    #[pyo3(signature = (alpha="1"))]
    fn intertwiner(&self, alpha: &str) -> PyResult<PyIntertwiner> {
        let alpha = alpha.parse().map_err(err)?;
        Ok(PyIntertwiner(
            build_intertwiner(&self.spec, &alpha).map_err(err)?,
        ))
    }
}

impl PyModule_ {
    fn build(spec: ModuleSpec) -> PyResult<Self> {
        spec.validate().map_err(err)?;
        let module = chevalley_action(&spec).map_err(err)?;
        Ok(PyModule_ { spec, module })
    }
}

#[pyclass(name = "Intertwiner", frozen)]
struct PyIntertwiner(qverma::braidedmod::Intertwiner);

#[pymethods]
impl PyIntertwiner {
    /// `Psi(g)` for a basis label such as `g1,3` or `t2`, as operator JSON.
    fn op(&self, label: &str) -> PyResult<String> {
        let b =
            AdjBasisElement::parse(label).ok_or_else(|| PyKeyError::new_err(label.to_string()))?;
        if !adjoint_basis(self.0.n()).contains(&b) {
            return Err(PyKeyError::new_err(label.to_string()));
        }
        let name = &self.0.module.name;
        Ok(json(&OperatorJson::new(
            format!("psi({label})"),
            self.0.op(b),
            name,
            name,
        )))
    }

    fn verify_relations(&self) -> String {
        json(&verify_braided_relations(&self.0))
    }

    fn verify_casimir(&self) -> PyResult<String> {
        verify_casimir(&self.0).map(|r| json(&r)).map_err(err)
    }

    fn verify_hwv_images(&self) -> PyResult<String> {
        verify_hwv_images(&self.0).map(|r| json(&r)).map_err(err)
    }

    fn verify_ideal(&self) -> PyResult<String> {
        let spec = &self.0.spec;
        let gens = ideal_generators(
            self.0.n(),
            weight_exponent(&spec.weight),
            &self.0.alpha,
            &spec.arithmetic,
        )
        .map_err(err)?;
        verify_ideal(&self.0, &gens).map(|r| json(&r)).map_err(err)
    }

    fn to_json(&self) -> String {
        json(&export_intertwiner(&self.0))
    }
}

#[pyclass(name = "Braiding", frozen)]
struct PyBraiding(BraidingOperator);

#[pymethods]
impl PyBraiding {
    #[new]
    #[pyo3(signature = (n, q="sym"))]
    fn new(n: usize, q: &str) -> PyResult<Self> {
        construct_braiding(n, &mode_for(q)?)
            .map(PyBraiding)
            .map_err(err)
    }

    fn eigen_report(&self) -> PyResult<String> {
        eigen_analysis(&self.0)
            .map(|e| json(&e.report))
            .map_err(err)
    }

    fn verify_qybe(&self) -> String {
        json(&verify_qybe(&self.0))
    }

    fn to_json(&self) -> String {
        json(&export_braiding(&self.0))
    }
}

#[pyclass(name = "OrbitConfig", frozen)]
struct PyOrbit(OrbitAlgebraConfig);

#[pymethods]
impl PyOrbit {
    #[new]
    #[pyo3(signature = (n, hbar, regime="gt1", q="sym", alpha0="1"))]
    fn new(n: usize, hbar: &str, regime: &str, q: &str, alpha0: &str) -> PyResult<Self> {
        let regime = Regime::parse(regime)
            .ok_or_else(|| PyValueError::new_err(format!("unknown regime {regime}")))?;
        let mut cfg =
            OrbitAlgebraConfig::new(n, regime, hbar.parse().map_err(err)?, rational_of(q)?);
        cfg.alpha0 = alpha0.parse().map_err(err)?;
        cfg.validate().map_err(err)?;
        Ok(PyOrbit(cfg))
    }

    /// `hbar` for the integer weight `mu`.
    #[staticmethod]
    #[pyo3(signature = (n, mu, regime="gt1", q="sym"))]
    fn from_mu(n: usize, mu: i64, regime: &str, q: &str) -> PyResult<Self> {
        let r = Regime::parse(regime)
            .ok_or_else(|| PyValueError::new_err(format!("unknown regime {regime}")))?;
        let q = rational_of(q)?;
        let hbar = orbit::mu_to_hbar(n, mu, r, q.as_ref()).map_err(err)?;
        Ok(PyOrbit(OrbitAlgebraConfig::new(n, r, hbar, q)))
    }

    #[getter]
    fn hbar(&self) -> PyQScalar {
        PyQScalar(self.0.hbar.clone())
    }

    fn weight_binding(&self) -> PyResult<String> {
        orbit::hbar_to_mu(&self.0).map(|b| json(&b)).map_err(err)
    }

    fn constants(&self) -> PyResult<String> {
        orbit::specialized_constants(&self.0)
            .map(|k| json(&k))
            .map_err(err)
    }

    fn ideal(&self) -> PyResult<String> {
        orbit::specialized_ideal(&self.0)
            .map(|k| json(&k))
            .map_err(err)
    }

    fn verify(&self) -> PyResult<String> {
        orbit::verify_orbit(&self.0).map(|r| json(&r)).map_err(err)
    }

    /// Graded dimensions of the filtration up to degree `d`.
    #[pyo3(signature = (d=2))]
    fn graded_dimensions(&self, d: usize) -> PyResult<String> {
        let mut cfg = self.0.clone();
        cfg.truncation = cfg.truncation.max(2 * d);
        let psi = orbit::orbit_intertwiner(&cfg).map_err(err)?;
        orbit::graded_dimensions(&psi, d)
            .map(|g| json(&g))
            .map_err(err)
    }
}

/// Decomposition of the adjoint tensor square.
#[pyfunction]
#[pyo3(signature = (n, q="sym"))]
fn decompose_adjoint_square(n: usize, q: &str) -> PyResult<String> {
    let square = tensor_square_action(n, &mode_for(q)?).map_err(err)?;
    decompose(&square).map(|d| json(&d)).map_err(err)
}

/// Checks of the highest weight vectors in the adjoint square.
#[pyfunction]
#[pyo3(signature = (n, q="sym"))]
fn verify_adjoint_vectors(n: usize, q: &str) -> PyResult<String> {
    verify_prop3(n, &mode_for(q)?)
        .map(|r| json(&r))
        .map_err(err)
}

/// `c0` and `c1` at the classical point, as JSON.
#[pyfunction]
#[pyo3(signature = (n, mu, hbar="0"))]
fn classical_constants(n: usize, mu: &str, hbar: &str) -> PyResult<String> {
    let mu = parse_rational(mu).map_err(err)?;
    let hbar = parse_rational(hbar).map_err(err)?;
    Ok(json(&orbit::classical_constants(n, &mu, &hbar)))
}

#[pymodule]
fn qverma_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQScalar>()?;
    m.add_class::<PyModule_>()?;
    m.add_class::<PyIntertwiner>()?;
    m.add_class::<PyBraiding>()?;
    m.add_class::<PyOrbit>()?;
    m.add_function(wrap_pyfunction!(decompose_adjoint_square, m)?)?;
    m.add_function(wrap_pyfunction!(verify_adjoint_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(classical_constants, m)?)?;
    Ok(())
}
