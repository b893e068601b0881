//! Python bindings: presentations, plane coordinates, the coordinate-system
//! pipeline and the structural criteria. Structured results come back as
//! plain dicts and lists (the same JSON the command-line tool emits).

use hypercert::criteria::{iso_invariants, ufd_check, zcp_catalog};
use hypercert::expmap::dk_witness;
use hypercert::graded::{fdk1_chain, graded_presentation, GradedOutcome, WeightVector};
use hypercert::plane::{random_tame_word, segre_nagata as sn_poly, SegreNagataParams};
use hypercert::theorem_b::{verify_coordinate_system as verify_system, CoordinateSystem, SystemCheck};
use hypercert::{
    coordinate_decide as decide, run_pipeline, word_to_auto, Field, PipelineOptions, Poly, TameWord, VarContext,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde_json::{json, Value};

fn err(e: hypercert::Error) -> PyErr {
    match e {
        hypercert::Error::Internal(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn field(spec: &str) -> PyResult<Field> {
    spec.parse().map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "json")?.call_method1("loads", (v.to_string(),))
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = PyModule::import(obj.py(), "json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn plane(text: &str, k: &str) -> PyResult<Poly> {
    Poly::parse(text, &VarContext::plane(), field(k)?).map_err(err)
}

/// `A = k[X1..Xm, Y, Z, T] / (X1^r1...Xm^rm Y - F)`.
#[pyclass(frozen)]
struct Presentation(hypercert::Presentation);

#[pymethods]
impl Presentation {
    #[new]
    #[pyo3(signature = (m, r, field, F))]
    #[allow(non_snake_case)]
    fn new(m: usize, r: Vec<u32>, field: &str, F: &str) -> PyResult<Self> {
        let k = self::field(field)?;
        Ok(Presentation(hypercert::Presentation::parse(m, &r, k, F).map_err(err)?))
    }

    /// Reads `{"m", "r", "field", "F"}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Presentation(hypercert::Presentation::from_json(text).map_err(err)?))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.spec()).expect("presentation spec serializes")
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn r(&self) -> Vec<u32> {
        self.0.r().to_vec()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    #[getter(F)]
    fn big_f(&self) -> String {
        self.0.big_f().to_string()
    }

    #[getter]
    fn f(&self) -> String {
        self.0.f().to_string()
    }

    fn is_structured(&self) -> bool {
        self.0.is_structured()
    }

    /// Normal form of an element of `A`, with `X^r Y` rewritten to `F`.
    fn normal_form(&self, text: &str) -> PyResult<String> {
        Ok(self.0.elem(text).map_err(err)?.to_string())
    }

    /// Whether two polynomials give the same element of `A`.
    fn equal(&self, a: &str, b: &str) -> PyResult<bool> {
        let (a, b) = (self.0.elem(a).map_err(err)?, self.0.elem(b).map_err(err)?);
        hypercert::a_equal(&a, &b).map_err(err)
    }

    /// Decides whether `X^r Y - F` is a coordinate, with a verified
    /// coordinate system on the positive side.
    #[pyo3(signature = (degree_cap=None))]
    fn theorem_b<'py>(&self, py: Python<'py>, degree_cap: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
        let opts = PipelineOptions { degree_bound: degree_cap, verify_degree_cap: degree_cap, ..Default::default() };
        to_py(py, &run_pipeline(&self.0, &opts).map_err(err)?.to_json())
    }

    fn ufd_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &ufd_check(&self.0).map_err(err)?.to_json())
    }

    /// The two translation exponential maps with the generators they fix.
    fn exp_maps<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &dk_witness(&self.0).map_err(err)?.to_json())
    }

    /// Graded presentation for `weights`, or the two-step regrading when omitted.
    #[pyo3(signature = (weights=None))]
    fn graded<'py>(&self, py: Python<'py>, weights: Option<Vec<i64>>) -> PyResult<Bound<'py, PyAny>> {
        let spec = |p: &hypercert::Presentation| serde_json::to_value(p.spec()).expect("presentation spec serializes");
        let v = match weights {
            None => {
                let chain = fdk1_chain(&self.0).map_err(err)?;
                json!({"first": spec(&chain.first.presentation), "last": spec(&chain.last.presentation)})
            }
            Some(w) => match graded_presentation(&self.0, &WeightVector(w)).map_err(err)? {
                GradedOutcome::Graded(g) => json!({"graded": spec(&g.presentation), "ell": g.data.ell}),
                GradedOutcome::HypothesisFails(j) => json!({"hypothesis_fails": j}),
                GradedOutcome::Degenerate(why) => json!({"degenerate": why}),
            },
        };
        to_py(py, &v)
    }

    fn iso<'py>(&self, py: Python<'py>, other: &Presentation) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &iso_invariants(&self.0, &other.0, None).map_err(err)?.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Presentation(m={}, r={:?}, field={}, F={})", self.0.m(), self.0.r(), self.0.field(), self.0.big_f())
    }
}

/// Decides whether `f` is a coordinate of `k[Z, T]`.
#[pyfunction]
#[pyo3(signature = (poly, field="Q", degree_bound=None))]
fn coordinate_decide<'py>(
    py: Python<'py>,
    poly: &str,
    field: &str,
    degree_bound: Option<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &decide(&plane(poly, field)?, degree_bound).map_err(err)?.to_json())
}

/// `Z^(p^e) + T + T^(s p)` over `F_p`.
#[pyfunction]
fn segre_nagata(p: u64, e: u32, s: u64) -> PyResult<String> {
    Ok(sn_poly(SegreNagataParams { p, e, s }, Field::Prime(p)).map_err(err)?.to_string())
}

/// Seeded random tame word, as a list of move dicts.
#[pyfunction]
#[pyo3(signature = (seed, max_moves=4, degree_cap=3, field="Q"))]
fn random_word<'py>(
    py: Python<'py>,
    seed: u64,
    max_moves: usize,
    degree_cap: u32,
    field: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let w = random_tame_word(seed, max_moves, &[-2, -1, 0, 1, 2], degree_cap, self::field(field)?);
    to_py(py, &w.to_json())
}

/// Composes a tame word into a plane automorphism with its inverse.
#[pyfunction]
#[pyo3(signature = (word, field="Q"))]
fn compose_word<'py>(py: Python<'py>, word: &Bound<'py, PyAny>, field: &str) -> PyResult<Bound<'py, PyAny>> {
    let k = self::field(field)?;
    let w = TameWord::from_json(&from_py(word)?, k).map_err(err)?;
    to_py(py, &word_to_auto(&w, k).map_err(err)?.to_json())
}

/// Re-checks a coordinate system dict (the `witness` of `theorem_b`).
#[pyfunction]
#[pyo3(signature = (system, m, field="Q", degree_cap=None))]
fn verify_coordinate_system(
    system: &Bound<'_, PyAny>,
    m: usize,
    field: &str,
    degree_cap: Option<u32>,
) -> PyResult<bool> {
    let sys = CoordinateSystem::from_json(&from_py(system)?, m, self::field(field)?).map_err(err)?;
    Ok(matches!(verify_system(&sys, degree_cap).map_err(err)?, SystemCheck::Verified(_)))
}

/// Pairwise non-isomorphic presentations sharing one Segre-Nagata `f`.
#[pyfunction]
#[pyo3(signature = (count, sn, m=2))]
fn catalog<'py>(py: Python<'py>, count: usize, sn: (u64, u32, u64), m: usize) -> PyResult<Bound<'py, PyAny>> {
    let params = SegreNagataParams { p: sn.0, e: sn.1, s: sn.2 };
    let entries = zcp_catalog(count, Field::Prime(sn.0), params, m).map_err(err)?;
    to_py(py, &Value::Array(entries.iter().map(|e| e.to_json()).collect()))
}

#[pymodule]
fn pyhypercert(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_function(wrap_pyfunction!(coordinate_decide, m)?)?;
    m.add_function(wrap_pyfunction!(segre_nagata, m)?)?;
    m.add_function(wrap_pyfunction!(random_word, m)?)?;
    m.add_function(wrap_pyfunction!(compose_word, m)?)?;
    m.add_function(wrap_pyfunction!(verify_coordinate_system, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
