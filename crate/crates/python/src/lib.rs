//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (ints and `"p/q"` strings are accepted on input; floats are rejected).

use frusta_core::catalog::{make_solid, Scenario, SolidSpec};
use frusta_core::cli::report::{golden_report, VerificationReport};
use frusta_core::cli::{parse_certificate, render_certificate};
use frusta_core::congruence::find_congruence;
use frusta_core::dehn::{compare_unions, dehn_invariant, DehnComparison};
use frusta_core::dissection::{verify_certificate, RearrangementCertificate};
use frusta_core::formulas::{
    evaluate_formula, moscow_trace, nine_chapters_trace, FormulaId, TraceStyle,
};
use frusta_core::geometry::{Matrix3, Point3, Rational, RigidMotion, Vector3};
use frusta_core::polytope::{build_polytope, ConvexPolytope};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyFloat;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err(
            "floats are not exact; pass an int, Fraction or \"p/q\" string",
        ));
    }
    obj.str()?.to_string().parse().map_err(value_error)
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.to_string(),))
}

fn triple3(objs: &[Bound<'_, PyAny>], what: &str) -> PyResult<[Rational; 3]> {
    let v = rationals(objs)?;
    v.try_into()
        .map_err(|_| PyValueError::new_err(format!("{what} needs exactly 3 entries")))
}

#[pyclass(name = "Polytope", frozen, module = "frusta", skip_from_py_object)]
#[derive(Clone)]
struct PyPolytope {
    inner: ConvexPolytope,
}

#[pymethods]
impl PyPolytope {
    /// Convex polytope from vertices and outward-oriented faces.
    #[new]
    fn new(vertices: Vec<Vec<Bound<'_, PyAny>>>, faces: Vec<Vec<usize>>) -> PyResult<Self> {
        let points = vertices
            .iter()
            .map(|v| triple3(v, "vertex").map(|[x, y, z]| Point3::new(x, y, z)))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = build_polytope(points, faces, "").map_err(value_error)?;
        Ok(PyPolytope { inner })
    }

    /// Catalog solid from a spec such as `"symmetric_frustum:4,2,6"`.
    #[staticmethod]
    fn solid(spec: &str) -> PyResult<Self> {
        let spec = SolidSpec::parse(spec).map_err(value_error)?;
        let inner = make_solid(&spec).map_err(value_error)?;
        Ok(PyPolytope { inner })
    }

    #[getter]
    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner
            .vertices()
            .iter()
            .map(|p| p.coords().into_iter().map(|c| fraction(py, c)).collect())
            .collect()
    }

    #[getter]
    fn faces(&self) -> Vec<Vec<usize>> {
        self.inner.face_cycles()
    }

    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.volume())
    }

    /// Image under `x -> matrix·x + translation`; the matrix must be orthogonal.
    #[pyo3(signature = (matrix, translation))]
    fn transform(
        &self,
        matrix: Vec<Vec<Bound<'_, PyAny>>>,
        translation: Vec<Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let rows = matrix
            .iter()
            .map(|r| triple3(r, "matrix row"))
            .collect::<PyResult<Vec<_>>>()?;
        let rows: [[Rational; 3]; 3] = rows
            .try_into()
            .map_err(|_| PyValueError::new_err("matrix needs exactly 3 rows"))?;
        let [x, y, z] = triple3(&translation, "translation")?;
        let motion = RigidMotion::new(Matrix3(rows), Vector3::new(x, y, z));
        let inner = self.inner.transform(&motion).map_err(value_error)?;
        Ok(PyPolytope { inner })
    }

    fn scale(&self, k: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = self.inner.scale(&rational(k)?).map_err(value_error)?;
        Ok(PyPolytope { inner })
    }

    fn contains_point(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let [x, y, z] = triple3(&point, "point")?;
        Ok(self.inner.contains_point(&Point3::new(x, y, z)))
    }

    /// Intersection with positive volume, or `None`.
    fn intersect(&self, other: &PyPolytope) -> Option<PyPolytope> {
        self.inner
            .intersect(&other.inner)
            .map(|inner| PyPolytope { inner })
    }

    #[pyo3(signature = (other, allow_reflection = false))]
    fn congruent_to(&self, other: &PyPolytope, allow_reflection: bool) -> bool {
        find_congruence(&self.inner, &other.inner, allow_reflection).is_some()
    }

    fn dehn_invariant(&self) -> PyResult<String> {
        Ok(dehn_invariant(&self.inner)
            .map_err(value_error)?
            .to_string())
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope({} vertices, {} faces, volume {})",
            self.inner.vertices().len(),
            self.inner.faces().len(),
            self.inner.volume()
        )
    }
}

#[pyclass(name = "Certificate", frozen, module = "frusta")]
struct PyCertificate {
    inner: RearrangementCertificate,
}

#[pymethods]
impl PyCertificate {
    /// Catalog scenario, e.g. `Certificate.build("liu-hui", [3, 1, 1])`.
    #[staticmethod]
    fn build(scenario: &str, params: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let scenario: Scenario = scenario.parse().map_err(value_error)?;
        let inner = scenario.build(&rationals(&params)?).map_err(value_error)?;
        Ok(PyCertificate { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCertificate {
            inner: parse_certificate(text).map_err(value_error)?,
        })
    }

    fn to_json(&self) -> String {
        render_certificate(&self.inner)
    }

    #[getter]
    fn pieces(&self) -> Vec<PyPolytope> {
        self.inner
            .pieces
            .iter()
            .map(|p| PyPolytope {
                inner: p.piece.clone(),
            })
            .collect()
    }

    #[getter]
    fn claim_count(&self) -> usize {
        self.inner.claims.len()
    }

    /// Verification report as a dict (`overall`, `passed`, `claims`,
    /// `conservation`, `notes`).
    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let verdict = verify_certificate(&self.inner).map_err(value_error)?;
        let report = VerificationReport::new(&self.inner, &verdict);
        let json = serde_json::to_string(&report).map_err(value_error)?;
        py.import("json")?.getattr("loads")?.call1((json,))
    }
}

/// One of `F_T`, `F_TA`, `F_P`, `GUNN_PEET_FACTORED`.
#[pyfunction]
fn formula<'py>(
    py: Python<'py>,
    name: &str,
    a: &Bound<'py, PyAny>,
    b: &Bound<'py, PyAny>,
    h: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let id: FormulaId = name.parse().map_err(value_error)?;
    let v =
        evaluate_formula(id, &rational(a)?, &rational(b)?, &rational(h)?).map_err(value_error)?;
    fraction(py, &v)
}

/// `(rendered text, step values)` for style `moscow` or `nine_chapters`.
#[pyfunction]
#[pyo3(signature = (style, a, b, h, unit = None))]
fn trace<'py>(
    py: Python<'py>,
    style: &str,
    a: &Bound<'py, PyAny>,
    b: &Bound<'py, PyAny>,
    h: &Bound<'py, PyAny>,
    unit: Option<String>,
) -> PyResult<(String, Vec<Bound<'py, PyAny>>)> {
    let style: TraceStyle = style.parse().map_err(value_error)?;
    let (a, b, h) = (rational(a)?, rational(b)?, rational(h)?);
    let mut t = match style {
        TraceStyle::Moscow => moscow_trace(&a, &b, &h),
        TraceStyle::NineChapters => nine_chapters_trace(&a, &b, &h),
    }
    .map_err(value_error)?;
    if let Some(u) = unit {
        t = t.with_unit(u);
    }
    let values = t
        .values()
        .iter()
        .map(|v| fraction(py, v))
        .collect::<PyResult<_>>()?;
    Ok((t.render(), values))
}

/// Dehn comparison of two unions of pieces: `EqualInvariant`,
/// `SoundlyDifferent` or `PossiblyDifferent`, plus the difference.
#[pyfunction]
fn compare_dehn(
    left: Vec<PyRef<'_, PyPolytope>>,
    right: Vec<PyRef<'_, PyPolytope>>,
) -> PyResult<(String, String)> {
    let l: Vec<ConvexPolytope> = left.iter().map(|p| p.inner.clone()).collect();
    let r: Vec<ConvexPolytope> = right.iter().map(|p| p.inner.clone()).collect();
    let cmp = compare_unions(&l, &r).map_err(value_error)?;
    let detail = match &cmp {
        DehnComparison::EqualInvariant => "0".to_string(),
        DehnComparison::SoundlyDifferent(d) | DehnComparison::PossiblyDifferent(d) => d.to_string(),
    };
    Ok((cmp.name().to_string(), detail))
}

/// Golden-value table: `(all rows pass, rendered table)`.
#[pyfunction]
fn report() -> (bool, String) {
    let r = golden_report();
    (r.passed(), r.render())
}

#[pymodule]
fn frusta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolytope>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(formula, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(compare_dehn, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    Ok(())
}
