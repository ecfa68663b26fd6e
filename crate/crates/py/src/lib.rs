//! Python bindings: algebras, extensions, morphisms and the verification
//! suites.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hilbext::algebra::{validate, FiniteAlgebra, VarietyTag};
use hilbext::duality::phi;
use hilbext::enumeration::enumerate_algebras;
use hilbext::extensions::{extend, is_envelope, ExtensionKind, ExtensionResult};
use hilbext::filters::irreducible_filters;
use hilbext::io::{emit_algebra, parse_algebra, read_algebra, signature_of};
use hilbext::suites::{run_suite, Suite};
use hilbext::{fixtures, morphisms};

create_exception!(hilbext, HilbextError, PyValueError);

fn err(e: impl ToString) -> PyErr {
    HilbextError::new_err(e.to_string())
}

fn tag(s: &str) -> PyResult<VarietyTag> {
    s.parse().map_err(err)
}

fn kind(s: &str) -> PyResult<ExtensionKind> {
    s.parse().map_err(err)
}

#[pyclass(name = "Algebra", module = "hilbext", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: FiniteAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// Algebra from its arrow table given as rows. Only the table's shape and
    /// ranges are checked; use `validate` for the axioms.
    #[new]
    #[pyo3(signature = (arrow, one, name = "H"))]
    fn new(arrow: Vec<Vec<usize>>, one: usize, name: &str) -> PyResult<Self> {
        let n = arrow.len();
        if arrow.iter().any(|r| r.len() != n) {
            return Err(err("arrow table must be square"));
        }
        let inner = FiniteAlgebra::new(name, n, arrow.concat(), one).map_err(err)?;
        Ok(PyAlgebra { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (inner, _) = parse_algebra(text, "<string>").map_err(err)?;
        Ok(PyAlgebra { inner })
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        let (inner, _) = read_algebra(&path).map_err(err)?;
        Ok(PyAlgebra { inner })
    }

    /// `h3`, `g4`, `g4_hils`, `one` or `chainN`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let inner = match name {
            "h3" => fixtures::h3(),
            "g4" => fixtures::g4(),
            "g4_hils" => fixtures::g4_hils(),
            "one" => fixtures::one_element(),
            other => match other.strip_prefix("chain").and_then(|k| k.parse().ok()) {
                Some(k) if k >= 1 => fixtures::chain(k),
                _ => return Err(err(format!("unknown fixture `{other}`"))),
            },
        };
        Ok(PyAlgebra { inner })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn one(&self) -> usize {
        self.inner.one()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra({:?}, size={})",
            self.inner.name(),
            self.inner.size()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn arrow(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.inner.size();
        if a >= n || b >= n {
            return Err(err(format!("element out of range for size {n}")));
        }
        Ok(self.inner.arrow(a, b))
    }

    fn label(&self, a: usize) -> String {
        self.inner.label(a)
    }

    /// The algebra with join, meet or zero derived from its order as
    /// `variety` requires.
    fn completed(&self, variety: &str) -> PyResult<Self> {
        let t = tag(variety)?;
        let inner = self
            .inner
            .completed(t)
            .ok_or_else(|| err(format!("order has no {t} structure")))?;
        Ok(PyAlgebra { inner })
    }

    #[pyo3(signature = (variety = "hil"))]
    fn validate(&self, variety: &str) -> PyResult<bool> {
        Ok(validate(&self.inner, tag(variety)?).map_err(err)?.passed())
    }

    #[pyo3(signature = (variety = "hil"))]
    fn report(&self, variety: &str) -> PyResult<String> {
        Ok(validate(&self.inner, tag(variety)?)
            .map_err(err)?
            .to_string())
    }

    #[pyo3(signature = (variety = None))]
    fn to_json(&self, variety: Option<&str>) -> PyResult<String> {
        let t = match variety {
            Some(v) => tag(v)?,
            None => signature_of(&self.inner),
        };
        Ok(emit_algebra(&self.inner, t))
    }

    /// Irreducible filters, each as a sorted list of elements.
    fn dual_points(&self) -> Vec<Vec<usize>> {
        irreducible_filters(&self.inner)
            .filters()
            .iter()
            .map(|f| f.to_vec())
            .collect()
    }

    /// `φ(a)` for every element, as indices into `dual_points()`.
    fn phi(&self) -> Vec<Vec<usize>> {
        phi(&self.inner)
            .images()
            .iter()
            .map(|u| u.to_vec())
            .collect()
    }

    fn extend(&self, target: &str) -> PyResult<PyExtension> {
        let inner = extend(&self.inner, kind(target)?).map_err(err)?;
        Ok(PyExtension { inner })
    }
}

#[pyclass(name = "Extension", module = "hilbext", frozen, skip_from_py_object)]
struct PyExtension {
    inner: ExtensionResult,
}

#[pymethods]
impl PyExtension {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().as_str()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Extension({:?}, size={})",
            self.inner.presented().name(),
            self.inner.len()
        )
    }

    /// Members as sets of dual points.
    fn members(&self) -> Vec<Vec<usize>> {
        self.inner.members().iter().map(|u| u.to_vec()).collect()
    }

    /// Member index of each source element.
    fn embedding(&self) -> Vec<usize> {
        self.inner.embedding().to_vec()
    }

    fn algebra(&self) -> PyAlgebra {
        PyAlgebra {
            inner: self.inner.presented().clone(),
        }
    }

    fn is_envelope(&self) -> bool {
        is_envelope(&self.inner)
    }
}

#[pyclass(name = "Morphism", module = "hilbext", frozen, skip_from_py_object)]
struct PyMorphism {
    inner: morphisms::Morphism,
}

#[pymethods]
impl PyMorphism {
    #[new]
    #[pyo3(signature = (dom, cod, map, tag = "hil"))]
    fn new(dom: &PyAlgebra, cod: &PyAlgebra, map: Vec<usize>, tag: &str) -> PyResult<Self> {
        let t = self::tag(tag)?;
        let inner =
            morphisms::Morphism::new(dom.inner.clone(), cod.inner.clone(), map, t).map_err(err)?;
        Ok(PyMorphism { inner })
    }

    #[getter]
    fn map(&self) -> Vec<usize> {
        self.inner.map().to_vec()
    }

    #[getter]
    fn dom(&self) -> PyAlgebra {
        PyAlgebra {
            inner: self.inner.dom().clone(),
        }
    }

    #[getter]
    fn cod(&self) -> PyAlgebra {
        PyAlgebra {
            inner: self.inner.cod().clone(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Morphism({} -> {}, {:?})",
            self.inner.dom().name(),
            self.inner.cod().name(),
            self.inner.map()
        )
    }

    /// Whether the map preserves the operations of its tag.
    fn check(&self) -> bool {
        self.inner.check().is_ok()
    }

    /// The lift between the extensions of domain and codomain. Domain and
    /// codomain are completed to the source variety of `target` first.
    fn lift(&self, target: &str) -> PyResult<PyMorphism> {
        let k = kind(target)?;
        let t = k.source_tag();
        let complete = |a: &FiniteAlgebra| {
            a.completed(t)
                .ok_or_else(|| err(format!("{} has no {t} structure", a.name())))
        };
        let f = morphisms::Morphism::new(
            complete(self.inner.dom())?,
            complete(self.inner.cod())?,
            self.inner.map().to_vec(),
            t,
        )
        .map_err(err)?;
        f.check().map_err(err)?;
        let lifted = morphisms::lift(&f, k).map_err(err)?;
        Ok(PyMorphism {
            inner: lifted.morphism().clone(),
        })
    }
}

/// Every morphism of `variety` from `dom` to `cod`.
#[pyfunction]
#[pyo3(signature = (dom, cod, variety = "hil"))]
fn morphisms_between(dom: &PyAlgebra, cod: &PyAlgebra, variety: &str) -> PyResult<Vec<PyMorphism>> {
    let found =
        morphisms::enumerate_morphisms(&dom.inner, &cod.inner, tag(variety)?).map_err(err)?;
    Ok(found
        .into_iter()
        .map(|inner| PyMorphism { inner })
        .collect())
}

/// The morphism `H3 → G4` with `x ↦ a`, `y ↦ b`.
#[pyfunction]
fn fixture_morphism() -> PyMorphism {
    PyMorphism {
        inner: fixtures::h3_to_g4(),
    }
}

/// Algebras of `variety` up to isomorphism, sizes 1 to `size`.
#[pyfunction]
fn enumerate(variety: &str, size: usize) -> PyResult<Vec<PyAlgebra>> {
    let catalog = enumerate_algebras(tag(variety)?, size).map_err(err)?;
    Ok(catalog
        .members
        .into_iter()
        .map(|inner| PyAlgebra { inner })
        .collect())
}

/// Counts per size; index 0 is always 0.
#[pyfunction]
fn counts(variety: &str, size: usize) -> PyResult<Vec<usize>> {
    Ok(enumerate_algebras(tag(variety)?, size)
        .map_err(err)?
        .counts())
}

/// `(check, passed, instances)` for each check of the suite.
#[pyfunction]
#[pyo3(signature = (suite, max_size = 3))]
fn verify(py: Python<'_>, suite: &str, max_size: usize) -> PyResult<Vec<(String, bool, usize)>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let report = py.detach(|| run_suite(suite, max_size));
    Ok(report
        .results
        .iter()
        .map(|r| (r.name.to_string(), r.passed(), r.instances))
        .collect())
}

#[pymodule]
#[pyo3(name = "hilbext")]
pub fn hilbext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HilbextError", m.py().get_type::<HilbextError>())?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyExtension>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(morphisms_between, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(counts, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
