//! Python bindings for the intersection-theory engine.
//!
//! Exposes the catalog constructors, the bundle calculus, projective-bundle
//! pushforwards, the discriminant-degree pipelines, and the script evaluator.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ramify::bogomolov::{
    branch_report, chi_sym_cubic, instability_check, InstabilityInput, Rank2Setup,
};
use ramify::catalog;
use ramify::discriminant;
use ramify::script::{evaluate, parse, RenderFormat};
use ramify::{BundleClass, GradedClass, ProjBundle, VarietyModel};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A ring context: a variety's dimension, generators, and caps.
#[pyclass(name = "Variety", skip_from_py_object)]
#[derive(Clone)]
struct PyVariety {
    inner: VarietyModel,
}

#[pymethods]
impl PyVariety {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn generator(&self, name: &str) -> PyResult<PyClass> {
        Ok(PyClass {
            inner: self.inner.named_class(name).map_err(value_error)?,
        })
    }

    fn integral(&self, class: &PyClass) -> PyResult<String> {
        match self.inner.integrate(&class.inner).map_err(value_error)? {
            ramify::Integrated::Number(n) => Ok(n.to_string()),
            ramify::Integrated::Formal(c) => Ok(c.render()),
        }
    }

    fn __repr__(&self) -> String {
        format!("Variety(dim {})", self.inner.dimension())
    }
}

/// A graded ring class rendered canonically.
#[pyclass(name = "Class", skip_from_py_object)]
#[derive(Clone)]
struct PyClass {
    inner: GradedClass,
}

#[pymethods]
impl PyClass {
    fn render(&self) -> String {
        self.inner.render()
    }

    fn component(&self, k: usize) -> PyClass {
        PyClass {
            inner: self.inner.component(k),
        }
    }

    fn __add__(&self, other: &PyClass) -> PyResult<PyClass> {
        Ok(PyClass {
            inner: self.inner.add(&other.inner).map_err(value_error)?,
        })
    }

    fn __sub__(&self, other: &PyClass) -> PyResult<PyClass> {
        Ok(PyClass {
            inner: self.inner.sub(&other.inner).map_err(value_error)?,
        })
    }

    fn __mul__(&self, other: &PyClass) -> PyResult<PyClass> {
        Ok(PyClass {
            inner: self.inner.mul(&other.inner).map_err(value_error)?,
        })
    }

    fn __pow__(&self, exponent: u32, _mod: Option<u32>) -> PyClass {
        PyClass {
            inner: self.inner.pow(exponent),
        }
    }

    fn __eq__(&self, other: &PyClass) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        self.inner.render()
    }
}

/// A vector bundle as rank plus total Chern class.
#[pyclass(name = "Bundle", skip_from_py_object)]
#[derive(Clone)]
struct PyBundle {
    inner: BundleClass,
}

#[pymethods]
impl PyBundle {
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn total_chern(&self) -> PyClass {
        PyClass {
            inner: self.inner.total_chern().clone(),
        }
    }

    fn chern(&self, k: usize) -> PyClass {
        PyClass {
            inner: self.inner.chern(k),
        }
    }

    fn dual(&self) -> PyBundle {
        PyBundle {
            inner: self.inner.dual(),
        }
    }

    fn direct_sum(&self, other: &PyBundle) -> PyResult<PyBundle> {
        Ok(PyBundle {
            inner: self.inner.direct_sum(&other.inner).map_err(value_error)?,
        })
    }

    fn twist(&self, line: &PyClass) -> PyResult<PyBundle> {
        Ok(PyBundle {
            inner: self.inner.twist_by_line(&line.inner).map_err(value_error)?,
        })
    }

    fn tensor(&self, other: &PyBundle) -> PyResult<PyBundle> {
        Ok(PyBundle {
            inner: self.inner.tensor(&other.inner).map_err(value_error)?,
        })
    }

    fn sym(&self, k: usize) -> PyResult<PyBundle> {
        Ok(PyBundle {
            inner: self.inner.sym_power(k).map_err(value_error)?,
        })
    }

    fn segre(&self) -> PyClass {
        PyClass {
            inner: self.inner.segre_total(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Bundle(rank {}; c = {})",
            self.inner.rank(),
            self.inner.total_chern()
        )
    }
}

/// A projectivized bundle with its pushforward.
#[pyclass(name = "ProjBundle", skip_from_py_object)]
#[derive(Clone)]
struct PyProjBundle {
    inner: ProjBundle,
}

#[pymethods]
impl PyProjBundle {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn xi(&self) -> PyClass {
        PyClass {
            inner: self.inner.xi_class(),
        }
    }

    fn pullback(&self, class: &PyClass) -> PyResult<PyClass> {
        Ok(PyClass {
            inner: self.inner.pullback(&class.inner).map_err(value_error)?,
        })
    }

    fn pushforward(&self, class: &PyClass) -> PyResult<PyClass> {
        Ok(PyClass {
            inner: self
                .inner
                .pushforward_class(&class.inner)
                .map_err(value_error)?,
        })
    }

    fn integral(&self, class: &PyClass) -> PyResult<String> {
        match self
            .inner
            .integrate_total(&class.inner)
            .map_err(value_error)?
        {
            ramify::Integrated::Number(n) => Ok(n.to_string()),
            ramify::Integrated::Formal(c) => Ok(c.render()),
        }
    }
}

#[pyfunction]
fn projective_space(n: usize) -> PyVariety {
    PyVariety {
        inner: catalog::projective_space(n),
    }
}

#[pyfunction]
fn multi_projective(factors: Vec<usize>) -> PyResult<PyVariety> {
    if factors.is_empty() || factors.iter().any(|&n| n < 1) {
        return Err(PyValueError::new_err("factors must be at least 1"));
    }
    Ok(PyVariety {
        inner: catalog::multi_projective(&factors),
    })
}

#[pyfunction]
fn line_bundle(variety: &PyVariety, degrees: Vec<i64>) -> PyResult<PyBundle> {
    Ok(PyBundle {
        inner: catalog::line_bundle(&variety.inner, &degrees).map_err(value_error)?,
    })
}

#[pyfunction]
fn tangent(variety: &PyVariety) -> PyResult<PyBundle> {
    Ok(PyBundle {
        inner: catalog::tangent(&variety.inner).map_err(value_error)?,
    })
}

#[pyfunction]
fn cotangent(variety: &PyVariety) -> PyResult<PyBundle> {
    Ok(PyBundle {
        inner: catalog::cotangent(&variety.inner).map_err(value_error)?,
    })
}

#[pyfunction]
fn proj_bundle(bundle: &PyBundle) -> PyResult<PyProjBundle> {
    Ok(PyProjBundle {
        inner: ProjBundle::new(&bundle.inner).map_err(value_error)?,
    })
}

fn resolve_cotangent(bundle: &PyBundle, omega: Option<&PyBundle>) -> PyResult<BundleClass> {
    match omega {
        Some(omega) => Ok(omega.inner.clone()),
        None => catalog::cotangent(bundle.inner.model()).map_err(|_| {
            PyValueError::new_err(
                "the base is not a product of projective spaces; pass the cotangent bundle",
            )
        }),
    }
}

/// Expected discriminant degree as a Python int.
#[pyfunction]
#[pyo3(signature = (bundle, omega = None))]
fn disc_degree(bundle: &PyBundle, omega: Option<&PyBundle>) -> PyResult<num_bigint::BigInt> {
    let omega = resolve_cotangent(bundle, omega)?;
    discriminant::expected_degree(&bundle.inner, &omega).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (bundle, omega = None))]
fn disc_degree_jet(bundle: &PyBundle, omega: Option<&PyBundle>) -> PyResult<num_bigint::BigInt> {
    let omega = resolve_cotangent(bundle, omega)?;
    discriminant::jet_route_degree(&bundle.inner, &omega).map_err(value_error)
}

/// Branch divisor class of a degree-d multisection on the formal surface.
#[pyfunction]
fn branch_class(d: i64) -> PyResult<String> {
    let setup = Rank2Setup::standard();
    Ok(branch_report(&setup, d)
        .map_err(value_error)?
        .class
        .render())
}

/// Coefficients of the Riemann-Roch cubic as canonical strings, m^0 first.
#[pyfunction]
fn chi_cubic() -> PyResult<Vec<String>> {
    let setup = Rank2Setup::standard();
    let cubic = chi_sym_cubic(&setup).map_err(value_error)?;
    Ok(cubic.coefficients.iter().map(GradedClass::render).collect())
}

/// Numeric Bogomolov instability test; returns the three booleans.
#[pyfunction]
fn bogomolov_check(
    d_squared: i64,
    a_squared: i64,
    a_dot_d: i64,
    a_dot_h: i64,
    d_dot_h: i64,
    c2: i64,
    length_w: i64,
) -> (bool, bool, bool) {
    let report = instability_check(&InstabilityInput {
        d_squared,
        a_squared,
        a_dot_d,
        a_dot_h,
        d_dot_h,
        c2,
        length_w,
    });
    (
        report.bogomolov_inequality,
        report.destabilizer_valid,
        report.c2_consistent,
    )
}

/// Run a script and return the printed lines.
#[pyfunction]
#[pyo3(signature = (source, json = false))]
fn eval_script(source: &str, json: bool) -> PyResult<Vec<String>> {
    let script = parse(source).map_err(value_error)?;
    let outputs = evaluate(&script).map_err(|err| PyRuntimeError::new_err(err.to_string()))?;
    let format = if json {
        RenderFormat::Json
    } else {
        RenderFormat::Text
    };
    Ok(outputs.into_iter().map(|v| v.render(format)).collect())
}

/// Evaluate a single expression and return its canonical text.
#[pyfunction]
fn eval_expr(source: &str) -> PyResult<String> {
    let lines = eval_script(&format!("print {source};"), false)?;
    Ok(lines.into_iter().next().unwrap_or_default())
}

#[pymodule]
fn ramify_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyVariety>()?;
    m.add_class::<PyBundle>()?;
    m.add_class::<PyClass>()?;
    m.add_class::<PyProjBundle>()?;
    m.add_function(wrap_pyfunction!(projective_space, m)?)?;
    m.add_function(wrap_pyfunction!(multi_projective, m)?)?;
    m.add_function(wrap_pyfunction!(line_bundle, m)?)?;
    m.add_function(wrap_pyfunction!(tangent, m)?)?;
    m.add_function(wrap_pyfunction!(cotangent, m)?)?;
    m.add_function(wrap_pyfunction!(proj_bundle, m)?)?;
    m.add_function(wrap_pyfunction!(disc_degree, m)?)?;
    m.add_function(wrap_pyfunction!(disc_degree_jet, m)?)?;
    m.add_function(wrap_pyfunction!(branch_class, m)?)?;
    m.add_function(wrap_pyfunction!(chi_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(bogomolov_check, m)?)?;
    m.add_function(wrap_pyfunction!(eval_script, m)?)?;
    m.add_function(wrap_pyfunction!(eval_expr, m)?)?;
    Ok(())
}
