//! Python bindings: parse programs, apply operators and compute semantics.
//! Sets of atoms cross the boundary as sorted lists of names.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use aftlab::harness::{
    check_suite, generate_program, suite_programs, GeneratorConfig, Law, StandardOperators,
};
use aftlab::lattice::DEFAULT_MAX_ATOMS;
use aftlab::{ApproxPair, AtomSet, NdSet, OperatorKind, SemanticsKind};

create_exception!(aftlab, AftlabError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    AftlabError::new_err(e.to_string())
}

type NamePair = (Vec<String>, Vec<String>);
type Candidates = (Vec<Vec<String>>, Vec<Vec<String>>);
/// `(law, passed, checked, skipped, reproducer)`.
type LawRow = (String, bool, usize, usize, Option<String>);

/// A parsed, canonicalized program.
#[pyclass(frozen, name = "Program", module = "aftlab")]
struct PyProgram {
    inner: aftlab::Program,
}

impl PyProgram {
    fn set(&self, names: Vec<String>) -> PyResult<AtomSet> {
        self.inner.universe().set_of(names.iter()).map_err(err)
    }

    fn names(&self, set: AtomSet) -> Vec<String> {
        self.inner.universe().names_of(set)
    }

    fn nd(&self, sets: &NdSet) -> Vec<Vec<String>> {
        sets.iter().map(|s| self.names(*s)).collect()
    }
}

#[pymethods]
impl PyProgram {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyProgram {
            inner: aftlab::parse(text).map_err(err)?,
        })
    }

    /// Atom names in universe order.
    #[getter]
    fn universe(&self) -> Vec<String> {
        self.inner.universe().names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.rules().len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Program({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Applies `operator` to the pair `(lower, upper)` and returns the
    /// lower and upper candidate sets.
    fn apply(
        &self,
        operator: &str,
        lower: Vec<String>,
        upper: Vec<String>,
    ) -> PyResult<Candidates> {
        let op: OperatorKind = operator.parse().map_err(err)?;
        let i = ApproxPair::new(self.set(lower)?, self.set(upper)?);
        let r = op.apply(&self.inner, i).map_err(err)?;
        Ok((self.nd(&r.lower), self.nd(&r.upper)))
    }

    /// Models of `semantics` as `(lower, upper)` pairs. Operator-based
    /// semantics need `operator`.
    #[pyo3(signature = (semantics, operator=None, max_atoms=DEFAULT_MAX_ATOMS))]
    fn semantics(
        &self,
        semantics: &str,
        operator: Option<&str>,
        max_atoms: usize,
    ) -> PyResult<Vec<NamePair>> {
        let kind: SemanticsKind = semantics.parse().map_err(err)?;
        let op = operator
            .map(|o| o.parse::<OperatorKind>())
            .transpose()
            .map_err(err)?;
        let r = aftlab::run_semantics(kind, op, &self.inner, max_atoms).map_err(err)?;
        Ok(r.models
            .iter()
            .map(|m| (self.names(m.lower), self.names(m.upper)))
            .collect())
    }
}

/// Parses a program.
#[pyfunction]
fn parse(text: &str) -> PyResult<PyProgram> {
    PyProgram::new(text)
}

/// A random program; same seed, same program.
#[pyfunction]
#[pyo3(signature = (atoms=3, rules=4, neg_prob=0.3, agg_prob=0.2, disj_width=2, max_body=2, negated_aggregates=false, seed=0))]
#[allow(clippy::too_many_arguments)]
fn generate(
    atoms: usize,
    rules: usize,
    neg_prob: f64,
    agg_prob: f64,
    disj_width: usize,
    max_body: usize,
    negated_aggregates: bool,
    seed: u64,
) -> PyResult<PyProgram> {
    let cfg = GeneratorConfig {
        atoms,
        rules,
        neg_prob,
        agg_prob,
        disj_width,
        max_body,
        negated_aggregates,
        seed,
    };
    Ok(PyProgram {
        inner: generate_program(&cfg).map_err(err)?,
    })
}

/// Runs laws over the corpus and `count` random programs. Returns one
/// `(law, passed, checked, skipped, reproducer)` tuple per law, where the
/// reproducer is the shrunk failing program text or None.
#[pyfunction]
#[pyo3(signature = (laws=None, count=200, seed=0))]
fn check_laws(laws: Option<Vec<String>>, count: usize, seed: u64) -> PyResult<Vec<LawRow>> {
    let laws: Vec<Law> = match laws {
        None => Law::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|n| n.parse())
            .collect::<Result<_, _>>()
            .map_err(err)?,
    };
    let cfg = GeneratorConfig {
        seed,
        ..GeneratorConfig::default()
    };
    let programs = suite_programs(&cfg, count).map_err(err)?;
    Ok(check_suite(&laws, &programs, &StandardOperators)
        .into_iter()
        .map(|r| {
            let passed = r.passed();
            let reproducer = r.counterexample.map(|c| c.program.to_string());
            (r.law.to_string(), passed, r.checked, r.skipped, reproducer)
        })
        .collect())
}

#[pymodule]
#[pyo3(name = "aftlab")]
pub fn aftlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProgram>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    m.add("AftlabError", m.py().get_type::<AftlabError>())?;
    m.add(
        "OPERATORS",
        OperatorKind::ALL
            .iter()
            .map(|k| k.name())
            .collect::<Vec<_>>(),
    )?;
    Ok(())
}
