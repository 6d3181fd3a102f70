//! Loads the module into an embedded interpreter and drives it from Python.

use pyo3::ffi::c_str;
use pyo3::prelude::*;

use aftlab_py::aftlab_module;

#[test]
fn module_works_from_python() {
    pyo3::append_to_inittab!(aftlab_module);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            c_str!(
                r#"
import aftlab
p = aftlab.parse("p | q :- not q.")
assert p.universe == ["p", "q"]
assert p.apply("ic", [], ["p", "q"]) == ([[]], [["p"], ["q"], ["p", "q"]])
assert p.semantics("stable", "ic") == [([], ["q"]), (["p"], ["p"])]
assert aftlab.parse("q :- not p.\np :- p.").semantics("kk") == [([], ["p", "q"])]
try:
    p.semantics("stable")
except aftlab.AftlabError as e:
    assert isinstance(e, ValueError)
else:
    raise AssertionError("operator is required")
"#
            ),
            None,
            None,
        )
        .unwrap();
    });
}
