use std::ffi::CString;

use pyo3::prelude::*;
use pystrongk::pystrongk;

#[test]
fn module_runs_in_an_embedded_interpreter() {
    pyo3::append_to_inittab!(pystrongk);
    Python::initialize();
    Python::attach(|py| {
        let code = CString::new(
            r#"
import pystrongk as sk
k4 = sk.Digraph.complete(4)
r = sk.lambda_k(k4, 3)
assert r["value"] == 3, r
assert sk.verify_packing(k4, r["witness"], r["parts"])
assert sk.complete_lambda(4, 4) == 2
try:
    sk.Digraph(2, [(0, 5)])
except ValueError:
    pass
else:
    raise AssertionError("out-of-range arc accepted")
"#,
        )
        .unwrap();
        py.run(&code, None, None).unwrap();
    });
}
