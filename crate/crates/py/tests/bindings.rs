use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module<F: FnOnce(&Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "hilbext").unwrap();
        hilbext_py::hilbext_py(&m).unwrap();
        f(&m);
    });
}

#[test]
fn extension_of_h3_from_python() {
    with_module(|m| {
        let alg = m
            .getattr("Algebra")
            .unwrap()
            .call_method1("fixture", ("h3",))
            .unwrap();
        assert!(alg
            .call_method1("validate", ("hil",))
            .unwrap()
            .extract::<bool>()
            .unwrap());
        let ext = alg.call_method1("extend", ("is",)).unwrap();
        assert_eq!(ext.len().unwrap(), 4);
        let emb: Vec<usize> = ext.call_method0("embedding").unwrap().extract().unwrap();
        assert_eq!(emb, vec![3, 1, 2]);
    });
}

#[test]
fn bad_target_raises() {
    with_module(|m| {
        let alg = m
            .getattr("Algebra")
            .unwrap()
            .call_method1("fixture", ("h3",))
            .unwrap();
        let e = alg.call_method1("extend", ("boolean",)).unwrap_err();
        Python::attach(|py| {
            assert!(e.is_instance(py, &m.getattr("HilbextError").unwrap().cast_into().unwrap()));
        });
    });
}

#[test]
fn counts_from_python() {
    with_module(|m| {
        let c: Vec<usize> = m
            .getattr("counts")
            .unwrap()
            .call1(("hil", 4))
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(c, vec![0, 1, 1, 2, 6]);
    });
}
