use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn hilbext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_fixtures() {
    let out = hilbext(&["validate", path(&fixture("h3.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "H3: hil, 3 elements\npass\n");

    // G4 has every binary join
    let out = hilbext(&["validate", path(&fixture("g4.json")), "--variety", "hils"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // but no bottom
    let out = hilbext(&["validate", path(&fixture("g4.json")), "--variety", "hils0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validate_reports_axiom_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = fs::read_to_string(fixture("h3.json"))
        .unwrap()
        .replace("[0, 0, 2]", "[0, 2, 2]");
    fs::write(&bad, text).unwrap();
    let out = hilbext(&["validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("fail"));
}

#[test]
fn malformed_documents_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("range.json");
    fs::write(
        &bad,
        r#"{"arrow": [[0, 2], [0, 0]], "name": "r", "one": 0, "size": 2, "variety": "hil"}"#,
    )
    .unwrap();
    let out = hilbext(&["validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("range.json: arrow"), "{err}");

    let out = hilbext(&["validate", path(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let out = hilbext(&["extend", path(&fixture("h3.json")), "--target", "boolean"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dual_of_g4() {
    let out = hilbext(&["dual", path(&fixture("g4.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("X(G4): 3 points\n"), "{text}");
    assert!(text.contains("  c -> {P1, P2}\n"), "{text}");
    assert!(text.contains("  P0 < P1\n  P0 < P2\n"), "{text}");
}

#[test]
fn extend_h3_and_emit() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("h3is.json");
    let out = hilbext(&[
        "extend",
        path(&fixture("h3.json")),
        "--target",
        "is",
        "--emit",
        path(&out_file),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("H3^is: 4 elements over 2 points\n"));
    let out = hilbext(&["validate", path(&out_file)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("H3^is: is, 4 elements"));
}

#[test]
fn extend_g4_along_ghey_and_dagger() {
    let out = hilbext(&["extend", path(&fixture("g4.json")), "--target", "ghey"]);
    assert!(
        stdout(&out).starts_with("G4^ghey: 5 elements"),
        "{}",
        stdout(&out)
    );
    let out = hilbext(&["extend", path(&fixture("g4.json")), "--target", "dagger"]);
    assert!(
        stdout(&out).starts_with("G4^dagger: 6 elements"),
        "{}",
        stdout(&out)
    );
    // G4 has no bottom
    let out = hilbext(&["extend", path(&fixture("g4.json")), "--target", "hey"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lift_fixture_morphism() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("lift.json");
    let m = fixture("h3_to_g4.json");
    let out = hilbext(&["lift", path(&m), "--target", "is", "--emit", path(&emitted)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certificate: intertwines = true, is morphism = true"));
    let text = fs::read_to_string(&emitted).unwrap();
    assert!(text.contains("\"tag\": \"is\""), "{text}");

    // f(x ∨ y) = 1 but f(x) ∨ f(y) = c
    let out = hilbext(&["lift", path(&m), "--target", "ghey"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a hils morphism"));
}

#[test]
fn enumerate_counts_and_emits() {
    let dir = tempfile::tempdir().unwrap();
    let out = hilbext(&[
        "enumerate",
        "--variety",
        "hil",
        "--size",
        "3",
        "--emit",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("  size 3: 2\n") && text.contains("  total: 4\n"),
        "{text}"
    );
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 4);

    let out = hilbext(&["enumerate", "--variety", "hil", "--size", "40"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_duality_is_deterministic() {
    let a = hilbext(&["verify", "--suite", "duality", "--max-size", "3"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert!(text.ends_with("11 of 11 checks passed\n"), "{text}");
    let b = hilbext(&["verify", "--suite", "duality", "--max-size", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_all_small() {
    let out = hilbext(&["verify", "--suite", "all", "--max-size", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}
