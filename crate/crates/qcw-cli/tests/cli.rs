use std::path::Path;
use std::process::Command;

use qcw_cli::{writer, Workspace};

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn qcw(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcw"))
        .args(args)
        .current_dir(crate_dir())
        .env_remove("QCW_BUDGET")
        .output()
        .expect("qcw runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

/// Compares against tests/golden/<name>.txt; QCW_BLESS=1 rewrites the file.
fn golden(name: &str, args: &[&str], code: i32) {
    let (text, got) = qcw(args);
    assert_eq!(got, code, "exit code of {args:?}\n{text}");
    let path = crate_dir().join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("QCW_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(text, want, "report for {args:?} differs from {}", path.display());
}

#[test]
fn cohomology_of_minus_two() {
    golden("cohomology_om2", &["cohomology", "O(-2)", "--window", "-4..4"], 0);
}

#[test]
fn twist_is_quasi_coherent() {
    golden("qcheck_o3", &["qcheck", "O(3)"], 0);
}

#[test]
fn ext_between_simples() {
    golden("ext_s0_s1", &["ext", "S0", "S1", "--poset", "A2"], 0);
    let (text, _) = qcw(&["ext", "S0", "S1", "--degree", "2"]);
    assert!(text.contains("dimension: 0"), "{text}");
}

#[test]
fn shipped_examples_load() {
    golden("validate_p1", &["-f", "examples/p1.qcw", "validate"], 0);
    golden("qcheck_bad", &["-f", "examples/p1.qcw", "qcheck", "Bad"], 1);
    golden("cech_o1", &["-f", "examples/p1.qcw", "cech", "O1"], 0);
    golden("hom_sections", &["-f", "examples/p1.qcw", "hom", "O0", "O1"], 0);
}

#[test]
fn model_structure_commands() {
    let f = ["-f", "examples/a2.qcw"];
    let with = |rest: &[&'static str]| f.iter().copied().chain(rest.iter().copied()).collect::<Vec<_>>();
    golden("lift_obstruction", &with(&["lift", "inc", "proj"]), 1);
    golden("triple_even", &with(&["triple-verify", "Even"]), 1);
    golden("classify_q", &with(&["classify", "q", "--triple", "Model"]), 0);
    golden("approx_s0", &with(&["approx", "S0", "--pair", "projective"]), 0);
    golden("ho_hom_ext", &with(&["ho-hom", "sphere(S0,0)", "sphere(S1,-1)", "--triple", "Model"]), 0);
}

#[test]
fn empty_file_is_an_empty_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.qcw");
    std::fs::write(&path, "# nothing here\n").unwrap();
    let (text, code) = qcw(&["-f", path.to_str().unwrap(), "validate"]);
    assert_eq!(code, 0);
    assert!(text.contains("definitions: 0"), "{text}");
}

#[test]
fn duplicate_names_cite_both_sites() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.qcw");
    std::fs::write(&path, "module M over A2 { 0 gens 1 }\n\nmodule M over A2 { 1 gens 1 }\n").unwrap();
    let (text, code) = qcw(&["-f", path.to_str().unwrap(), "validate"]);
    assert_eq!(code, 2);
    assert!(text.contains("kind: ReferenceError"), "{text}");
    assert!(text.contains("dup.qcw:3") && text.contains("dup.qcw:1"), "{text}");
}

#[test]
fn errors_exit_with_two() {
    let (text, code) = qcw(&["qcheck", "Nowhere"]);
    assert_eq!(code, 2);
    assert!(text.contains("status: error"), "{text}");
    assert_eq!(qcw(&["cohomology", "O(1)", "--window", "3..1"]).1, 2);
}

#[test]
fn reports_are_byte_stable_and_can_go_to_a_file() {
    let args = ["-f", "examples/a2.qcw", "triple-verify", "Proj"];
    let (a, _) = qcw(&args);
    let (b, _) = qcw(&args);
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let (stdout, code) = qcw(&["qcheck", "O(3)", "--report", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("quasi_coherent: yes"));
}

#[test]
fn budget_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcw"))
        .args(["approx", "S0", "--pair", "injective"])
        .env("QCW_BUDGET", "0")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(2), "{text}");
    assert!(text.contains("budget"), "{text}");
}

#[test]
fn examples_round_trip() {
    for file in ["examples/p1.qcw", "examples/a2.qcw"] {
        let mut ws = Workspace::new();
        ws.load(&crate_dir().join(file)).unwrap();
        let text = writer::workspace(&ws).unwrap();
        let mut again = Workspace::new();
        again.load_str("again", &text).unwrap();
        for (a, b) in ws.entries().iter().zip(again.entries()) {
            assert_eq!(a.object, b.object, "{}", a.name);
        }
        assert_eq!(ws.entries().len(), again.entries().len());
    }
}
