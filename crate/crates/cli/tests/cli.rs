use std::io::Write;
use std::process::{Command, Output};

use aluffi::reproduce::RunReport;
use tempfile::NamedTempFile;

fn aluffi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aluffi")).args(args).output().expect("run aluffi")
}

fn ideal_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn monomial_curve_with_jacobian_is_torsion_free() {
    let j = ideal_file("ring: x,y,z\nx^4 - y*z\ny^2 - x*z\nx^3*y - z^2\n");
    let out = aluffi(&["check", j.path().to_str().unwrap(), "--jacobian"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn check_json_reports_status() {
    let j = ideal_file("ring: x,y,z\nx*y\ny*z\nx*z\n");
    let out = aluffi(&["check", j.path().to_str().unwrap(), "--jacobian", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn five_cycle_is_not_torsion_free() {
    assert_eq!(code(&aluffi(&["graph", "cycle:5"])), 1);
    assert_eq!(code(&aluffi(&["graph", "cycle:4", "--oracle"])), 0);
}

#[test]
fn graph_file_source() {
    let g = aluffi::graphs::family_generator(&"cycle:5".parse().unwrap()).unwrap();
    let f = ideal_file(&g.to_file());
    assert_eq!(code(&aluffi(&["graph", f.path().to_str().unwrap()])), 1);
}

#[test]
fn containment_failure_exits_4() {
    let j = ideal_file("ring: x,y\nx^2\n");
    let i = ideal_file("ring: x,y\ny\n");
    let out = aluffi(&["check", j.path().to_str().unwrap(), i.path().to_str().unwrap()]);
    assert_eq!(code(&out), 4);
}

#[test]
fn parse_error_exits_3() {
    let j = ideal_file("ring: x,y\nx^^2\n");
    assert_eq!(code(&aluffi(&["check", j.path().to_str().unwrap(), "--jacobian"])), 3);
    assert_eq!(code(&aluffi(&["check", "/nonexistent/ideal.txt", "--jacobian"])), 3);
    assert_eq!(code(&aluffi(&["pencil", "Q(3)"])), 3);
}

#[test]
fn pencil_prediction_and_verification() {
    assert_eq!(code(&aluffi(&["pencil", "J(2;0) N(1)"])), 1);
    assert_eq!(code(&aluffi(&["pencil", "N(1) J(1;1) J(1;2)", "--verify"])), 0);
}

#[test]
fn hilbert_of_scroll() {
    let out = aluffi(&["hilbert", "--pencil", "S(3)"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("(1+2v)/(1-v)^2"));
}

#[test]
fn reproduce_graph_group_as_json() {
    let out = aluffi(&["reproduce-paper", "--section", "3", "--json"]);
    assert_eq!(code(&out), 0);
    let report: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.items.is_empty());
    assert!(report.items.iter().all(|i| i.section == 3 && i.agree));
}
