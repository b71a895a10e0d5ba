//! The `sl3qt` binary: outputs and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl3qt")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("sl3qt-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

const QUAD: &str = "quadrilateral.tri";
const WEBS: &str = "quadrilateral.webs";

fn p(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn mutating_twice_prints_the_original_seed() {
    let dir = scratch("mutate");
    let seed = dir.join("two.seed");
    std::fs::write(&seed, "node 1\nnode 2\nnode 3 frozen\nnode 4 frozen\neps 1 2 1\neps 2 3 -1\neps 3 4 1/2\n").unwrap();
    let o = run(&["mutate", seed.to_str().unwrap(), "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "node 1\nnode 2\nnode 3 frozen\nnode 4 frozen\neps 1 2 1\neps 2 3 -1\neps 3 4 1/2\n");
}

#[test]
fn mutating_a_frozen_node_is_an_input_error() {
    let o = run(&["mutate", &p("triangle.tri"), "a:1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("frozen"));
}

#[test]
fn trace_prints_one_state() {
    let o = run(&["trace", &p(QUAD), &p(WEBS), "--web", "case1", "--state", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "case1 (1,1) +w^{0} Xa:1^{2/3} Xa:2^{1/3} Xb:1^{1/3} Xb:2^{2/3} XL:t^{2/3}\n");
    let o = run(&["trace", &p(QUAD), &p(WEBS), "--web", "case1", "--state", "2,1"]);
    assert_eq!(stdout(&o), "case1 (2,1) 0\n");
}

#[test]
fn trace_renderings() {
    let base = ["trace", &p(QUAD), &p(WEBS), "--web", "case1", "--state", "1,1"].map(String::from);
    let with = |extra: &[&str]| {
        let mut a: Vec<&str> = base.iter().map(String::as_str).collect();
        a.extend_from_slice(extra);
        stdout(&run(&a))
    };
    assert_eq!(with(&["--omega-one"]), "case1 (1,1) +Xa:1^{2/3} Xa:2^{1/3} Xb:1^{1/3} Xb:2^{2/3} XL:t^{2/3}\n");
    assert!(with(&["--render=latex-like"]).contains("[X_{a:1}^{2/3} X_{a:2}^{1/3} X_{b:1}^{1/3} X_{b:2}^{2/3} X_{L:t}^{2/3}]_{\\rm Weyl}"));
    assert_eq!(run(&["trace", &p(QUAD), &p(WEBS), "--render=fancy"]).status.code(), Some(2));
}

#[test]
fn loop_trace_has_three_terms() {
    let o = run(&["trace", &p("punctured_square.tri"), &p("punctured_square.webs"), "--web", "left"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.starts_with("left loop "));
    assert_eq!(line.matches("+w^{0}").count(), 3);
}

#[test]
fn flip_check_passes_on_every_state() {
    let o = run(&["flip-check", &p(QUAD), "d", &p(WEBS), "--web", "case3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches(": ok").count(), 9);
    assert!(out.contains("  classical   agrees"));
    assert!(out.contains("\nalpha 0 0 1 1 0 0 0 -1 -1 0 -1 -1 0\n"));
}

#[test]
fn tables_print_the_case_one_exponent_rows() {
    let o = run(&["tables", &p(QUAD), "d", &p(WEBS), "--web", "case1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\nalpha 0 1 0 0 0 0 0\n"));
    assert_eq!(run(&["tables", &p(QUAD), "d", &p(WEBS), "--web", "nope"]).status.code(), Some(2));
}

#[test]
fn consistency_verdicts() {
    let dir = scratch("relations");
    let seed = dir.join("two.seed");
    std::fs::write(&seed, "node 1\nnode 2\neps 1 2 1\n").unwrap();
    let s = seed.to_str().unwrap();
    let o = run(&["consistency", s, "pentagon:1,2"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "ok   pentagon:1,2\n".to_string()));
    assert_eq!(run(&["consistency", s, "involution:2"]).status.code(), Some(0));
    let o = run(&["consistency", s, "1 2 1 2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
    assert_eq!(run(&["consistency", s, "3"]).status.code(), Some(2));
}

#[test]
fn corrupted_golden_file_fails_with_the_differing_line() {
    let dir = scratch("golden");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    for e in std::fs::read_dir(&src).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
    let g = dir.to_str().unwrap();
    let ok = run(&["verify-all", "--only", "2", "--golden-dir", g]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let f = dir.join("case1.txt");
    let text = std::fs::read_to_string(&f).unwrap().replace("alpha 0 1 0", "alpha 0 0 0");
    std::fs::write(&f, text).unwrap();
    let bad = run(&["verify-all", "--only", "2", "--golden-dir", g]);
    assert_eq!(bad.status.code(), Some(1));
    let out = stdout(&bad);
    assert!(out.contains("FAIL golden case1.txt"), "{out}");
    assert!(out.contains("alpha 0 1 0"), "{out}");
    let regen = run(&["verify-all", "--only", "2", "--golden-dir", g, "--regen-golden"]);
    assert_eq!(regen.status.code(), Some(0));
    assert_eq!(run(&["verify-all", "--only", "2", "--golden-dir", g]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["trace", "/nonexistent.tri", &p(WEBS)]).status.code(), Some(2));
    assert_eq!(run(&["trace", &p(QUAD), &p(WEBS), "--state", "4,1"]).status.code(), Some(2));
    assert_eq!(run(&["flip-check", &p(QUAD), "a", &p(WEBS)]).status.code(), Some(2));
    assert_eq!(run(&["verify-all", "--only", "10"]).status.code(), Some(2));
}
