use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn hm3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hm3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = p(dir, name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let o = hm3(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn threshold_prints_formula_value() {
    let o = hm3(&["threshold", "--n", "9"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "14");
    assert_eq!(code(&hm3(&["threshold", "--n", "10"])), 64);
}

#[test]
fn linkfact_reports_full_classification() {
    let o = hm3(&["linkfact"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "256/256 classified, 0 other");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&hm3(&[])), 64);
    assert_eq!(code(&hm3(&["frobnicate"])), 64);
    assert_eq!(code(&hm3(&["solve"])), 64);
    assert_eq!(code(&hm3(&["gen", "--kind", "extremal", "--n", "10"])), 64);
    assert_eq!(code(&hm3(&["--help"])), 0);
}

#[test]
fn solve_below_threshold_reports_maximum() {
    let dir = TempDir::new().unwrap();
    let file = gen(&dir, "e9.hm3", &["--kind", "extremal", "--n", "9"]);
    let w = p(&dir, "w");
    let o = hm3(&["solve", &file, "--witness", &w]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("maximum matching 2"), "{}", stdout(&o));
    assert!(fs::read_to_string(&w).unwrap().starts_with("s MAXIMUM 2\n"));
    assert_eq!(code(&hm3(&["verify", &file, &w])), 0);
}

#[test]
fn solve_and_verify_perfect() {
    let dir = TempDir::new().unwrap();
    let file = gen(&dir, "p12.hm3", &["--kind", "extremal-plus", "--n", "12"]);
    let w = p(&dir, "w");
    assert_eq!(code(&hm3(&["solve", &file, "--witness", &w])), 0);
    assert_eq!(code(&hm3(&["verify", &file, &w])), 0);

    // a witness claiming a non-edge is rejected with exit 1
    fs::write(&w, "s PERFECT 4\ne 5 6 7\ne 1 2 3\ne 4 8 9\ne 10 11 12\n").unwrap();
    let o = hm3(&["verify", &file, &w]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not an edge"));
}

#[test]
fn data_errors_exit_65() {
    let dir = TempDir::new().unwrap();
    let bad = p(&dir, "bad.hm3");
    fs::write(&bad, "p hm3 3 1\ne 1 2 2\n").unwrap();
    let o = hm3(&["solve", &bad]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&hm3(&["solve", &p(&dir, "missing.hm3")])), 65);
    let seven = p(&dir, "seven.hm3");
    fs::write(&seven, "p hm3 7 0\n").unwrap();
    assert_eq!(code(&hm3(&["solve", &seven])), 65);
}

#[test]
fn gen_is_deterministic_and_canonical() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, "a", &["--kind", "random", "--n", "9", "--p", "0.3", "--seed", "4"]);
    let b = gen(&dir, "b", &["--kind", "random", "--n", "9", "--p", "0.3", "--seed", "4"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let text = fs::read_to_string(&a).unwrap();
    let h = hm3::format::parse_hypergraph(&text).unwrap();
    assert_eq!(hm3::format::write_hypergraph(&h), text);
}

#[test]
fn pipeline_paths_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let plus = gen(&dir, "plus.hm3", &["--kind", "extremal-plus", "--n", "30"]);
    let w = p(&dir, "w");
    let trace = p(&dir, "trace.csv");
    let o = hm3(&["pipeline", &plus, "--witness", &w, "--trace", &trace]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&hm3(&["verify", &plus, &w])), 0);
    assert!(fs::read_to_string(&trace).unwrap().starts_with("iter,cover_vertices,t,leftover,move,gain\n"));

    let below = gen(&dir, "below.hm3", &["--kind", "extremal", "--n", "12"]);
    let o = hm3(&["pipeline", &below]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert_eq!(code(&hm3(&["pipeline", &below, "--fallback", "off"])), 2);
    assert_eq!(code(&hm3(&["pipeline", &below, "--alpha", "2"])), 64);
}

#[test]
fn pipeline_agrees_with_solve() {
    let dir = TempDir::new().unwrap();
    for (i, args) in [
        vec!["--kind", "random", "--n", "12", "--p", "0.6", "--seed", "1"],
        vec!["--kind", "random", "--n", "12", "--p", "0.1", "--seed", "2"],
        vec!["--kind", "min-degree", "--n", "9", "--tau", "14", "--seed", "3"],
        vec!["--kind", "perturbed", "--n", "12", "--flips", "10", "--seed", "4"],
        vec!["--kind", "extremal", "--n", "15"],
    ]
    .iter()
    .enumerate()
    {
        let f = gen(&dir, &format!("g{i}"), args);
        let solve = code(&hm3(&["solve", &f]));
        let pipe = code(&hm3(&["pipeline", &f]));
        if solve != 2 && pipe != 2 {
            assert_eq!(solve, pipe, "instance {args:?}");
        }
    }
}

#[test]
fn sample_persists_nothing_when_threshold_holds() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cx");
    let o = hm3(&[
        "sample",
        "--n",
        "9",
        "--tau",
        "14",
        "--count",
        "50",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("n,tau,mode,examined,pm_count,counterexamples,runtime_ms\n9,14,sampled,50,50,0,"));
    assert!(!Path::new(&out).exists());
}

#[test]
fn sample_below_threshold_persists_counterexamples() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cx");
    let o = hm3(&[
        "sample",
        "--n",
        "6",
        "--tau",
        "1",
        "--count",
        "200",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let files: Vec<_> = fs::read_dir(&out).unwrap().collect();
    assert!(!files.is_empty());
    assert!(stdout(&o).contains("re-verified true"));
    assert!(!stdout(&o).contains("re-verified false"));
    for f in files {
        let path = f.unwrap().path();
        assert_eq!(code(&hm3(&["solve", path.to_str().unwrap()])), 1);
    }
}
