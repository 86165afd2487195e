//! End-to-end checks of the `fvs` binary: output format and exit codes.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use fvs::cli::write_instance;
use fvs::graph::Graph;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fvs"))
        .args(args)
        .output()
        .expect("binary must spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("binary must exit normally")
}

fn write_file(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn write_graph(dir: &TempDir, name: &str, g: &Graph) -> String {
    write_file(dir, name, &write_instance(g))
}

const TRIANGLE: &str = "3 3\n1 2\n2 3\n3 1\n";

#[test]
fn solve_answers_yes_with_the_vertex_list() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "t.fvs", TRIANGLE);
    let out = run(&["solve", &path, "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "YES\n1\n");
}

#[test]
fn solve_answers_no_under_budget() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "t.fvs", TRIANGLE);
    let out = run(&["solve", &path, "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NO\n");
}

#[test]
fn solve_rejects_negative_budget() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "t.fvs", TRIANGLE);
    let out = run(&["solve", &path, "-1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn solve_reports_missing_files() {
    let out = run(&["solve", "/nonexistent/instance.fvs", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot access"));
}

#[test]
fn solve_reports_parse_errors_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "bad.fvs", "3 2\n1 2\nbogus line\n");
    let out = run(&["solve", &path, "1"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains(":3:"), "no line number in: {err}");
}

#[test]
fn solve_rejects_cyclic_forbid_list() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "t.fvs", TRIANGLE);
    let out = run(&["solve", &path, "1", "--forbid-list", "1,2,3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cycle"));
}

#[test]
fn solve_rejects_unknown_forbidden_vertices() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "t.fvs", TRIANGLE);
    let out = run(&["solve", &path, "1", "--forbid-list", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not in the graph"));
}

#[test]
fn forbid_list_steers_the_solution() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "t.fvs", TRIANGLE);
    let out = run(&["solve", &path, "1", "--forbid-list", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "YES\n2\n");
}

#[test]
fn stats_block_has_stable_keys_and_sane_values() {
    let dir = TempDir::new().unwrap();
    let path = write_graph(&dir, "petersen.fvs", &common::petersen());
    let out = run(&["solve", &path, "3", "--stats"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("YES\n"));
    let value = |key: &str| -> u64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap_or_else(|| panic!("missing {key} in: {text}"))
            .parse()
            .unwrap()
    };
    assert!(value("nodes_visited") >= 1);
    assert!(value("max_path_length") <= 13);
    let _ = value("cutoff_hits");
    assert!(value("f_prime") <= 9);
}

#[test]
fn audit_flag_reports_ok_on_real_runs() {
    let dir = TempDir::new().unwrap();
    let path = write_graph(&dir, "petersen.fvs", &common::petersen());
    let out = run(&["solve", &path, "3", "--audit"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("AUDIT OK\n"));
    // a negative answer still audits (vacuously clean)
    let out = run(&["solve", &path, "2", "--audit"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).ends_with("AUDIT OK\n"));
}

#[test]
fn no_cutoff_agrees_on_the_answer() {
    let dir = TempDir::new().unwrap();
    for (name, g) in [
        ("petersen.fvs", common::petersen()),
        ("k5.fvs", common::complete_graph(5)),
        ("c7.fvs", common::cycle_graph(7)),
    ] {
        let path = write_graph(&dir, name, &g);
        for k in 0..4 {
            let budget = k.to_string();
            let plain = run(&["solve", &path, &budget]);
            let free = run(&["solve", &path, &budget, "--no-cutoff"]);
            assert_eq!(code(&plain), code(&free), "{name} k={k}");
        }
    }
}

#[test]
fn minimum_prints_size_then_vertices() {
    let dir = TempDir::new().unwrap();
    let tree = write_file(&dir, "tree.fvs", "4 3\n1 2\n2 3\n2 4\n");
    let out = run(&["minimum", &tree]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0\n");

    let k6 = write_graph(&dir, "k6.fvs", &common::complete_graph(6));
    let out = run(&["minimum", &k6]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("4"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn oracle_matches_minimum_on_a_generated_instance() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("rand.fvs");
    let out = run(&["gen", "random", "10", "15", "42", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let by_oracle = run(&["oracle", out_path.to_str().unwrap()]);
    let by_minimum = run(&["minimum", out_path.to_str().unwrap()]);
    assert_eq!(code(&by_oracle), 0);
    assert_eq!(code(&by_minimum), 0);
    let first = |o: &Output| stdout(o).lines().next().unwrap().to_string();
    assert_eq!(first(&by_oracle), first(&by_minimum));
}

#[test]
fn oracle_refuses_oversized_graphs() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "big.fvs", "26 0\n");
    let out = run(&["oracle", &path]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("capped"));
}

#[test]
fn oracle_output_shape() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "t.fvs", TRIANGLE);
    let out = run(&["oracle", &path]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n1\n");
}

#[test]
fn gen_random_is_byte_identical_per_seed() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.fvs");
    let b = dir.path().join("b.fvs");
    for (path, seed) in [(&a, "7"), (&b, "7")] {
        let out = run(&["gen", "random", "12", "20", seed, path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("c.fvs");
    run(&["gen", "random", "12", "20", "8", c.to_str().unwrap()]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn gen_edgeless_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("empty.fvs");
    let out = run(&["gen", "random", "6", "0", "1", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, "6 0\n");
    let g = fvs::cli::parse_instance(&text).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (6, 0));
}

#[test]
fn gen_planted_then_solve_within_budget() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("planted.fvs");
    let out = run(&["gen", "planted", "40", "3", "5", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let solved = run(&["solve", path.to_str().unwrap(), "3", "--stats", "--audit"]);
    assert_eq!(code(&solved), 0);
    let text = stdout(&solved);
    assert!(text.starts_with("YES\n"));
    assert!(text.contains("AUDIT OK"));
    // verify the printed vertices against the parsed instance
    let g = fvs::cli::parse_instance(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let solution: Vec<u32> = text
        .lines()
        .skip(1)
        .take_while(|l| l.chars().all(|c| c.is_ascii_digit()) && !l.is_empty())
        .map(|l| l.parse().unwrap())
        .collect();
    common::assert_sound(&g, &BTreeSet::new(), 3, &solution);
}

#[test]
fn gen_rejects_impossible_shapes() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("never.fvs");
    let out = run(&["gen", "planted", "5", "5", "1", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let out = run(&["gen", "random", "4", "100", "1", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!Path::new(&path).exists());
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
    let out = run(&["solve"]);
    assert_eq!(code(&out), 2);
}
