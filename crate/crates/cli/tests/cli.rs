use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn qtsp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtsp"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn qtsp")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = qtsp(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_triangle(dir: &Path) -> PathBuf {
    let p = dir.join("tri.json");
    fs::write(&p, r#"{"n":3,"dist":[[0,1,2],[1,0,3],[2,3,0]]}"#).unwrap();
    p
}

fn instance(dir: &Path, n: usize, seed: u64) -> String {
    let name = format!("inst{n}_{seed}.json");
    ok(
        dir,
        &[
            "gen",
            "--n",
            &n.to_string(),
            "--seed",
            &seed.to_string(),
            "--out",
            &name,
        ],
    );
    name
}

/// Runs `args` twice with the same `--out` path and returns both outputs.
fn twice(dir: &Path, args: &[&str]) -> (Vec<u8>, Vec<u8>) {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", "result.out"]);
    ok(dir, &full);
    let a = fs::read(dir.join("result.out")).unwrap();
    ok(dir, &full);
    let b = fs::read(dir.join("result.out")).unwrap();
    (a, b)
}

#[test]
fn oracle_prints_triangle_cost() {
    let dir = TempDir::new().unwrap();
    let tri = write_triangle(dir.path());
    for m in ["bf", "hk"] {
        let out = ok(
            dir.path(),
            &["oracle", m, "--instance", tri.to_str().unwrap()],
        );
        assert!(out.contains("cost 6"), "{out}");
    }
}

#[test]
fn solve_commands_are_byte_reproducible() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let four = instance(d, 4, 3);
    let three = instance(d, 3, 1);
    let cmds: Vec<Vec<&str>> = vec![
        vec!["gen", "--n", "5", "--seed", "2", "--directed"],
        vec!["encode", "--instance", &four, "--form", "dwave"],
        vec!["encode", "--instance", &four, "--ising", "--normalize"],
        vec![
            "solve",
            "sa",
            "--instance",
            &four,
            "--seed",
            "4",
            "--runs",
            "4",
        ],
        vec![
            "solve",
            "qaoa",
            "--instance",
            &three,
            "--seed",
            "4",
            "--budget",
            "60",
            "--shots",
            "256",
        ],
        vec![
            "solve",
            "qaoa",
            "--instance",
            &three,
            "--ansatz",
            "hardware-efficient",
            "--layers",
            "1",
            "--budget",
            "40",
        ],
        vec![
            "solve",
            "qpe",
            "--instance",
            &four,
            "--seed",
            "4",
            "--shots",
            "128",
        ],
        vec![
            "solve",
            "qpe",
            "--instance",
            &four,
            "--tour",
            "0,2,1,3",
            "--shots",
            "128",
        ],
        vec![
            "solve",
            "ilp",
            "--instance",
            &four,
            "--seed",
            "4",
            "--runs",
            "2",
            "--sweep-scale",
            "0.2",
        ],
        vec![
            "solve",
            "ilp",
            "--instance",
            &four,
            "--formulation",
            "dfj",
            "--lp",
            "model.lp",
        ],
        vec!["oracle", "hk", "--instance", &four],
    ];
    for cmd in &cmds {
        let (a, b) = twice(d, cmd);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{cmd:?}");
    }
}

#[test]
fn bench_commands_are_byte_reproducible() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    for cmd in [
        vec![
            "bench",
            "violation",
            "--sizes",
            "4,5",
            "--trials",
            "3",
            "--sweep-scale",
            "0.05",
        ],
        vec![
            "bench", "quality", "--sizes", "4,5", "--trials", "2", "--format", "json",
        ],
        vec![
            "bench",
            "violation",
            "--sizes",
            "4,5",
            "--trials",
            "2",
            "--sweeps",
            "5",
            "--format",
            "svg",
        ],
    ] {
        let (a, b) = twice(d, &cmd);
        assert_eq!(a, b, "{cmd:?}");
    }
    // timed output differs only in the wall_ms column
    let strip = |bytes: Vec<u8>| -> Vec<String> {
        String::from_utf8(bytes)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    let (a, b) = twice(
        d,
        &[
            "bench",
            "runtime",
            "--backend",
            "hk",
            "--sizes",
            "5,6,7",
            "--trials",
            "2",
        ],
    );
    assert_eq!(strip(a), strip(b));
}

#[test]
fn report_rerenders_csv() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "bench",
            "quality",
            "--backend",
            "hk",
            "--sizes",
            "4,5",
            "--trials",
            "2",
            "--out",
            "q.csv",
        ],
    );
    ok(
        d,
        &[
            "report", "--input", "q.csv", "--format", "csv", "--out", "r.csv",
        ],
    );
    assert_eq!(
        fs::read(d.join("q.csv")).unwrap(),
        fs::read(d.join("r.csv")).unwrap()
    );
    ok(
        d,
        &[
            "report", "--input", "q.csv", "--format", "svg", "--out", "r.svg",
        ],
    );
    assert!(fs::read_to_string(d.join("r.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(qtsp(d, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qtsp(d, &["oracle", "bf", "--instance", "missing.json"])
            .status
            .code(),
        Some(2)
    );
    let big = instance(d, 5, 0);
    assert_eq!(
        qtsp(d, &["solve", "qaoa", "--instance", &big])
            .status
            .code(),
        Some(2)
    );
    // a negligible penalty and a single sweep leave the grid unconstrained
    let six = instance(d, 6, 0);
    let out = qtsp(
        d,
        &[
            "solve",
            "sa",
            "--instance",
            &six,
            "--penalty",
            "0.001",
            "--runs",
            "1",
            "--sweeps",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
}
