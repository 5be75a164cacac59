use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use roughspace::{PiecewiseLinearPath, TruncatedTensor, Word};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_roughspace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_path(dir: &Path, name: &str, increments: &[Vec<f64>]) -> String {
    let x = PiecewiseLinearPath::from_increments(increments[0].len(), increments).unwrap();
    let file = dir.join(name);
    x.write_file(&file).unwrap();
    file.to_str().unwrap().to_string()
}

#[test]
fn sig_prints_the_tensor_text() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_path(dir.path(), "l.json", &[vec![1.0, 0.0], vec![0.0, 1.0]]);
    let out = run(&["sig", &f, "--level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let t = TruncatedTensor::from_text(&stdout(&out)).unwrap();
    assert_eq!(t.coeff(&Word::new(vec![1, 2])).unwrap(), 1.0);
    assert_eq!(t.coeff(&Word::new(vec![2, 1])).unwrap(), 0.0);
    assert_eq!(t.coeff(&Word::new(vec![2, 2])).unwrap(), 0.5);
}

#[test]
fn reduce_emits_an_irreducible_path() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_path(
        dir.path(),
        "x.json",
        &[
            vec![1.0, 1.0],
            vec![0.0, 2.0],
            vec![0.0, -2.0],
            vec![3.0, 0.0],
        ],
    );
    let out = run(&["reduce", &f]);
    assert_eq!(out.status.code(), Some(0));
    let r = PiecewiseLinearPath::from_json(&stdout(&out)).unwrap();
    assert_eq!(r.segments(), vec![vec![1.0, 1.0], vec![3.0, 0.0]]);
    let out = run(&["reduce", &f, "--csv"]);
    let r = PiecewiseLinearPath::from_csv(&stdout(&out)).unwrap();
    assert_eq!(r.num_segments(), 2);
}

#[test]
fn pvar_exact_and_lifted() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_path(dir.path(), "ex.csv", &[vec![1.1], vec![-0.2], vec![1.1]]);
    let out = run(&["pvar", &f, "--p", "1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("value: 2\n"), "{text}");
    assert!(text.contains("exact: true"));
    let out = run(&["pvar", &f, "--p", "1.5", "--level", "2", "--refine", "1"]);
    let text = stdout(&out);
    assert!(text.contains("exact: false"));
    assert!(text.contains("refinement_level: 1"));
    assert!(text.contains("gauge: homogeneous-norm"));
}

#[test]
fn reads_from_stdin() {
    let x = PiecewiseLinearPath::line(&[3.0, 4.0], 1.0).unwrap();
    let mut child = bin()
        .args(["pvar", "-", "--p", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(x.to_json().as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("value: 5\n"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2, \"horizon\": 1.0, \"times\": [0.0, 1.0], \"points\": [[1.0, 0.0], [2.0, 0.0]]}").unwrap();
    let out = run(&["sig", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = run(&["sig", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "no_such_check"]);
    assert_eq!(out.status.code(), Some(2));
    let f = write_path(dir.path(), "a.json", &[vec![1.0]]);
    let out = run(&["pvar", &f, "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "example_pvar", "--p", "1.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("== example_pvar: PASS"));
    let out = run(&["verify", "example_pvar", "--p", "1.1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));
}

#[test]
fn verify_all_is_deterministic() {
    let a = run(&[
        "verify",
        "all",
        "--p",
        "1.5",
        "--seed",
        "3",
        "--samples",
        "20",
    ]);
    let b = run(&[
        "verify",
        "all",
        "--p",
        "1.5",
        "--seed",
        "3",
        "--samples",
        "20",
    ]);
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .map(|l| l.split(" (").next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
    let text = stdout(&a);
    for check in roughspace::harness::CHECKS {
        assert!(text.contains(&format!("== {check}:")), "missing {check}");
    }
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z.csv");
    let out = run(&[
        "sweep",
        "unbounded_balls",
        "--csv",
        csv.to_str().unwrap(),
        "--n-max",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,norm_z_base_o,norm_z_base_x,d1_base_o,d1_base_x"
    );
    assert_eq!(lines.count(), 4);
    let out = run(&["sweep", "chen", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dist_pair_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_path(dir.path(), "a.json", &[vec![1.0, 0.0]]);
    let b = write_path(dir.path(), "b.json", &[vec![0.0, 1.0]]);
    let c = write_path(
        dir.path(),
        "c.json",
        &[vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
    );
    let out = run(&[
        "dist", &a, &b, "--metric", "star", "--p", "1", "--level", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), 2.0);
    let out = run(&[
        "dist", &a, &c, "--metric", "d", "--level", "2", "--refine", "1",
    ]);
    assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), 0.0);
    let out = run(&["dist", &a, &c, "--metric", "pvar", "--level", "1"]);
    assert!(stdout(&out).trim().parse::<f64>().unwrap() > 0.0);

    let list = dir.path().join("corpus.txt");
    std::fs::write(&list, "a.json\nb.json\n\nc.json\n").unwrap();
    let out = run(&[
        "dist",
        "--matrix",
        list.to_str().unwrap(),
        "--metric",
        "sig",
        "--p",
        "1.5",
        "--level",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "sig(p=1.5;N=3;k=4),a.json,b.json,c.json");
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("a.json,0,"));
    assert!(rows[3].ends_with(",0"));
}
