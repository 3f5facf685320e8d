//! End-to-end runs of the `cursorq` binary.

use std::path::Path;
use std::process::{Command, Output};

fn cursorq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cursorq"))
        .args(args)
        .env("CURSORQ_OUT", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compile_reports_and_writes_the_graph() {
    let dir = tempfile::tempdir().unwrap();
    let o = cursorq(dir.path(), &["compile", "--machine", "subroutine", "--mu", "6", "-K", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("sites: 27\n"), "{out}");
    assert!(out.contains("logical path length: 507\n"));
    assert!(out.contains("oracle calls at j: [14, 19, 27,"));
    let text = std::fs::read_to_string(dir.path().join("subroutine.graph")).unwrap();
    assert!(text.starts_with("sites=27 mu=6 K=6\n"));

    let o = cursorq(dir.path(), &["compile", "--machine", "ccnot", "-o", "ccnot.txt"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sites: 12\n") && stdout(&o).contains("length: 6\n"));

    let o = cursorq(dir.path(), &["compile", "--machine", "full", "--mu", "3", "-K", "1"]);
    assert!(stdout(&o).contains("sites: 43\n"));
}

#[test]
fn audit_passes_on_built_machines() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["audit", "--machine", "chain", "--mu", "2", "--s", "9"][..],
        &["audit", "--machine", "subroutine", "--mu", "2", "-K", "1"][..],
    ] {
        let o = cursorq(dir.path(), args);
        assert!(o.status.success(), "{}", stdout(&o));
        assert!(stdout(&o).ends_with("PASS\n"));
    }
    let o = cursorq(dir.path(), &["audit", "--machine", "full", "--mu", "3", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the cap"));
}

#[test]
fn corrupted_graph_file_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("chain.graph");
    let o = cursorq(dir.path(), &["compile", "--machine", "chain", "-o", graph.to_str().unwrap()]);
    assert!(o.status.success());
    let g = graph.to_str().unwrap();
    assert!(cursorq(dir.path(), &["audit", "--graph", g]).status.success());

    let text = std::fs::read_to_string(&graph).unwrap();
    std::fs::write(&graph, text.replacen("2 3 B", "2 3 PPLUS[1,z]", 1)).unwrap();
    let o = cursorq(dir.path(), &["audit", "--graph", g]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("FAIL\n"));

    std::fs::write(&graph, text.replacen("2 3 B", "2 3 BOGUS", 1)).unwrap();
    let o = cursorq(dir.path(), &["audit", "--graph", g]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn peaks_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = cursorq(dir.path(), &["peaks", "--mu", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("z0: 3.518324392876"), "{out}");
    assert!(out.contains("t0: 11.91"));
    assert!(out.contains("Pr(t0): 0.919"));
    assert!(out.contains("exact (p = 129)"));
}

#[test]
fn simulate_with_config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "machine = subroutine\nmu = 2\nK = 1\nt_max = 4\noutputs = register,pr_exact\n")
        .unwrap();
    let o = cursorq(
        dir.path(),
        &["simulate", "--config", cfg.to_str().unwrap(), "--t-max", "2", "--name", "run.csv"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,register,pr_exact");
    assert_eq!(lines.len(), 1 + 9);
    assert_eq!(lines.last().unwrap().split(',').next(), Some("2"));
    for l in &lines[1..] {
        let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() < 1e-10, "{l}");
    }

    let o = cursorq(dir.path(), &["simulate", "--set", "colour=red"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure_files_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = cursorq(dir.path(), &["figure", "1"]);
    assert!(o.status.success());
    let a = std::fs::read(dir.path().join("fig1.csv")).unwrap();
    let other = tempfile::tempdir().unwrap();
    let o = cursorq(dir.path(), &["--out-dir", other.path().to_str().unwrap(), "figure", "1"]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(other.path().join("fig1.csv")).unwrap(), a);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("t,pr_closed\n0,0\n"));
    assert!(text.lines().all(|l| !l.ends_with(' ') && l.split(',').count() == 2));

    assert_eq!(cursorq(dir.path(), &["figure", "2"]).status.code(), Some(2));
    assert_eq!(cursorq(dir.path(), &["figure", "x"]).status.code(), Some(2));
}
