use std::path::Path;
use std::process::{Command, Output};

use npsim::cli::{parse_trace, write_trace};

fn npsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_npsim"))
        .args(args)
        .output()
        .expect("run npsim")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn simulate_single_packet() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.jsonl", "{\"slot\":0,\"packets\":[{\"size\":2,\"cycles\":2}]}\n");
    let o = npsim(&["simulate", &t, "--policy", "npo", "--priority", "srpt", "--buffer", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("transmitted_bytes=2\n"));
}

#[test]
fn po_without_max_size_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.jsonl", "{\"slot\":0,\"packets\":[{\"size\":2,\"cycles\":2}]}\n");
    let o = npsim(&["simulate", &t, "--policy", "po", "--buffer", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-size"));
}

#[test]
fn po_regime_violation_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.jsonl", "{\"slot\":0,\"packets\":[{\"size\":2,\"cycles\":2}]}\n");
    let o = npsim(&["simulate", &t, "--policy", "po", "--buffer", "3", "--max-size", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_trace_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.jsonl",
        "{\"slot\":0,\"packets\":[]}\n{\"slot\":1,\"packets\":[{\"size\":1}]}\n",
    );
    let o = npsim(&["simulate", &t, "--policy", "npo", "--buffer", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn gen_po_srpt_record_count() {
    let o = npsim(&["gen", "--family", "po-srpt-lb", "--buffer", "8", "--max-size", "2", "--slots", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].contains("\"family\":\"po-srpt-lb\""));
    assert_eq!(lines.iter().filter(|l| l.contains("\"slot\"")).count(), 4);
    assert_eq!(lines.len(), 5);
}

#[test]
fn gen_with_non_dividing_size_fails() {
    let o = npsim(&[
        "gen", "--family", "npo-srpt-lb", "--buffer", "7", "--max-size", "2", "--max-cycles", "2",
        "--slots", "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("divide"));
}

#[test]
fn gen_then_simulate_reproduces_analytic_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("po.jsonl");
    let out = out.to_str().unwrap();
    let o = npsim(&[
        "gen", "--family", "po-srpt-lb", "--buffer", "8", "--max-size", "2", "--slots", "100",
        "--out", out,
    ]);
    assert!(o.status.success());
    let trace = parse_trace(&std::fs::read_to_string(out).unwrap()).unwrap();
    let meta = trace.metadata.clone().unwrap();
    assert_eq!(meta.analytic_alg_bytes, Some(105));
    assert_eq!(write_trace(&trace).unwrap(), std::fs::read_to_string(out).unwrap());

    let o = npsim(&["simulate", out, "--policy", "po", "--priority", "srpt", "--buffer", "8", "--max-size", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("transmitted_bytes=105\n"));
}

#[test]
fn simulate_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_npsim"))
        .args(["simulate", "-", "--policy", "npo", "--buffer", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"{\"slot\":0,\"packets\":[{\"size\":1,\"cycles\":1},{\"size\":1,\"cycles\":1}]}\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("transmitted_bytes=2\n"));
}

#[test]
fn simulate_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.jsonl",
        "{\"slot\":0,\"packets\":[{\"size\":1,\"cycles\":1},{\"size\":1,\"cycles\":1},{\"size\":1,\"cycles\":1}]}\n",
    );
    let csv = dir.path().join("log.csv");
    let o = npsim(&[
        "simulate", &t, "--policy", "npo", "--buffer", "2", "--csv", csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(
        text,
        "slot,occupancy,transmitted_cum,drops,pushouts\n0,2,0,1,0\n1,1,1,0,0\n2,0,2,0,0\n"
    );
}

#[test]
fn ratio_reports_oracle_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.jsonl",
        "{\"slot\":0,\"packets\":[{\"size\":1,\"cycles\":2},{\"size\":2,\"cycles\":1},{\"size\":2,\"cycles\":1}]}\n",
    );
    let csv = dir.path().join("r.csv");
    let o = npsim(&[
        "ratio", &t, "--policy", "npo", "--buffer", "4", "--max-size", "2", "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("alg_bytes=3\n"), "{out}");
    assert!(out.contains("opt_bytes=4 (source: oracle)"), "{out}");
    assert!(out.contains("ratio=4/3 (1.333333)"), "{out}");
    assert!(out.contains("bound NPO/SRPT upper"), "{out}");
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("policy,alg_bytes,opt_bytes,opt_source,ratio,bound_name,bound\n"));
    assert!(text.contains("NPO/SRPT,3,4,oracle,4/3,"), "{text}");
}

#[test]
fn ratio_falls_back_to_analytic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.jsonl");
    let out = out.to_str().unwrap();
    assert!(npsim(&[
        "gen", "--family", "po-srpt-lb", "--buffer", "8", "--max-size", "2", "--slots", "100",
        "--out", out,
    ])
    .status
    .success());
    let o = npsim(&[
        "ratio", out, "--policy", "po", "--buffer", "8", "--max-size", "2", "--oracle-budget", "0",
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("opt_bytes=208 (source: analytic)"), "{s}");
    assert!(s.contains("ratio=208/105"), "{s}");
}

#[test]
fn ratio_without_analytic_fallback_fails() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.jsonl", "{\"slot\":0,\"packets\":[{\"size\":1,\"cycles\":1}]}\n");
    let o = npsim(&["ratio", &t, "--policy", "npo", "--buffer", "2", "--oracle-budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bounds_examples() {
    let o = npsim(&["bounds", "--policy", "npo", "--priority", "srpt", "--buffer", "100", "--max-size", "4", "--max-cycles", "5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("NPO/SRPT upper: 125/6 (20.833333)"), "{s}");
    assert!(s.contains("NPO/SRPT lower: 20/1 (20.000000)"), "{s}");

    let o = npsim(&["bounds", "--policy", "po", "--buffer", "7", "--max-size", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("regime B ≥ 2L violated"));

    let o = npsim(&["bounds", "--policy", "po", "--buffer", "13", "--max-size", "2", "--la", "1"]);
    let s = stdout(&o);
    assert!(s.contains("PO/SRPT upper (large buffer): 4/1 (4.000000)"), "{s}");
    assert!(s.contains("regime B > 4L²-2L ok"), "{s}");

    let o = npsim(&["bounds", "--policy", "po", "--buffer", "13", "--max-size", "2"]);
    assert!(stdout(&o).contains("needs --la"));
}

#[test]
fn unknown_flag_exits_nonzero() {
    let o = npsim(&["simulate", "--bogus"]);
    assert!(!o.status.success());
}
