use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn racg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn generated(dir: &Path, family: &str, params: &[&str]) -> PathBuf {
    let mut args = vec!["gen", family];
    args.extend(params);
    let o = racg(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    write(dir, &format!("{family}.txt"), &stdout(&o))
}

/// Writes a document produced by one process and verifies it in another.
fn verify_in_fresh_process(dir: &Path, name: &str, doc: &str) {
    let path = write(dir, name, doc);
    let o = racg(&["verify", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("valid "));
}

#[test]
fn reduce_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "k5_subdiv", &["1"]);
    let o = racg(&["reduce", g.to_str().unwrap()]);
    assert!(o.status.success());
    let doc = stdout(&o);
    assert!(doc.contains("\"kind\": \"reduction\""));
    verify_in_fresh_process(dir.path(), "cert.json", &doc);
    // a second run prints the same bytes
    assert_eq!(stdout(&racg(&["reduce", g.to_str().unwrap()])), doc);
}

#[test]
fn analyze_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "pi", &["1"]);
    let o = racg(&["analyze", g.to_str().unwrap(), "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    verify_in_fresh_process(dir.path(), "report.json", &stdout(&o));

    let text = racg(&["analyze", g.to_str().unwrap()]);
    assert!(text.status.success());
    assert!(stdout(&text).contains("[assumed]"));
}

#[test]
fn witness_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "fig5_right", &["1"]);
    let o = racg(&["witness", g.to_str().unwrap(), "--pattern", "fig5_right"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    verify_in_fresh_process(dir.path(), "witness.json", &stdout(&o));
}

#[test]
fn tampered_document_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "k33_subdiv", &["1"]);
    let doc = stdout(&racg(&["reduce", g.to_str().unwrap()]));
    // point the terminal at a different first vertex
    let tampered = doc.replacen("\"terminal\": \"InducedK33\"", "\"terminal\": \"Fig5Left\"", 1);
    assert_ne!(tampered, doc);
    let path = write(dir.path(), "bad.json", &tampered);
    assert_eq!(racg(&["verify", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(racg(&["gen", "cycle", "2"]).status.code(), Some(1));
    assert_eq!(racg(&["planarity", "/nonexistent/graph.txt"]).status.code(), Some(1));

    let triangle = write(dir.path(), "tri.txt", "a b\nb c\nc a\n");
    assert_eq!(racg(&["analyze", triangle.to_str().unwrap()]).status.code(), Some(1));

    let g = generated(dir.path(), "k33_subdiv", &["2"]);
    let o = racg(&["reduce", g.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));

    let v2 = write(dir.path(), "v2.json", "{\"schema_version\": \"2\"}");
    assert_eq!(racg(&["verify", v2.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn planarity_reports() {
    let dir = tempfile::tempdir().unwrap();
    let c = generated(dir.path(), "cycle", &["6"]);
    assert_eq!(stdout(&racg(&["planarity", c.to_str().unwrap()])).trim(), "planar");
    let p = generated(dir.path(), "petersen", &[]);
    let o = racg(&["planarity", p.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("non-planar: K33"));
}
