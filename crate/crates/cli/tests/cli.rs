use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kscheck(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kscheck"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_counts_small_diagrams() {
    let o = kscheck(&["generate", "--n", "3", "--max-vertices", "7", "--max-edges", "7"], "");
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 12);
    assert!(lines.contains(&"123,145,246,356,167,257,347"));
}

#[test]
fn states01_exit_code_reports_missing_states() {
    let o = kscheck(&["states01", "-"], "123,345,561,275,476\n123,345\n");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "1: 123,345,561,275,476 no-01-state\n2: 123,345 has-01-state\n");
    let o = kscheck(&["states01", "-"], "123,345\n");
    assert_eq!(o.status.code(), Some(0));
    let o = kscheck(&["states01", "--invert", "-"], "123,345,561,275,476\n123,345\n");
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = kscheck(&["states01", "smallest-6-3"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_proves_the_triangle_infeasible() {
    let o = kscheck(&["solve", "-"], "123,345,561\n");
    assert!(o.status.success());
    assert!(stdout(&o).contains("infeasible"), "{}", stdout(&o));
}

#[test]
fn catalog_lists_and_checks() {
    let o = kscheck(&["catalog", "list"], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("cabello-18-9"));
    let o = kscheck(&["catalog", "check", "cabello-18-9"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = std::env::temp_dir().join(format!("kscheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "{1,0,0}{0,1,0}{0,0,1}").unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "{1,0,0}{1,1,0}{0,0,1}").unwrap();
    let ok = kscheck(&["verify", "--diagram", "123", "--solution", good.to_str().unwrap(), "--tol", "0"], "");
    let fail = kscheck(&["verify", "--diagram", "123", "--solution", bad.to_str().unwrap(), "--tol", "0"], "");
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(fail.status.code(), Some(1));
}

#[test]
fn bad_input_exits_with_2() {
    let o = kscheck(&["contains", "123,12", "123"], "");
    assert_eq!(o.status.code(), Some(2));
}
