use std::process::{Command, Output};

fn kr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kr")).args(args).output().expect("run kr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn index(t: &str, r: u32, s: u32) -> Vec<String> {
    vec!["--cartan".into(), t.into(), "--r".into(), r.to_string(), "--s".into(), s.to_string()]
}

fn run(cmd: &str, t: &str, r: u32, s: u32, extra: &[&str]) -> Output {
    let mut args = vec![cmd.to_string()];
    args.extend(index(t, r, s));
    args.extend(extra.iter().map(|a| a.to_string()));
    kr(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn build_summarizes() {
    let o = run("build", "C3~1", 2, 1, &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("14"));
}

#[test]
fn check_exit_codes() {
    assert_eq!(run("check", "C3~1", 2, 2, &[]).status.code(), Some(0));
    assert_eq!(run("check", "C3~1", 2, 1, &[]).status.code(), Some(3));
    assert_eq!(run("check", "D4~1", 4, 1, &[]).status.code(), Some(4));
    assert_eq!(run("check", "C3~1", 5, 1, &[]).status.code(), Some(2));
    assert_eq!(kr(&["check", "--cartan", "Q3~1", "--r", "1", "--s", "1"]).status.code(), Some(2));
}

#[test]
fn check_json_carries_the_verdict() {
    let o = run("check", "A2~1", 1, 2, &["--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["kind"], "perfect");
    assert_eq!(v["verdict"]["level"], 2);
}

#[test]
fn graph_exports() {
    let o = run("graph", "C3~1", 2, 1, &[]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 20);

    let o = run("graph", "A1~1", 1, 1, &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());

    assert_eq!(run("graph", "D4~1", 4, 1, &[]).status.code(), Some(4));
}

#[test]
fn minimal_elements() {
    let o = run("minimal", "C3~1", 2, 2, &["--weight", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).trim().is_empty());
    assert_eq!(run("minimal", "C3~1", 2, 2, &["--weight", "1,0"]).status.code(), Some(2));
    assert_eq!(run("minimal", "C3~1", 2, 2, &["--weight", "2,0,0,0"]).status.code(), Some(2));
    assert_eq!(run("minimal", "C3~1", 2, 1, &[]).status.code(), Some(3));
}

#[test]
fn golden_cases() {
    assert_eq!(kr(&["golden", "--case", "b21"]).status.code(), Some(0));
    assert_eq!(kr(&["golden", "--case", "B23"]).status.code(), Some(0));
    // the table lists e_0, so the literal f_0 comparison reports a mismatch
    let o = kr(&["golden", "--case", "B22"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("17/17"));
    assert_eq!(kr(&["golden", "--case", "B24"]).status.code(), Some(2));
}
