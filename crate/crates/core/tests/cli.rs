use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_triboverify"));
    for (k, _) in std::env::vars() {
        if k.starts_with("TRIBOVERIFY_") {
            c.env_remove(k);
        }
    }
    c
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn lemma2_writes_two_refutations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l2.jsonl");
    let (code, _) = run(&["verify", "lemma2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.lines()
            .filter(|l| l.contains(r#""verdict":false"#))
            .count(),
        2
    );
    assert!(text
        .lines()
        .all(|l| l.starts_with(r#"{"schema":1,"kind":"lemma2""#)));
    let (code, stdout) = run(&["check-records", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn search_summary_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let (code, _) = run(&["search", "--z-max", "30", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.trim(),
        r#"{"schema":1,"kind":"search-summary","mode":"search","bound":30,"prune":false,"count":0}"#
    );
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["verify", "prop1", "--z-max", "0"]).0, 2);
    assert_eq!(run(&["--precision-bits", "-1", "verify", "constants"]).0, 2);
    assert_eq!(
        run(&[
            "verify",
            "expansion",
            "--x",
            "5",
            "--y",
            "6",
            "--z",
            "12",
            "--t-max",
            "2"
        ])
        .0,
        2
    );
    assert_eq!(run(&["member", "twelve"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check-records", "/nonexistent/records.jsonl"]).0, 2);
    assert_eq!(
        run(&["verify", "constants", "--out", "/nonexistent/dir/x.jsonl"]).0,
        2
    );
}

#[test]
fn environment_is_read_and_validated() {
    let out = bin()
        .args(["verify", "constants"])
        .env("TRIBOVERIFY_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["verify", "constants"])
        .env("TRIBOVERIFY_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn precision_cap_exits_three() {
    // squareness of a needs witness primes beyond 5
    let (code, _) = run(&[
        "--witness-prime-bound",
        "5",
        "--max-precision-bits",
        "256",
        "verify",
        "lemma2",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn records_do_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for jobs in ["1", "3"] {
        let p = dir.path().join(format!("n{jobs}.jsonl"));
        let (code, _) = run(&[
            "verify",
            "norms",
            "--z-max",
            "40",
            "--samples",
            "10",
            "--jobs",
            jobs,
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        files.push(std::fs::read(&p).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let first = String::from_utf8(files[0].clone()).unwrap();
    assert!(first.contains(r#"{"schema":1,"kind":"norm","y":6,"z":7,"d":"6","norm3":"-216","divides":true,"tight":true}"#));
}

#[test]
fn quick_run_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.jsonl");
    let (code, stdout) = run(&["verify", "all", "--quick", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    let (code, stdout) = run(&["check-records", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn gen_and_member() {
    let (code, stdout) = run(&["gen", "--max-index", "8"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().last(), Some("8 24"));
    let (code, stdout) = run(&["member", "24", "25"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "24: T_8\n25: not a Tribonacci number\n");
}

#[test]
fn tampered_records_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.jsonl");
    assert_eq!(
        run(&[
            "verify",
            "prop1",
            "--z-max",
            "12",
            "--out",
            path.to_str().unwrap()
        ])
        .0,
        0
    );
    let text = std::fs::read_to_string(&path)
        .unwrap()
        .replacen(r#""gcd":"6""#, r#""gcd":"2""#, 1);
    std::fs::write(&path, text).unwrap();
    assert_eq!(run(&["check-records", path.to_str().unwrap()]).0, 1);
}
