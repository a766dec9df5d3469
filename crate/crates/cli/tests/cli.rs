use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paramodular"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn statuses(text: &str, status: &str) -> usize {
    text.lines().filter(|l| l.contains(&format!(" status={status} "))).count()
}

#[test]
fn default_run_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let o = run(&["run-all", "--out", out.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let first = fs::read_to_string(&out).unwrap();
    assert_eq!(first, stdout(&o));
    assert_eq!(statuses(&first, "fail"), 0);
    assert!(first.lines().any(|l| l.starts_with("check=sixth_roots status=pass")));
    // the second run reads the cached series and must produce the same bytes
    let again = run(&["run-all"], dir.path());
    assert_eq!(stdout(&again), first);
}

#[test]
fn even_prime_is_rejected_before_any_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["run-all", "--p", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not an odd prime"));
}

#[test]
fn tiny_cap_skips_character_scans() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["run-all", "--cap", "6", "--samples", "100"], dir.path());
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(statuses(&text, "skip") > 0);
    assert!(text.lines().any(|l| l.starts_with("check=normalization status=pass")));
}

#[test]
fn wrong_convention_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["run-all", "--convention", "no-i", "--samples", "50"], dir.path());
    let failures = statuses(&stdout(&o), "fail");
    assert!(failures > 0);
    assert_eq!(o.status.code(), Some(failures as i32));
}

#[test]
fn built_series_feeds_the_character_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("delta.siegel");
    let o = run(&["build-delta", "--cap", "48", "--out", file.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(fs::read_to_string(&file).unwrap().starts_with("siegel cap=48\n"));
    let o = run(
        &["check-characters", "--series", file.to_str().unwrap(), "--group", "circle", "--samples", "12"],
        dir.path(),
    );
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(statuses(&text, "pass") > 0);
    let missing = run(&["check-characters", "--series", "/nonexistent"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn small_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate-sp4f2", "--stats"], dir.path());
    let text = stdout(&o);
    assert!(text.starts_with("# order=720 derived=360 classes=11"));
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["audit-uniqueness", "--p", "5"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["check-dual-identity", "--p", "7"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify-group", "--p", "5", "--samples", "100"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
