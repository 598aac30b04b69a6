use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn repo() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scenario(name: &str) -> PathBuf {
    repo().join("scenarios").join(name)
}

fn fuzzynav(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fuzzynav"));
    for a in args {
        cmd.arg(a);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_shipped_rule_files() {
    let data = repo().join("crates/core/data");
    let out = fuzzynav(&[&"check", &data.join("tflc.fis"), &data.join("oaflc.fis")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("15 rules") && text.contains("27 rules"),
        "{text}"
    );
}

#[test]
fn check_reports_duplicate_rule_with_line() {
    let dir = TempDir::new().unwrap();
    let fis =
        "input d 0 1 m\nterm d Lo trap 0 0 0.2 0.8\nterm d Hi trap 0.2 0.8 1 1\noutput v 0 1 m/s\n\
               rule if d is Lo then v=0\nrule if d is Hi then v=1\nrule if d is Lo then v=0.5\n";
    let path = write(dir.path(), "dup.fis", fis);
    let out = fuzzynav(&[&"check", &path]);
    assert_eq!(code(&out), 1);
    let diag = stderr(&out);
    assert_eq!(diag.lines().count(), 1, "{diag}");
    assert!(
        diag.contains(":7:") && diag.contains("duplicate-rule"),
        "{diag}"
    );
}

#[test]
fn check_missing_file_is_a_file_error() {
    let out = fuzzynav(&[&"check", &"/definitely/not/here.fis"]);
    assert_eq!(code(&out), 2);
    assert!(!stderr(&out).is_empty());
}

#[test]
fn run_empty_world_reaches_goal() {
    let out = fuzzynav(&[&"run", &scenario("empty.scn")]);
    assert_eq!(code(&out), 0);
    let line = stdout(&out);
    assert!(line.starts_with("verdict=Reached time="), "{line}");
    assert_eq!(line.lines().count(), 1);
}

#[test]
fn run_cluttered_world_keeps_clearance() {
    let out = fuzzynav(&[&"run", &scenario("cluttered.scn")]);
    assert_eq!(code(&out), 0);
    let line = stdout(&out);
    let clearance: f64 = line
        .split_whitespace()
        .find_map(|f| f.strip_prefix("clearance="))
        .and_then(|c| c.strip_suffix('m'))
        .unwrap()
        .parse()
        .unwrap();
    assert!(clearance > 0.0, "{line}");
}

#[test]
fn run_forced_timeout() {
    let out = fuzzynav(&[&"run", &scenario("empty.scn"), &"--max-time", &"0.1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("verdict=Timeout"));
}

#[test]
fn run_collision_exit_code() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "wall.world", "rect 1.0 -2 1.2 2\n");
    let scn = write(
        dir.path(),
        "wall.scn",
        "world wall.world\nstart 0 0 0\ngoal 3 0\n",
    );
    let out = fuzzynav(&[&"run", &scn, &"--fusion", &"0.4,0.41"]);
    assert_eq!(code(&out), 3, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("verdict=Collision"));
}

#[test]
fn run_invalid_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.scn", "start 0 0 0\ngoal 1 1\nspeed 3\n");
    let out = fuzzynav(&[&"run", &bad]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    let broken = write(dir.path(), "broken.fis", "input d 0 1 m\n");
    let out = fuzzynav(&[&"run", &scenario("empty.scn"), &"--tflc", &broken]);
    assert_eq!(code(&out), 2);

    let out = fuzzynav(&[&"run", &scenario("empty.scn"), &"--dt", &"-1"]);
    assert_eq!(code(&out), 2);

    let out = fuzzynav(&[&"run", &scenario("empty.scn"), &"--fusion", &"0.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn run_csv_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let out = fuzzynav(&[&"run", &scenario("obstacle.scn"), &"--out", path]);
        assert_eq!(code(&out), 0);
    }
    let bytes = fs::read(&a).unwrap();
    assert!(bytes.starts_with(b"t,x,y,theta,"));
    assert_eq!(bytes, fs::read(&b).unwrap());
}

fn copy_scenarios(dir: &Path, names: &[&str]) {
    for name in names {
        fs::copy(scenario(name), dir.join(name)).unwrap();
    }
}

#[test]
fn batch_all_reached() {
    let input = TempDir::new().unwrap();
    let output = TempDir::new().unwrap();
    copy_scenarios(
        input.path(),
        &[
            "empty.scn",
            "obstacle.scn",
            "obstacle.world",
            "cluttered.scn",
            "cluttered.world",
        ],
    );
    let out = fuzzynav(&[&"batch", &input.path(), &output.path()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let summary = fs::read_to_string(output.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 4, "{summary}");
    assert_eq!(
        summary.lines().next(),
        Some("name,verdict,time,path_length,min_clearance")
    );
    for name in ["empty", "obstacle", "cluttered"] {
        assert!(output.path().join(format!("{name}.csv")).is_file());
        assert!(summary.contains(&format!("{name},Reached,")));
    }
}

#[test]
fn batch_empty_directory() {
    let input = TempDir::new().unwrap();
    let output = TempDir::new().unwrap();
    let out = fuzzynav(&[&"batch", &input.path(), &output.path()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn batch_mixed_outcomes() {
    let input = TempDir::new().unwrap();
    let output = TempDir::new().unwrap();
    copy_scenarios(input.path(), &["empty.scn"]);
    write(
        input.path(),
        "slow.scn",
        "start 0 0 0\ngoal 5 0\nmax_time 1\n",
    );
    let out = fuzzynav(&[&"batch", &input.path(), &output.path()]);
    assert_eq!(code(&out), 1);
    let summary = fs::read_to_string(output.path().join("summary.csv")).unwrap();
    assert!(summary.contains("slow,Timeout,"), "{summary}");

    write(input.path(), "broken.scn", "start 0 0\n");
    let out = fuzzynav(&[&"batch", &input.path(), &output.path()]);
    assert_eq!(code(&out), 2);
    let summary = fs::read_to_string(output.path().join("summary.csv")).unwrap();
    assert!(summary.contains("broken,Error,,,"), "{summary}");
    assert_eq!(summary.lines().count(), 4);
}
