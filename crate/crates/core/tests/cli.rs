//! End-to-end runs of the command line through `isomin::cli::run`.

use std::fs;
use std::path::{Path, PathBuf};

use isomin::cli::{run, Exit};
use isomin::verify::appendix::fixture_digest;
use serde_json::Value;

fn isomin(out: &Path, args: &[&str]) -> Exit {
    let mut argv = vec!["isomin"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--out", out.to_str().unwrap()]);
    run(argv)
}

fn run_dirs(out: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(out).map(|d| d.map(|e| e.unwrap().path()).collect()).unwrap_or_default();
    v.sort();
    v
}

fn only_run_dir(out: &Path) -> PathBuf {
    let dirs = run_dirs(out);
    assert_eq!(dirs.len(), 1, "{dirs:?}");
    dirs[0].clone()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/appendix")
}

/// Copies the appendix fixtures into `dst`, changing one coefficient of F12.
/// With `reseal` the checksum manifest is updated to match, so the change
/// reads as a transcription error rather than a damaged file.
fn corrupt_f12(dst: &Path, reseal: bool) {
    for e in fs::read_dir(fixture_dir()).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dst.join(e.file_name())).unwrap();
    }
    let f12 = dst.join("F12.txt");
    let text = fs::read_to_string(&f12).unwrap();
    assert!(text.contains("- 53*v1^4*v2^2"));
    let bad = text.replacen("- 53*v1^4*v2^2", "- 52*v1^4*v2^2", 1);
    fs::write(&f12, &bad).unwrap();
    if reseal {
        let sums = fs::read_to_string(dst.join("SHA256SUMS")).unwrap();
        let sums = sums.replace(&fixture_digest(&text), &fixture_digest(&bad));
        fs::write(dst.join("SHA256SUMS"), sums).unwrap();
    }
}

fn failing(report: &Value) -> Vec<(String, String)> {
    report["result"]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"]["kind"] != "proved_equal")
        .map(|c| (c["name"].as_str().unwrap().to_owned(), c["status"]["kind"].as_str().unwrap().to_owned()))
        .collect()
}

#[test]
fn corrupted_f12_fails_exactly_its_certificate() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = tmp.path().join("fixtures");
    fs::create_dir(&fx).unwrap();
    corrupt_f12(&fx, true);
    let out = tmp.path().join("runs");
    let fixtures = format!("fixtures={}", fx.display());
    assert_eq!(isomin(&out, &["verify", "--set", &fixtures]), Exit::Failure);
    let report = json(&only_run_dir(&out).join("report.json"));
    assert_eq!(report["status"], "fail");
    assert_eq!(failing(&report), vec![("fixture.F12".to_owned(), "counterexample".to_owned())]);
}

#[test]
fn checksum_mismatch_marks_fixture_invalid() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = tmp.path().join("fixtures");
    fs::create_dir(&fx).unwrap();
    corrupt_f12(&fx, false);
    let out = tmp.path().join("runs");
    let fixtures = format!("fixtures={}", fx.display());
    assert_eq!(isomin(&out, &["verify", "--filter", "*F1*", "--set", &fixtures]), Exit::Failure);
    let report = json(&only_run_dir(&out).join("report.json"));
    assert_eq!(failing(&report), vec![("fixture.F12".to_owned(), "invalid".to_owned())]);
}

#[test]
fn missing_fixture_is_a_configuration_error() {
    let tmp = tempfile::tempdir().unwrap();
    let fx = tmp.path().join("fixtures");
    fs::create_dir(&fx).unwrap();
    fs::write(fx.join("F11.txt"), "1").unwrap();
    let fixtures = format!("fixtures={}", fx.display());
    assert_eq!(isomin(&tmp.path().join("runs"), &["verify", "--set", &fixtures]), Exit::Config);
}

#[test]
fn empty_filter_runs_nothing() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(isomin(tmp.path(), &["verify", "--filter", "no_such_certificate"]), Exit::Success);
    let report = json(&only_run_dir(tmp.path()).join("report.json"));
    assert_eq!(report["result"]["certificates"].as_array().unwrap().len(), 0);
}

/// Runs `args` twice into the same output root and returns the run
/// directory with the bytes of `files` from the first run.
fn run_twice(out: &Path, args: &[&str], files: &[&str]) -> (PathBuf, Vec<Vec<u8>>) {
    assert_eq!(isomin(out, args), Exit::Success);
    let dir = only_run_dir(out);
    let first: Vec<Vec<u8>> = files.iter().map(|f| fs::read(dir.join(f)).unwrap()).collect();
    for f in files {
        fs::remove_file(dir.join(f)).unwrap();
    }
    assert_eq!(isomin(out, args), Exit::Success);
    assert_eq!(only_run_dir(out), dir);
    (dir, first)
}

#[test]
fn filter_selects_one_certificate_and_reports_are_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let (dir, first) = run_twice(tmp.path(), &["verify", "--filter", "case_d", "--seed", "7"], &["report.json"]);
    let report = json(&dir.join("report.json"));
    let certs = report["result"]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["name"], "case_d");
    assert_eq!(report["result"]["seed"], 7);
    assert_eq!(fs::read(dir.join("report.json")).unwrap(), first[0]);
}

#[test]
fn pair_reports_are_bit_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let files = ["report.json", "samples.json", "config.txt"];
    let (dir, first) = run_twice(tmp.path(), &["check-pair", "--grid", "6x4x4"], &files);
    for (f, bytes) in files.iter().zip(&first) {
        assert_eq!(&fs::read(dir.join(f)).unwrap(), bytes, "{f}");
    }
}

#[test]
fn degenerate_grid_is_rejected_before_any_work() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(isomin(tmp.path(), &["check-pair", "--grid", "1x1x1"]), Exit::Config);
    assert!(run_dirs(tmp.path()).is_empty());
}

#[test]
fn cone_with_c_not_above_ctilde_is_an_obstruction() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(isomin(tmp.path(), &["build-pair", "--mode", "cone", "--c", "0", "--ctilde", "1"]), Exit::Obstruction);
    let dir = only_run_dir(tmp.path());
    let report = json(&dir.join("report.json"));
    assert_eq!(report["status"], "obstruction");
    assert!(report["result"]["reason"].as_str().unwrap().contains("c > ct"));
    assert!(!dir.join("f.obj").exists());
}

#[test]
fn unknown_key_and_bad_values_are_configuration_errors() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(isomin(tmp.path(), &["check-pair", "--set", "nonsense=1"]), Exit::Config);
    assert_eq!(isomin(tmp.path(), &["check-pair", "--delta", "2"]), Exit::Config);
    assert_eq!(isomin(tmp.path(), &["verify", "--filter", "["]), Exit::Config);
    assert!(run_dirs(tmp.path()).is_empty());
}

#[test]
fn flags_override_the_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("pair.cfg");
    fs::write(&cfg, "# catenary pair on a small grid\nc = 1\nctilde = -1\ngrid = 4x3x3\n").unwrap();
    let out = tmp.path().join("runs");
    assert_eq!(isomin(&out, &["check-pair", "--config", cfg.to_str().unwrap(), "--ctilde", "0"]), Exit::Success);
    let report = json(&only_run_dir(&out).join("report.json"));
    assert_eq!(report["result"]["ct"], 0.0);
    assert_eq!(report["config"]["grid"], "4x3x3");
}

#[test]
fn build_pair_writes_meshes_and_export_writes_csv() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(isomin(tmp.path(), &["build-pair", "--grid", "4x3x3"]), Exit::Success);
    let dir = only_run_dir(tmp.path());
    for f in
        ["f.obj", "f_tilde.obj", "profile_f.csv", "profile_f_tilde.csv", "samples.json", "report.json", "timings.json"]
    {
        assert!(dir.join(f).is_file(), "{f}");
    }
    let obj = fs::read_to_string(dir.join("f.obj")).unwrap();
    assert!(obj.lines().any(|l| l.starts_with("v ")) && obj.lines().any(|l| l.starts_with("f ")));

    assert_eq!(run(["isomin", "export", dir.to_str().unwrap()]), Exit::Success);
    let residuals = fs::read_to_string(dir.join("export/residuals.csv")).unwrap();
    assert_eq!(residuals.lines().count(), 1 + 4 * 3 * 3);
    assert!(residuals.starts_with("i,j,k,"));
    let conv = fs::read_to_string(dir.join("export/convergence.csv")).unwrap();
    assert!(conv.starts_with("step,"));
    assert!(dir.join("export/timings.csv").is_file());
}

#[test]
fn export_after_verify_and_on_empty_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("runs");
    assert_eq!(isomin(&out, &["verify", "--filter", "case_d"]), Exit::Success);
    let dir = only_run_dir(&out);
    assert_eq!(run(["isomin", "export", dir.to_str().unwrap()]), Exit::Success);
    assert!(fs::read_to_string(dir.join("export/timings.csv")).unwrap().contains("case_d"));

    let empty = tmp.path().join("empty");
    fs::create_dir(&empty).unwrap();
    assert_eq!(run(["isomin", "export", empty.to_str().unwrap()]), Exit::Config);
}

#[test]
fn build_catenary_writes_profile_and_mesh() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(isomin(tmp.path(), &["build-catenary", "--grid", "4x3x3"]), Exit::Success);
    let dir = only_run_dir(tmp.path());
    let csv = fs::read_to_string(dir.join("profile.csv")).unwrap();
    assert!(csv.starts_with("s,gamma_v,gamma_v_prime,beta1,beta2,beta3"));
    assert!(dir.join("f.obj").is_file());
    assert_eq!(json(&dir.join("report.json"))["status"], "pass");
}
