mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::corpus;
use serde_json::Value;
use weylmod::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_RIGIDITY_FAIL};
use weylmod::io::canonicalize_rep;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["weylmod"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Compares against `tests/golden/<name>`; set `WEYLMOD_BLESS=1` to
/// rewrite the golden files.
fn golden(name: &str, actual: &str) {
    let file = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("WEYLMOD_BLESS").is_some() {
        std::fs::create_dir_all(file.parent().unwrap()).unwrap();
        std::fs::write(&file, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&file).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
    assert_eq!(actual, expected, "output differs from {name}");
}

fn result(o: &Outcome) -> Value {
    serde_json::from_str::<Value>(&o.stdout).unwrap()["result"].clone()
}

const GOLDEN_CASES: &[(&str, &[&str], &str)] = &[
    ("validate_sp2", &["validate"], "sp2"),
    ("schur_sym2_sp2", &["schur", "--partition", "2"], "sp2"),
    ("schur_wedge2_sp3", &["schur", "--partition", "1,1"], "sp3"),
    ("frss_sp2_numberfield", &["frss"], "sp2_numberfield"),
    ("frss_companion", &["frss"], "companion_family"),
    ("filtration_sp3", &["filtration"], "sp3"),
    ("purity_sp2", &["purity", "--weight", "-1"], "sp2"),
    ("purity_numberfield", &["purity"], "sp2_numberfield"),
    ("specialize_flagship_0", &["specialize", "--point", "0"], "flagship"),
    ("specialize_twisted_half", &["specialize", "--point", "1/2"], "twisted"),
    ("scan_flagship_sym2", &["scan", "--partition", "2", "--points", "-5..5"], "flagship"),
    ("scan_inertia_family", &["scan", "--partition", "1", "--points", "-2..2"], "inertia_family"),
];

#[test]
fn golden_outputs() {
    for (name, args, input) in GOLDEN_CASES {
        let file = corpus(input);
        for (format, ext) in [("json", "json"), ("table", "txt")] {
            let mut full = vec!["--format", format];
            full.extend_from_slice(args);
            full.push(path(&file));
            let o = invoke(&full);
            assert_eq!(o.code, EXIT_OK, "{name} ({format}): {}", o.stderr);
            golden(&format!("{name}.{ext}"), &o.stdout);
        }
    }
}

#[test]
fn scan_of_flagship_passes() {
    let o = invoke(&["scan", "--partition", "2", "--points", "-5..5", path(&corpus("flagship"))]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let r = result(&o);
    assert_eq!(r["verdict"], "pass");
    let points = r["points"].as_array().unwrap();
    assert_eq!(points.len(), 11);
    let at_zero = points.iter().find(|p| p["a"] == "0").unwrap();
    assert_eq!(at_zero["purity"]["verdict"], "impure");
    let at_one = points.iter().find(|p| p["a"] == "1").unwrap();
    assert_eq!(at_one["purity"]["verdict"], "pure");
    assert_eq!(at_one["purity"]["weight"], -1);
}

#[test]
fn purity_of_sp2() {
    let o = invoke(&["purity", "--weight", "-1", path(&corpus("sp2"))]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(result(&o)["verdict"], "pure");
    let o = invoke(&["purity", "--weight", "0", path(&corpus("sp2"))]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(result(&o)["verdict"], "impure");
}

#[test]
fn invalid_inputs_exit_with_input_error() {
    let o = invoke(&["validate", path(&data("broken.json"))]);
    assert_eq!(o.code, EXIT_INPUT);
    let r = result(&o);
    assert_eq!(r["valid"], false);
    assert!(r["violation"].as_str().unwrap().contains("differ at [1][0]"), "{r}");

    let o = invoke(&["validate", path(&data("singular_phi.json"))]);
    assert_eq!(o.code, EXIT_INPUT);
    assert_eq!(result(&o)["matrix"], "phi");

    let o = invoke(&["frss", path(&data("not_json.json"))]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("line"), "{}", o.stderr);

    let o = invoke(&["frss", path(&data("missing.json"))]);
    assert_eq!(o.code, EXIT_INPUT);

    let o = invoke(&["scan", "--partition", "0", path(&corpus("flagship"))]);
    assert_eq!(o.code, EXIT_INPUT);
    let o = invoke(&["scan", "--partition", "2", "--points", "5..1", path(&corpus("flagship"))]);
    assert_eq!(o.code, EXIT_INPUT);
    let o = invoke(&["specialize", "--point", "1", path(&corpus("sp2"))]);
    assert_eq!(o.code, EXIT_INPUT, "constant field is not a family");
    let o = invoke(&["purity", path(&corpus("flagship"))]);
    assert_eq!(o.code, EXIT_INPUT, "purity over Q(t) is rejected");
    let o = invoke(&["no-such-command"]);
    assert_eq!(o.code, EXIT_INPUT);
}

#[test]
fn specializing_where_a_denominator_vanishes_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pole.json");
    let text = std::fs::read_to_string(corpus("flagship")).unwrap().replace("\"t\"", "\"1/(t-2)\"");
    std::fs::write(&file, text).unwrap();
    let o = invoke(&["specialize", "--point", "2", path(&file)]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("denominator"), "{}", o.stderr);
    assert_eq!(invoke(&["specialize", "--point", "3", path(&file)]).code, EXIT_OK);
}

#[test]
fn rigidity_recheck_detects_a_doctored_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("scan.json");
    let o = invoke(&[
        "--output",
        path(&report),
        "scan",
        "--partition",
        "2",
        "--points",
        "-3..3",
        path(&corpus("flagship")),
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.is_empty());

    let again = invoke(&["rigidity", path(&report)]);
    assert_eq!(again.code, EXIT_OK, "{}", again.stderr);
    assert_eq!(result(&again)["verdict"], "pass");

    // Give the pure point a = 1 the signature of the impure point a = 0.
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let points = v["result"]["points"].as_array_mut().unwrap();
    let bad = points.iter().find(|p| p["a"] == "0").unwrap()["signature"].clone();
    points.iter_mut().find(|p| p["a"] == "1").unwrap()["signature"] = bad;
    let doctored = dir.path().join("doctored.json");
    std::fs::write(&doctored, serde_json::to_string(&v).unwrap()).unwrap();

    let o = invoke(&["rigidity", path(&doctored)]);
    assert_eq!(o.code, EXIT_RIGIDITY_FAIL);
    let r = result(&o);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["failures"], serde_json::json!(["1"]));
    assert!(o.stderr.contains("rigidity fails at 1"), "{}", o.stderr);
}

#[test]
fn corpus_files_are_canonical() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let file = entry.unwrap().path();
        let text = std::fs::read_to_string(&file).unwrap();
        let once = canonicalize_rep(&text).unwrap();
        assert_eq!(once, text, "{} is not in canonical form", file.display());
        assert_eq!(canonicalize_rep(&once).unwrap(), once);
        let o = invoke(&["validate", path(&file)]);
        assert_eq!(o.code, EXIT_OK, "{}: {}", file.display(), o.stderr);
        count += 1;
    }
    assert!(count >= 10);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["scan", "--partition", "2,1", "--points", "-6..6", path(&corpus("companion_family"))].map(String::from);
    let first = invoke(&args.iter().map(String::as_str).collect::<Vec<_>>());
    let second = invoke(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(first.code, EXIT_OK);
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_str(&first.stdout).unwrap();
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["command"]["name"], "scan");
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_weylmod");
    let ok = Command::new(bin).args(["validate", path(&corpus("sp3"))]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["result"]["valid"], true);
    let bad = Command::new(bin).args(["validate", path(&data("broken.json"))]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
}
