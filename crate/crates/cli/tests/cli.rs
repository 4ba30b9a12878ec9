//! End-to-end runs of the `oqa` binary.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn oqa_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_oqa"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    cmd.env_remove("OQA_CATALOG_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            input.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn oqa(args: &[&str]) -> Run {
    oqa_with(args, None, &[])
}

fn piped(args: &[&str], stdin: &str) -> Run {
    oqa_with(args, Some(stdin), &[])
}

fn ok(run: Run) -> String {
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    run.stdout
}

fn error_kind(run: &Run) -> String {
    let line = run
        .stderr
        .lines()
        .rev()
        .find(|l| l.starts_with('{'))
        .expect("JSON error line");
    let v: Value = serde_json::from_str(line).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("oqa-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_catalog_oqa_passes() {
    let out = ok(oqa(&["check", "oqa", "catalog:mn_oqa(2)"]));
    assert!(out.contains("certified"));
    let json: Value = serde_json::from_str(&ok(oqa(&["check", "oqa", "catalog:mn_oqa(2)", "--json"]))).unwrap();
    assert_eq!(json["pass"], Value::Bool(true));
}

#[test]
fn tensor_square_exports_as_a_16_by_16_csv() {
    let bundle = ok(oqa(&["build", "thm37", "catalog:mn_oqa(2)"]));
    let csv = ok(piped(&["export", "matrix", "-", "--format", "csv"], &bundle));
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.split(',').count() == 16));
    assert_eq!(rows[0].split(',').next(), Some("a^2"));
    let other = ok(piped(&["export", "matrix", "-", "--order", "column-major"], &bundle));
    assert_ne!(csv, other);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["build", "thm36", "catalog:ex34_nonuple_case1"],
        vec!["catalog", "export", "sweedler4_qt(nu)"],
        vec!["check", "nonuple", "catalog:ex34_nonuple_case2", "--json"],
    ] {
        assert_eq!(ok(oqa(&args)), ok(oqa(&args)), "{args:?}");
    }
}

#[test]
fn build_outputs_recheck() {
    let cases: &[(&[&str], &str)] = &[
        (&["build", "thm37", "catalog:mn_oqa(2)"], "oqa"),
        (&["build", "thm36", "catalog:ex34_nonuple_case2"], "oqa"),
        (
            &[
                "build",
                "thm35",
                "catalog:ex34_nonuple_case1",
                "catalog:ex34_nonuple_case1",
            ],
            "oqa",
        ),
        (&["build", "radford", "catalog:mn_oqa(2)"], "oqa"),
        (
            &["build", "tensor-oqa", "catalog:mn_oqa(2)", "catalog:ex45_Hprime_oqa"],
            "oqa",
        ),
        (&["build", "qt-oqa", "catalog:sweedler4_qt(nu)"], "oqa"),
        (
            &[
                "build",
                "cor39",
                "catalog:sweedler4_qt(nu)",
                "catalog:kz2_qt",
                "catalog:ex45_weak_r",
            ],
            "oqa",
        ),
        (&["build", "bicrossed", "catalog:ex45_weak_r"], "hopf"),
        (
            &[
                "build",
                "bicrossed",
                "catalog:ex45_weak_r",
                "catalog:sweedler4_qt(nu)",
                "catalog:kz2_qt",
            ],
            "qt",
        ),
    ];
    for (args, kind) in cases {
        let bundle = ok(oqa(args));
        let run = piped(&["check", kind, "-"], &bundle);
        assert_eq!(run.code, 0, "{args:?}: {}", run.stderr);
    }
}

#[test]
fn sign_flipped_p_fails_with_a_witness() {
    let mut bundle: Value = serde_json::from_str(&ok(oqa(&["catalog", "export", "mn_oqa(2)"]))).unwrap();
    for term in bundle["r"]["terms"].as_array_mut().unwrap() {
        if term["idx"] == serde_json::json!(["E12", "E21"]) {
            let c = term["c"].as_str().unwrap().to_string();
            term["c"] = Value::String(format!("-({c})"));
        }
    }
    let path = temp_file("flipped.json", &bundle.to_string());
    let run = oqa(&["check", "oqa", path.to_str().unwrap(), "--json"]);
    assert_eq!(run.code, 1);
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    let ybe = report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["axiom"] == "Eq2.6")
        .unwrap();
    assert_eq!(ybe["pass"], Value::Bool(false));
    assert!(!ybe["witness"].is_null());
    assert_eq!(error_kind(&run), "verdict_failure");
}

#[test]
fn bad_inputs_exit_with_status_2() {
    let flipped = temp_file("garbage.json", "{ not json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "oqa", "/nonexistent/bundle.json"],
        vec!["check", "oqa", flipped.to_str().unwrap()],
        vec!["check", "oqa", "catalog:no_such_thing"],
        vec!["check", "oqa", "catalog:kz2_hopf"],
        vec!["eval", "catalog:mn_oqa(2)", "--set", "a=0"],
        vec!["eval", "catalog:mn_oqa(2)", "--set", "a"],
        vec!["export", "matrix", "catalog:mn_oqa(2)", "--order", "diagonal"],
    ];
    for args in cases {
        let run = oqa(&args);
        assert_eq!(run.code, 2, "{args:?}: {}", run.stderr);
        assert_ne!(error_kind(&run), "verdict_failure", "{args:?}");
    }
}

#[test]
fn catalog_list_and_export() {
    let list = ok(oqa(&["catalog", "list"]));
    for name in [
        "mn_oqa(n)",
        "ex34_nonuple_case1",
        "ex45_weak_r",
        "expected_ex43_alpha",
        "trivial_oqa(A)",
    ] {
        assert!(list.contains(name), "{name}");
    }
    let json: Value = serde_json::from_str(&ok(oqa(&["catalog", "list", "--json"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 16);
    let m: Value = serde_json::from_str(&ok(oqa(&["catalog", "export", "expected_ex43_alpha"]))).unwrap();
    assert_eq!(m["kind"], "matrix");
}

#[test]
fn printed_matrix_check_reports_documented_typos() {
    let bundle = ok(oqa(&["build", "thm37", "catalog:mn_oqa(2)"]));
    let out = ok(piped(
        &["check", "expected", "-", "catalog:expected_ex43_alpha"],
        &bundle,
    ));
    assert_eq!(out.matches("[suspected typo]").count(), 3);
    let unit = ok(oqa(&["build", "thm37", "catalog:trivial_oqa(M2)"]));
    let run = piped(&["check", "expected", "-", "catalog:expected_ex43_alpha"], &unit);
    assert_eq!(run.code, 1);
}

#[test]
fn catalog_dir_override() {
    let bundled: Value = serde_json::from_str(&ok(oqa(&["catalog", "export", "expected_ex43_alpha"]))).unwrap();
    let mut fixture: Value = serde_json::from_str(include_str!("../../core/data/expected_ex43_alpha.json")).unwrap();
    fixture["description"] = Value::String("from the override directory".into());
    let path = temp_file("expected_ex43_alpha.json", &fixture.to_string());
    let dir = path.parent().unwrap().to_str().unwrap();
    let run = oqa_with(
        &["catalog", "export", "expected_ex43_alpha"],
        None,
        &[("OQA_CATALOG_DIR", dir)],
    );
    let overridden: Value = serde_json::from_str(&ok(run)).unwrap();
    assert_eq!(overridden["description"], "from the override directory");
    assert_eq!(overridden["rows"], bundled["rows"]);
    let missing = oqa_with(
        &["catalog", "export", "expected_ex41_alpha"],
        None,
        &[("OQA_CATALOG_DIR", dir)],
    );
    assert_eq!(missing.code, 2);
}

#[test]
fn eval_substitutes_and_recertifies() {
    let out = ok(oqa(&["eval", "catalog:ex45_nonuple(nu)", "--set", "nu=3/2"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"], serde_json::json!([]));
    assert_eq!(piped(&["check", "nonuple", "-"], &out).code, 0);
    let csv = ok(oqa(&["export", "matrix", "catalog:mn_oqa(2)", "--set", "a=2"]));
    assert_eq!(csv.lines().next().unwrap().split(',').next(), Some("2"));
}

#[test]
fn output_flag_writes_a_file() {
    let path = temp_file("out.json", "");
    ok(oqa(&[
        "build",
        "thm37",
        "catalog:mn_oqa(2)",
        "--output",
        path.to_str().unwrap(),
    ]));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(!ok(oqa(&["check", "oqa", path.to_str().unwrap()])).is_empty());
    assert!(written.contains("\"kind\": \"oqa\"") || written.contains("\"kind\":\"oqa\""));
}
