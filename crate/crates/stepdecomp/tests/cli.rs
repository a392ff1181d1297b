//! Behavior of the `stepdecomp` binary: exit codes, document shapes,
//! byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stepdecomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn decompose_bilinear_with_oracle() {
    let out = run(&["decompose", "--expr", "x1*x2", "--n", "2", "--at", "2,3", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["n_vars"], 2);
    let reconstruction = doc["reconstruction"].as_f64().unwrap();
    let direct = doc["direct_value"].as_f64().unwrap();
    assert!((reconstruction - 6.0).abs() <= 1e-9);
    assert_eq!(direct, 6.0);
    assert!(doc["abs_error"].as_f64().unwrap() <= 1e-9);
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[0]["subset"], serde_json::json!([1]));
    assert_eq!(terms[2]["subset"], serde_json::json!([1, 2]));
    for t in terms {
        assert!(t["abs_oracle_gap"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn decompose_parse_error_exits_2() {
    let out = run(&["decompose", "--expr", "x1 +", "--n", "1", "--at", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no partial output on failure");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("offset 4"), "stderr: {err}");
}

#[test]
fn decompose_constant_at_origin() {
    let out = run(&["decompose", "--expr", "7", "--n", "2", "--at", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["anchor"].as_f64().unwrap(), 7.0);
    for t in doc["terms"].as_array().unwrap() {
        assert_eq!(t["value"].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn usage_errors_exit_1() {
    // point length does not match --n
    let out = run(&["decompose", "--expr", "x1", "--n", "2", "--at", "1"]);
    assert_eq!(out.status.code(), Some(1));
    // negative coordinate leaves the orthant
    let out = run(&["decompose", "--expr", "x1", "--n", "1", "--at", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    // missing --k value
    let out = run(&["smooth", "--expr", "x1", "--n", "1", "--at", "1", "--k"]);
    assert_eq!(out.status.code(), Some(1));
    // unknown flag
    let out = run(&["decompose", "--expr", "x1", "--n", "1", "--at", "1", "--frob"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_passes_for_smooth_product() {
    let out = run(&[
        "verify", "--expr", "sin(x1)*cos(x2)", "--n", "2", "--grid", "0:3:5", "--tol", "1e-6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS"), "{text}");
    assert!(text.contains("25 points"), "{text}");
}

#[test]
fn verify_linear_function_is_nearly_exact() {
    let out = run(&[
        "verify", "--expr", "x1", "--n", "1", "--grid", "0:3:4", "--tol", "1e-12",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["pass"].as_bool().unwrap());
    assert!(doc["max_rel_error"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn verify_domain_error_exits_3() {
    let out = run(&["verify", "--expr", "log(x1)", "--n", "1", "--grid", "0:1:3"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("log"), "stderr: {err}");
}

#[test]
fn verify_failing_tolerance_exits_3_with_full_report() {
    // an impossible tolerance forces a numeric failure, not a usage error
    let out = run(&[
        "verify", "--expr", "exp(x1)", "--n", "1", "--grid", "0:3:3", "--tol", "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "report still printed: {text}");
}

#[test]
fn smooth_sweep_table_shape_and_monotonicity() {
    let out = run(&[
        "smooth", "--expr", "x1*x2", "--n", "2", "--at", "1,1", "--k", "10,100,1000,10000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,term_subset,smooth_value,exact_value,abs_error");
    assert_eq!(lines.len(), 1 + 12, "4 steepness values x 3 subsets");

    let mut full_term_errors = Vec::new();
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        if line.contains("\"{1,2}\"") {
            full_term_errors.push(fields.last().unwrap().parse::<f64>().unwrap());
        } else {
            // no-interaction subsets: integrand is identically zero
            let err: f64 = fields.last().unwrap().parse().unwrap();
            assert!(err <= 1e-9, "null subset error {err:e} in {line}");
        }
    }
    assert_eq!(full_term_errors.len(), 4);
    assert!(
        full_term_errors.windows(2).all(|w| w[1] < w[0]),
        "errors not strictly decreasing: {full_term_errors:?}"
    );
}

#[test]
fn lemmas_suite_passes() {
    let out = run(&["lemmas"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("step value table"));
    assert!(text.contains("overall: PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn json_round_trips_and_resums_bitwise() {
    let out = run(&[
        "decompose", "--expr", "exp(x1+x2)", "--n", "2", "--at", "1,1", "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut total = doc["anchor"].as_f64().unwrap();
    for t in doc["terms"].as_array().unwrap() {
        total += t["value"].as_f64().unwrap();
    }
    let reconstruction = doc["reconstruction"].as_f64().unwrap();
    assert_eq!(
        total.to_bits(),
        reconstruction.to_bits(),
        "re-summing parsed terms must reproduce the reported reconstruction"
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "decompose", "--expr", "sin(x1)*cos(x2)+exp(x1*x2)", "--n", "2", "--at", "1.5,2.5",
        "--oracle",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let args = ["smooth", "--expr", "x1*x2", "--n", "2", "--at", "1,1", "--k", "10,100"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_file_instead_of_stdout() {
    let dir = std::env::temp_dir().join("stepdecomp-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = run(&[
        "decompose", "--expr", "x1", "--n", "1", "--at", "2",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["reconstruction"].as_f64().unwrap(), 2.0);
    std::fs::remove_file(&path).ok();
}

#[test]
fn text_format_prints_terms() {
    let out = run(&[
        "decompose", "--expr", "x1*x2", "--n", "2", "--at", "2,3", "--format", "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("term {1,2}"), "{text}");
    assert!(text.contains("reconstruction"), "{text}");
}
