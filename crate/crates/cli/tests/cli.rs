//! End-to-end CLI checks: golden fields on the running example, byte
//! determinism of structured output, and exit codes.

use std::process::Command;

const EXAMPLE2: &str = "x1^3+x2^3+x3^3+x4^3+x5^3-x1-x2";

fn gmcalc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gmcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn tame_check_reports_s_polynomial() {
    let out = gmcalc(&["tame-check", EXAMPLE2]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mu: 32"));
    assert!(text.contains("S(t): 27t^3-16t"));
}

#[test]
fn structured_output_is_byte_deterministic() {
    let a = gmcalc(&["tame-check", EXAMPLE2, "--format", "structured"]);
    let b = gmcalc(&["tame-check", EXAMPLE2, "--format", "structured"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["tame_check"]["mu"], 32);
    assert_eq!(v["tame_check"]["s"], "27t^3-16t");

    let a = gmcalc(&["fermat", "4,4,4", "--format", "structured"]);
    let b = gmcalc(&["fermat", "4,4,4", "--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["fermat"]["kernel_dimension"], 25);

    // no constraints at all on the cubic surface: the kernel is everything
    let out = gmcalc(&["fermat", "3,3,3", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["fermat"]["kernel_dimension"], 8);
    assert_eq!(v["fermat"]["i_h"], serde_json::json!([]));
}

#[test]
fn picard_fuchs_reproduces_the_running_example() {
    let out = gmcalc(&[
        "picard-fuchs",
        EXAMPLE2,
        "--form",
        "1",
        "--nabla",
        "2",
        "--format",
        "structured",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["picard_fuchs"]["order"], 2);
    assert_eq!(
        v["picard_fuchs"]["coefficients"],
        serde_json::json!(["15t", "81t^2-16", "27t^3-16t"])
    );
}

#[test]
fn hodge_criterion_emits_the_intro_display() {
    let out = gmcalc(&["hodge-criterion", EXAMPLE2, "--format", "structured"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pairs = v["hodge_criterion"]["i_h"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert_eq!(pairs[0]["beta"], "1");
    assert_eq!(pairs[0]["k"], 2);
    let cleared = v["hodge_criterion"]["cleared_functionals"][0]
        .as_array()
        .unwrap();
    let nonzero: Vec<&str> = cleared
        .iter()
        .map(|c| c.as_str().unwrap())
        .filter(|c| *c != "0")
        .collect();
    assert_eq!(
        nonzero,
        vec![
            "243t^4-36t^2+64",
            "-405t^3-48t",
            "-405t^3-48t",
            "972t^2-192"
        ]
    );
}

#[test]
fn weighted_input_with_declared_variables() {
    let out = gmcalc(&[
        "milnor",
        "x^2+y^3-y",
        "--vars",
        "x,y",
        "--weights",
        "3,2",
        "--format",
        "structured",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["milnor"]["mu"], 2);
    assert_eq!(v["milnor"]["s"], "27t^2-4");
    assert_eq!(v["milnor"]["degrees"], serde_json::json!(["5/6", "7/6"]));
}

#[test]
fn connection_reports_basis_change_determinant() {
    let out = gmcalc(&[
        "connection",
        "x^2+y^3-y",
        "--vars",
        "x,y",
        "--weights",
        "3,2",
        "--format",
        "structured",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["connection"]["det_m"], "t^2-4/27");
    // nabla(eta) column (45t/(2S), -15/S), S = 27t^2-4, in monic-denominator
    // canonical form
    let col0: Vec<&str> = v["connection"]["nabla_eta"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[0].as_str().unwrap())
        .collect();
    assert_eq!(col0, vec!["((5/6)t)/(t^2-4/27)", "(-5/9)/(t^2-4/27)"]);
}

#[test]
fn exit_codes_are_distinct() {
    // parse error -> 2
    let out = gmcalc(&["tame-check", "x1^"]);
    assert_eq!(out.status.code(), Some(2));
    // not tame -> 3
    let out = gmcalc(&["tame-check", "x1^2*x2^2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not-tame"));
    // critical value -> 4 (b = 0 is a critical value; pinned b never retries)
    let out = gmcalc(&["hodge-basis", "x1^3+x2^3", "--b", "0"]);
    assert_eq!(out.status.code(), Some(4));
    // odd fiber dimension -> 6
    let out = gmcalc(&["hodge-criterion", "x1^3+x2^3"]);
    assert_eq!(out.status.code(), Some(6));
    let out = gmcalc(&["fermat", "3,3"]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn unknown_variable_names_need_declaration() {
    let out = gmcalc(&["tame-check", "x^2+y^2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--vars"));
}

#[test]
fn default_b_retries_on_critical_value() {
    // S(t) = t(27t^2 - 16)/... for x1^3+x2^3-x1: critical values include 0;
    // b = 1 works directly, but make sure a default run succeeds even when
    // the polynomial has 1 as a critical value: f = x1^2 + x2^2 + 1 has
    // critical value 1 exactly
    let out = gmcalc(&["hodge-basis", "x1^2+x2^2+1"]);
    assert!(
        out.status.success(),
        "default b must retry past the critical value"
    );
}
