use std::process::Command;

use serde_json::Value;

fn ofa(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ofa")).args(args).output().expect("ofa runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v, String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn group_order_report() {
    let (code, v, _) = ofa(&["group", "order", "--family", "symp", "--n", "2", "--ring", "gf:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "ofa-report/1");
    assert_eq!(v["command"], "group order");
    assert_eq!(v["flags"]["family"], "symp");
    assert_eq!(v["flags"]["ring"], "gf:2");
    assert_eq!(v["result"]["order"], 720);
    assert_eq!(v["passed"], true);
}

#[test]
fn failing_check_exits_one() {
    let (code, v, _) = ofa(&["construct", "compare", "--family", "orth-odd", "--n", "1", "--ring", "zmod:2", "--seed", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
}

#[test]
fn errors_exit_two() {
    let (code, v, err) = ofa(&["axioms", "--family", "lin", "--n", "1", "--ring", "zmod:3", "--mode", "sampled"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
    assert!(err.contains("seed"), "{err}");

    let (code, v, _) = ofa(&["group", "order", "--family", "lin", "--n", "1", "--ring", "gf:6"]);
    assert_eq!(code, 2);
    assert_eq!(v["passed"], false);

    let (code, _, _) = ofa(&["hdet", "--family", "orth-even", "--n", "1", "--ring", "zmod:3"]);
    assert_eq!(code, 2);
}

#[test]
fn report_to_file() {
    let path = std::env::temp_dir().join(format!("ofa-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, v, _) = ofa(&["--out", p, "clifford", "center", "--dim", "2", "--ring", "gf:3"]);
    assert_eq!(code, 0);
    assert_eq!(v, Value::Null);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "clifford center");
    assert!(v["flags"].get("out").is_none());
    assert!(text.ends_with("}\n"));
}

#[test]
fn nil2_pipeline_through_files() {
    let path = std::env::temp_dir().join(format!("ofa-nil2-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _, _) = ofa(&["--out", p, "nil2", "extend", "--preset", "heisenberg", "--ext", "f2-f4"]);
    assert_eq!(code, 0);
    let (code, v, err) = ofa(&["nil2", "probe", "--input", p, "--ext", "f2-f4"]);
    std::fs::remove_file(&path).unwrap();
    // the extended module lives over F4, not the base ring F2
    assert_eq!(code, 2, "{v}");
    assert!(err.contains("base"), "{err}");
    let (code, _, _) = ofa(&["nil2", "probe", "--preset", "heisenberg", "--ext", "z4-gr4"]);
    assert_eq!(code, 0);

    let (code, v, _) = ofa(&["nil2", "counterexample", "--modulus", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "image of F2 ⊗ M0 vanishes");
}
