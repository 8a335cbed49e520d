use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.json"))
}

fn movquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_movquad")).args(args).output().expect("binary runs")
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let out = movquad(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), v)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("movquad-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn analyze_bideg_3_2() {
    let f = fixture("bideg32");
    let (code, v) = json_run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!((r["r"].as_u64(), r["mu0"].as_u64(), r["eta0"].as_u64()), (Some(6), Some(2), Some(3)));
    assert_eq!((r["nu0"].as_u64(), r["zeta0"].as_u64()), (Some(2), Some(2)));
    assert_eq!(r["window"], serde_json::json!([2, 3]));
    assert_eq!(v["field"], "QQ");
}

#[test]
fn transpose_swaps_directions() {
    let f = fixture("bideg32");
    let (_, plain) = json_run(&["analyze", f.to_str().unwrap(), "--field", "fp"]);
    let (code, t) = json_run(&["analyze", f.to_str().unwrap(), "--field", "fp", "--transpose"]);
    assert_eq!(code, 0);
    assert_eq!((t["m"].as_u64(), t["n"].as_u64()), (Some(2), Some(3)));
    assert_eq!(t["result"]["eta0"], plain["result"]["zeta0"]);
    assert_eq!(t["result"]["zeta0"], plain["result"]["eta0"]);
    assert_eq!(t["result"]["window"], plain["result"]["transposed_window"]);
}

#[test]
fn matrix_bideg_3_2_is_square_with_det_f() {
    let f = fixture("bideg32");
    let (code, v) = json_run(&["matrix", f.to_str().unwrap(), "--mu", "1", "--nu", "1"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["square"], true);
    assert_eq!((r["planes"].as_u64(), r["quadrics"].as_u64()), (Some(2), Some(2)));
    assert_eq!(r["matrix"]["rows"].as_array().unwrap().len(), 4);
    assert_eq!(r["oracle"]["degF"], 6);
    assert_eq!(r["oracle"]["power"], 1);
    assert_eq!(r["oracle"]["multiple_of_power"], true);
}

#[test]
fn complex_bideg_3_3() {
    let f = fixture("bideg33");
    let (code, v) = json_run(&["complex", f.to_str().unwrap(), "--mu", "1", "--nu", "2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["shape"], serde_json::json!({"rows": 6, "planes": 7, "quadrics": 1, "z2": 2}));
    assert_eq!(r["degree"], 5);
    assert_eq!(r["cross_check"], true);
    assert_eq!(r["oracle"]["multiple_of_power"], true);
}

#[test]
fn implicitize_picks_the_method_from_the_window() {
    let (code, v) = json_run(&["implicitize", fixture("bideg33").to_str().unwrap(), "--field", "fp"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["method"], "complex");
    assert_eq!(v["result"]["bidegree"], serde_json::json!([1, 2]));
    let (code, v) = json_run(&["implicitize", fixture("bideg22").to_str().unwrap(), "--field", "fp"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["method"], "matrix");
    assert_eq!(v["result"]["degree"], 7);
    assert_eq!(v["result"]["oracle"]["multiple_of_power"], true);
}

#[test]
fn planes_and_quadrics_of_segre() {
    let f = fixture("segre");
    let (code, v) = json_run(&["planes", f.to_str().unwrap(), "--mu", "1", "--nu", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 2);
    let (code, v) = json_run(&["quadrics", f.to_str().unwrap(), "--mu", "0", "--nu", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["complement"]["basis"], serde_json::json!([["x0*x3 - x1*x2"]]));
    let (code, v) = json_run(&["quadrics", f.to_str().unwrap(), "--mu", "0", "--nu", "0", "--quadric-source", "saturated"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["complement"]["dim"], 1);
    assert!(v["result"]["saturation"]["exponent"].is_u64());
}

#[test]
fn verify_exit_codes() {
    let f = fixture("segre");
    let ok = movquad(&["verify", f.to_str().unwrap(), "--form", "-2*x0*x3 + 2*x1*x2"]);
    assert_eq!(ok.status.code(), Some(0));
    let garbled = movquad(&["verify", f.to_str().unwrap(), "--form", "(x0*x3 - x1*x2)^2"]);
    assert_eq!(garbled.status.code(), Some(1), "the grammar has no parentheses");
    let power = movquad(&["verify", f.to_str().unwrap(), "--form", "x0*x3 - x1*x2", "--power", "2"]);
    assert_eq!(power.status.code(), Some(2));
    let wrong = movquad(&["verify", f.to_str().unwrap(), "--form", "x0*x3 + x1*x2"]);
    assert_eq!(wrong.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&wrong.stdout).contains("NO"));
}

#[test]
fn no_verify_skips_the_oracle() {
    let f = fixture("segre");
    let (code, v) = json_run(&["matrix", f.to_str().unwrap(), "--mu", "1", "--nu", "0", "--no-verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["determinant"], "x0*x3 - x1*x2");
    assert!(v["result"]["oracle"].is_null());
}

#[test]
fn input_errors_exit_with_one() {
    let segre = fixture("segre");
    let s = segre.to_str().unwrap();
    let bideg33 = fixture("bideg33");
    let dependent = scratch("dependent", r#"{"m":1,"n":1,"f":["s0*t0","s0*t1","s1*t0","s0*t0 + s0*t1"]}"#);
    let misshaped = scratch("misshaped", r#"{"m":1,"n":1,"f":["s0*t0","s0*t1","s1*t0","s1^2"]}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", "/definitely/not/here.json"],
        vec!["analyze", s, "--field", "fp:7"],
        vec!["matrix", s, "--mu", "1"],
        vec!["analyze", s, "--mu", "1", "--nu", "1"],
        vec!["verify", s],
        vec!["frobnicate", s],
        vec!["complex", bideg33.to_str().unwrap(), "--mu", "0", "--nu", "2"],
        vec!["analyze", dependent.to_str().unwrap()],
        vec!["analyze", misshaped.to_str().unwrap()],
    ];
    for args in cases {
        let out = movquad(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let f = fixture("bideg33");
    let args = ["complex", f.to_str().unwrap(), "--mu", "1", "--nu", "2", "--field", "fp", "--seed", "7"];
    let a = movquad(&args);
    let b = movquad(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("bideg33 over GF(4611686018427387847), bidegree (3,3)\n"));
    assert!(text.contains("6 <- 7+1 <- 2"));
}

#[test]
fn help_exits_cleanly() {
    let out = movquad(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
}
