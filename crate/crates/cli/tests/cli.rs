use std::process::{Command, Output};

use serde_json::Value;

fn finsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsym"))
        .args(args)
        .env_remove("FINSYM_MAX_ENUM")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = finsym(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const COMMANDS: &[&[&str]] = &[
    &["cohomology", "--manifold", "torus:3", "--coeff", "Z2xZ2"],
    &["cohomology", "--manifold", "pants", "--coeff", "Z3", "--relative", "--enumerate"],
    &["partition", "--target", "B2:Z2", "--manifold", "torus:5"],
    &["partition", "--target", "BG:S3", "--manifold", "surface:1"],
    &["bordism", "--shape", "pants", "--group", "Z3"],
    &["bordism", "--trace-circles", "2", "--group", "Z2"],
    &["fusion", "--ring", "ty:Z2"],
    &["fusion", "--quotient-defect", "S3"],
    &["lines", "--ambient", "Z4", "--subgroup", "Z2", "--q", "1/4"],
    &["anyons", "--N", "4", "--p", "3", "--flux", "8"],
    &["anomaly", "--ym-theta-pi", "5"],
    &["anomaly", "--instanton", "2", "--P", "1"],
    &["anomaly", "--chiral", "1/3", "2/3"],
    &["gauss", "--N", "7", "--p", "3"],
    &["ising", "--L", "2", "--T", "3", "--beta", "0.3", "--gauge", "--kw"],
    &["ising", "--L", "2", "--T", "2", "--sweep", "0.1:1.0:4", "--method", "transfer"],
    &["problem1", "--group", "Z2"],
];

#[test]
fn every_command_is_deterministic_json() {
    for args in COMMANDS {
        let a = finsym(args);
        let b = finsym(args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: Value = serde_json::from_slice(&a.stdout).expect("re-parses");
        assert!(v.is_object() || v.is_array());
    }
}

#[test]
fn every_command_renders_plain_and_csv() {
    for args in COMMANDS {
        for fmt in ["plain", "csv"] {
            let mut full = args.to_vec();
            full.extend(["--format", fmt]);
            let out = finsym(&full);
            assert!(out.status.success(), "{full:?}");
            assert!(!out.stdout.is_empty());
        }
    }
}

#[test]
fn documented_outputs() {
    assert_eq!(
        finsym(&["partition", "--target", "B2:Z2", "--manifold", "torus:5"]).stdout,
        b"{\"value\":\"64/1\"}\n"
    );
    assert_eq!(
        finsym(&["anomaly", "--ym-theta-pi", "4"]).stdout,
        b"{\"verdict\":\"anomalous\"}\n"
    );
    let p = json(&["problem1", "--group", "Z2"]);
    assert_eq!(p["circle_dim"], 2);
    assert_eq!(p["cylinder_is_identity"], true);
    assert_eq!(p["pants"]["entries"][0], serde_json::json!(["1/1", "0/1", "0/1", "1/1"]));
    assert_eq!(p["trace"]["trace"], "2/1");

    let v = json(&["anomaly", "--ym-theta-pi", "3"]);
    assert_eq!(v, serde_json::json!({"verdict": "counterterm", "k": 1}));
    let c = json(&["anomaly", "--chiral", "1/4", "1/4"]);
    assert_eq!(c, serde_json::json!({"result": "1/2", "condensed_order": 2}));
    let g = json(&["gauss", "--N", "12", "--p", "5"]);
    assert_eq!(g["exact"], 12);
    let l = json(&["lines", "--ambient", "Z2", "--subgroup", "Z2", "--q", "1/4"]);
    assert_eq!(l["pairs"], serde_json::json!([{"m": [0], "e": [0]}, {"m": [1], "e": [1]}]));
}

#[test]
fn ising_sectors_and_sweep() {
    let v = json(&["ising", "--L", "1", "--T", "1", "--beta", "0.5", "--sectors", "all", "--gauge"]);
    assert_eq!(v["sectors"]["00"], 2.0);
    let e = (-1.0f64).exp();
    let gauged = v["gauged"].as_f64().unwrap();
    assert!((gauged - (1.0 + e) * (1.0 + e)).abs() < 1e-14);

    let only = json(&["ising", "--L", "2", "--T", "2", "--beta", "0.3", "--sectors", "11"]);
    assert_eq!(only["sectors"].as_object().unwrap().len(), 1);

    let csv = finsym(&["ising", "--L", "2", "--T", "2", "--sweep", "0.2:0.8:3", "--kw", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("L,T,beta,beta_dual,kw_ratio,sectors"));
    for row in &lines[1..] {
        let ratio: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert!((ratio - 16.0).abs() < 1e-9, "{row}");
    }
}

#[test]
fn floats_have_at_most_15_significant_digits() {
    let v = json(&["ising", "--L", "2", "--T", "2", "--beta", "0.3"]);
    for (_, z) in v["sectors"].as_object().unwrap() {
        let s = format!("{:e}", z.as_f64().unwrap());
        let mantissa = s.split('e').next().unwrap().replace(['.', '-'], "");
        assert!(mantissa.len() <= 15, "{s}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(finsym(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(finsym(&["gauss", "--N", "5", "--bogus"]).status.code(), Some(2));
    assert_eq!(finsym(&["gauss", "--N", "4", "--p", "2"]).status.code(), Some(2));
    assert_eq!(finsym(&["partition", "--target", "B2:Z2", "--manifold", "nowhere"]).status.code(), Some(2));
    assert_eq!(finsym(&["ising", "--L", "5", "--T", "5", "--beta", "0.3"]).status.code(), Some(3));
    let guarded = ["cohomology", "--manifold", "torus:3", "--coeff", "Z4", "--degree", "1", "--enumerate"];
    let mut args = guarded.to_vec();
    args.extend(["--max-enum", "10"]);
    assert_eq!(finsym(&args).status.code(), Some(3));
    assert_eq!(finsym(&guarded).status.code(), Some(0));
    let env = Command::new(env!("CARGO_BIN_EXE_finsym"))
        .args(guarded)
        .env("FINSYM_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert_eq!(finsym(&["--help"]).status.code(), Some(0));
}

#[test]
fn threads_do_not_change_output() {
    let base = finsym(&["partition", "--target", "BG:S3", "--manifold", "surface:2"]);
    for t in ["2", "4"] {
        let out = finsym(&["partition", "--target", "BG:S3", "--manifold", "surface:2", "--threads", t]);
        assert_eq!(out.stdout, base.stdout);
    }
    let base = finsym(&["ising", "--L", "4", "--T", "4", "--beta", "0.4"]);
    let par = finsym(&["ising", "--L", "4", "--T", "4", "--beta", "0.4", "--threads", "3"]);
    assert_eq!(base.stdout, par.stdout);
}

#[test]
fn cohomology_matches_enumeration() {
    let rows = json(&["cohomology", "--manifold", "rp:2", "--coeff", "Z4", "--enumerate"]);
    let orders: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![4, 2, 2]);
    for r in rows.as_array().unwrap() {
        assert_eq!(r["order"], r["enumerated_classes"]);
    }
}

#[test]
fn json_input_files() {
    let dir = std::env::temp_dir().join(format!("finsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ring = dir.join("fib.json");
    std::fs::write(&ring, r#"{"labels":["1","t"],"unit":0,"N":[[[1,0],[0,1]],[[0,1],[1,1]]],"dual":[0,1]}"#).unwrap();
    let v = json(&["fusion", "--file", ring.to_str().unwrap()]);
    assert_eq!(v["fiber_functor"]["verdict"], "impossible");
    let cx = dir.join("circle.json");
    std::fs::write(&cx, r#"{"cells":[1,1],"boundaries":[[[0]]]}"#).unwrap();
    let h = json(&["cohomology", "--complex", cx.to_str().unwrap(), "--coeff", "Z3", "--degree", "1"]);
    assert_eq!(h["order"], 3);
    assert_eq!(finsym(&["fusion", "--file", "/nonexistent/ring.json"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
