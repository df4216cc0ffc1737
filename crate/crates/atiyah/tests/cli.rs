use std::path::PathBuf;
use std::process::Command;

use atiyah::cli::run;
use atiyah::{parse_problem, ProblemError};
use serde_json::Value;

fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["atiyah"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json"]);
    let (out, err, code) = run(full);
    assert!(err.is_empty(), "{err}");
    (serde_json::from_str(&out).unwrap(), code)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("atiyah-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn decide_exit_codes() {
    let (r, code) = json(&["decide", &corpus("clean_line.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"]["kind"], "Vanishes");
    assert_eq!(r["verdict"]["certificate"]["coefficients"].as_array().unwrap().len(), 0);

    let (r, code) = json(&["decide", &corpus("square.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"]["witness_point"], serde_json::json!(["0"]));
    assert_eq!(r["verdict"]["jet_order"], 0);
    assert_eq!(r["replay"], true);

    let (_, code) = json(&["decide", &corpus("derived_parabola.json")]);
    assert_eq!(code, 1);
}

#[test]
fn unknown_at_tiny_bounds() {
    // the certificate for the baby example needs degree 1
    let (r, code) = json(&["decide", &corpus("baby.json"), "--degree-bound", "0", "--jet-order", "0"]);
    assert_eq!(code, 2);
    assert_eq!(r["verdict"]["kind"], "Unknown");
    assert_eq!(r["parameters"]["degree_bound"], 0);
}

#[test]
fn cocycle_routes() {
    let (r, code) = json(&["cocycle", &corpus("baby.json"), "--route", "definitional", "--check-both"]);
    assert_eq!(code, 0);
    assert_eq!(r["routes_agree"], true);
    let entries = r["cocycle"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let values: Vec<&str> = entries.iter().map(|e| e["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["0", "0", "0", "2", "1", "2"]);

    let (r, _) = json(&["cocycle", &corpus("clean_full_rank.json")]);
    assert_eq!(r["cocycle"]["zero"], true);
}

#[test]
fn operators_shapes() {
    let (r, _) = json(&["operators", &corpus("baby.json")]);
    let shapes: Vec<Value> = r["operators"].as_array().unwrap().iter().map(|m| m["shape"].clone()).collect();
    assert_eq!(shapes, [serde_json::json!([6, 12]), serde_json::json!([6, 8]), serde_json::json!([6, 6])]);

    let (r, _) = json(&["operators", &corpus("clean_zero_section.json"), "--which", "d1"]);
    let d1 = &r["operators"][0]["matrix"]["entries"];
    assert!(d1.as_array().unwrap().iter().flat_map(|row| row.as_array().unwrap()).all(|e| e == "0"));

    let p = scratch(
        "m0.json",
        r#"{"kind": "amp1", "vars": ["x"], "fiber_rank": 0, "section": []}"#,
    );
    let (r, code) = json(&["operators", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    for m in r["operators"].as_array().unwrap() {
        assert_eq!(m["shape"][0], 0);
    }
    let (text, _, _) = run(["atiyah", "operators", p.to_str().unwrap(), "--which", "d3"]);
    assert!(text.contains("0 x 1"), "{text}");
}

#[test]
fn clean_command() {
    let (r, code) = json(&["clean", &corpus("square.json")]);
    assert_eq!(code, 1);
    let reason = &r["verdict"]["reason"];
    assert_eq!((reason["dim_z"].as_u64(), reason["rank_ds"].as_u64(), reason["n"].as_u64()), (Some(0), Some(0), Some(1)));

    let (r, code) = json(&["clean", &corpus("clean_line.json")]);
    assert_eq!((code, r["verdict"]["kind"].as_str()), (0, Some("Clean")));

    let p = scratch(
        "nowitness.json",
        r#"{"kind": "amp1", "vars": ["x1", "x2"], "fiber_rank": "1", "section": ["x1"], "points": [["0", "0"]]}"#,
    );
    let (r, code) = json(&["clean", p.to_str().unwrap()]);
    assert_eq!((code, r["verdict"]["kind"].as_str()), (2, Some("Unknown")));
}

#[test]
fn verify_names_the_beta_violation() {
    let p = scratch(
        "badbeta.json",
        r#"{
          "kind": "amp1", "vars": ["x1", "x2"], "fiber_rank": "1", "section": ["x1"],
          "connection": {"gamma_e": [[["x2"]], [["0"]]]}
        }"#,
    );
    let (r, code) = json(&["verify", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["first_failure"], "connection");
    assert!(r["checks"][0]["detail"].as_str().unwrap().contains("beta"));

    let (r, code) = json(&["verify", &corpus("baby.json")]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn verify_corpus_table() {
    let (r, code) = json(&["verify", "--corpus", &corpus("")]);
    assert_eq!(code, 0);
    let files = r["files"].as_array().unwrap();
    assert!(files.len() >= 17);
    assert!(files.iter().all(|f| f["status"] == "pass"));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(run(["atiyah"]).2, 64);
    assert_eq!(run(["atiyah", "decide", "x.json", "--format", "yaml"]).2, 64);
    assert_eq!(run(["atiyah", "--help"]).2, 0);
    assert_eq!(run(["atiyah", "decide", "/nonexistent/problem.json"]).2, 66);

    let p = scratch(
        "badpoly.json",
        r#"{"kind": "amp1", "vars": ["x"], "fiber_rank": "2", "section": ["x", "x +* 1"]}"#,
    );
    let (_, err, code) = run(["atiyah", "decide", p.to_str().unwrap()]);
    assert_eq!(code, 65);
    assert!(err.contains("section[1]: 1:4"), "{err}");

    let p = scratch("notzero.json", r#"{"kind": "amp1", "vars": ["x"], "fiber_rank": "1", "section": ["x"], "points": [["1"]]}"#);
    assert_eq!(run(["atiyah", "decide", p.to_str().unwrap()]).2, 65);
}

#[test]
fn unknown_keys_are_rejected() {
    let e = parse_problem(r#"{"kind": "amp1", "vars": ["x"], "fiber_rank": "1", "section": ["x"], "colour": "red"}"#)
        .unwrap_err();
    assert!(matches!(e, ProblemError::Json(_)));
    assert!(e.to_string().contains("colour"), "{e}");
    let e = parse_problem(
        r#"{"kind": "derived", "ambient_dim": "1", "x": {"param_vars": [], "map": ["0"], "extra": 1}, "y": {"param_vars": [], "map": ["0"]}}"#,
    )
    .unwrap_err();
    assert!(e.to_string().contains("extra"), "{e}");
}

#[test]
fn reports_are_deterministic_and_reparse() {
    for format in ["json", "text"] {
        let args = ["atiyah", "decide", &corpus("rank_jump.json"), "--format", format];
        assert_eq!(run(args), run(args));
    }
    // printed polynomials parse back to the cocycle entries
    let (r, _) = json(&["cocycle", &corpus("clean_parabola_curved.json")]);
    let file = parse_problem(&std::fs::read_to_string(corpus("clean_parabola_curved.json")).unwrap()).unwrap();
    let (p, vars) = file.amp1();
    let cocycle = p.cocycle().unwrap();
    for (e, value) in r["cocycle"]["entries"].as_array().unwrap().iter().zip(cocycle.values()) {
        let s = e["value"].as_str().unwrap();
        assert_eq!(&atiyah_core::ring::parse_poly(s, vars).unwrap(), value);
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_atiyah");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["decide", &corpus("clean_line.json")]), Some(0));
    assert_eq!(status(&["decide", &corpus("cube.json")]), Some(1));
    assert_eq!(status(&["clean", &corpus("crossing.json")]), Some(1));
    assert_eq!(status(&["nonsense"]), Some(64));
}
