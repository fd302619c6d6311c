use std::process::Command;

use serde_json::Value;

fn nervelab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nervelab")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("nervelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn nerve_of_hexagon_arcs_is_triangle_boundary() {
    let (code, out) = nervelab(&["nerve", "corpus:hexagon-arcs"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["simplices"], serde_json::json!([[0, 1], [0, 2], [1, 2]]));
}

#[test]
fn cech_of_equilateral_at_half_is_hollow() {
    let cloud = scratch("tri.json", r#"{"d":2,"points":[[0,0],[1,0],[0.5,0.8660254037844386]]}"#);
    let (code, out) = nervelab(&["cech", &cloud, "--radius", "0.5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["simplices"].as_array().unwrap().len(), 3);
}

#[test]
fn csv_clouds_are_accepted() {
    let cloud = scratch("sq.csv", "x,y\n0,0\n1,0\n1,1\n0,1\n");
    let (code, out) = nervelab(&["alpha", &cloud, "--radius", "0.5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["simplices"].as_array().unwrap().len(), 4);
}

#[test]
fn morse_with_field_gives_three_collapses() {
    let k = scratch("full.json", r#"{"simplices":[[0,1,2]]}"#);
    let f = scratch("field.json", r#"{"pairs":[[[1],[0,1]],[[2],[0,2]],[[1,2],[0,1,2]]],"critical":[[0]]}"#);
    let (code, out) = nervelab(&["morse", &k, "--field", &f]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn malformed_input_exits_with_two() {
    let bad = scratch("bad.json", r#"{"d":2,"points":[[0,0],[1]]}"#);
    assert_eq!(nervelab(&["cech", &bad, "--radius", "1"]).0, 2);
    let truncated = scratch("trunc.json", r#"{"base":"#);
    assert_eq!(nervelab(&["nerve", &truncated]).0, 2);
}

#[test]
fn verify_reports_follow_the_schema_and_are_reproducible() {
    let args = ["verify", "bjorner", "corpus:octahedron-hemispheres", "--no-timing"];
    let (code, a) = nervelab(&args);
    assert_eq!(code, 0);
    assert_eq!(a, nervelab(&args).1);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["instance"], "corpus:octahedron-hemispheres");
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(c.get("witness").is_some() && c["ms"].is_number());
    }
}

#[test]
fn verify_bst_octahedron_and_cech_alpha_pass() {
    assert_eq!(nervelab(&["verify", "bst", "corpus:octahedron"]).0, 0);
    assert_eq!(nervelab(&["verify", "cech-alpha", "corpus:random-5-10"]).0, 0);
}

#[test]
fn barcode_of_square_has_the_analytic_loop() {
    let (code, out) = nervelab(&["barcode", "corpus:unit-square", "--mode", "cech"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let bar = &v[1]["bars"][0];
    assert_eq!(bar[0].as_f64().unwrap(), 0.5);
    assert!((bar[1].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn svg_output_for_planar_complexes() {
    let (code, out) = nervelab(&["cech", "corpus:unit-square", "--radius", "0.6", "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<svg") && out.matches("<line").count() == 4);
}

#[test]
fn deterministic_outputs() {
    let a = nervelab(&["morse", "corpus:torus7", "--seed", "5"]).1;
    assert_eq!(a, nervelab(&["morse", "corpus:torus7", "--seed", "5"]).1);
}
