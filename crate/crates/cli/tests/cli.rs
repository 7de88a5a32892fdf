use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn polypack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polypack"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polypack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn curvatures(packing: &Value) -> Vec<Value> {
    packing["balls"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["curvature"].clone())
        .collect()
}

fn ints(v: &[Value]) -> Vec<i64> {
    let mut out: Vec<i64> = v
        .iter()
        .map(|x| x.as_i64().expect("integer curvature"))
        .collect();
    out.sort();
    out
}

#[test]
fn centred_orthoplex_projection() {
    let v = json_of(&polypack(&[
        "generate",
        "--polytope",
        "orthoplex",
        "--dim",
        "4",
        "--cbp",
        "1",
    ]));
    assert_eq!(ints(&curvatures(&v)), vec![0, 0, 1, 1, 1, 1, 2, 2]);
}

#[test]
fn exact_generate_round_trips_through_a_file() {
    let path = scratch("b0.json");
    let out = polypack(&[
        "generate",
        "--polytope",
        "b0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(ints(&curvatures(&first)), vec![0, 0, 1, 1, 1, 1, 2, 2]);
    let r = json_of(&polypack(&[
        "orbit",
        "--input",
        path.to_str().unwrap(),
        "--depth",
        "0",
        "--balls",
    ]));
    assert_eq!(r["seed"]["balls"], first["balls"]);
    assert_eq!(r["size"], 8);
}

#[test]
fn lift_then_orbit_is_integral() {
    let path = scratch("octa.json");
    let lifted = polypack(&[
        "lift",
        "--kind",
        "octa",
        "--curvatures",
        "-2,4,5",
        "--verify-depth",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(lifted.status.code(), Some(0));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(s["equivalence"]["passed"], true);
    assert_eq!(ints(&curvatures(&s["planar"])), vec![-2, 4, 5, 5, 6, 12]);
    let r = json_of(&polypack(&[
        "orbit",
        "--input",
        path.to_str().unwrap(),
        "--depth",
        "8",
        "--max-curvature",
        "200",
        "--census",
    ]));
    assert_eq!(r["integral"], true);
    assert_eq!(r["census"]["non_integral"], 0);
}

#[test]
fn census_is_csv() {
    let path = scratch("tetra.json");
    let out = polypack(&[
        "generate",
        "--kind",
        "tetra",
        "--curvatures",
        "-1,2,2,3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = polypack(&[
        "census",
        "--input",
        path.to_str().unwrap(),
        "--depth",
        "3",
        "--max-curvature",
        "50",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("curvature,count"));
    assert_eq!(lines.next(), Some("-1,1"));
    assert_eq!(lines.next(), Some("2,2"));
}

#[test]
fn render_is_deterministic() {
    let path = scratch("render.json");
    let _ = polypack(&[
        "generate",
        "--kind",
        "octa",
        "--curvatures",
        "-2,4,5",
        "--out",
        path.to_str().unwrap(),
    ]);
    let args = [
        "render",
        "--input",
        path.to_str().unwrap(),
        "--depth",
        "3",
        "--labels",
        "20",
    ];
    let a = polypack(&args);
    let b = polypack(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"fill="none""#), "bounding disk is outlined");
    assert!(svg.contains(">4</text>"));
}

#[test]
fn render_spheres_and_half_spaces() {
    let path = scratch("b0-render.json");
    let _ = polypack(&[
        "generate",
        "--polytope",
        "b0",
        "--out",
        path.to_str().unwrap(),
    ]);
    let out = polypack(&[
        "render",
        "--input",
        path.to_str().unwrap(),
        "--depth",
        "1",
        "--color-depth",
    ]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.contains("<circle"));
    assert!(svg.ends_with("</svg>\n"));
}

#[test]
fn probe_reports_integrality() {
    let v = json_of(&polypack(&[
        "probe-r4",
        "--depth",
        "0",
        "--max-curvature",
        "6",
    ]));
    assert_eq!(v["all_integral"], true);
    assert_eq!(v["balls"], 24);
    assert_eq!(v["missing_integers"], Value::Array(vec![]));
}

#[test]
fn verify_suite_passes() {
    let out = polypack(&["verify", "--suite", "matrices"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("matrices: PASS"));
}

#[test]
fn exit_codes() {
    assert_eq!(polypack(&["orbit", "--depth", "2"]).status.code(), Some(1));
    assert_eq!(polypack(&["--help"]).status.code(), Some(0));
    assert_eq!(
        polypack(&["generate", "--kind", "tetra", "--curvatures", "-1,2,2,4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        polypack(&[
            "generate",
            "--polytope",
            "cube",
            "--dim",
            "3",
            "--field",
            "5"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        polypack(&[
            "orbit",
            "--input",
            Path::new("/nonexistent.json").to_str().unwrap(),
            "--depth",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn field_accepts_matching_radicand() {
    let v = json_of(&polypack(&[
        "generate",
        "--polytope",
        "cube",
        "--dim",
        "3",
        "--field",
        "2",
    ]));
    assert_eq!(v["balls"].as_array().unwrap().len(), 8);
    assert_eq!(v["exact"], true);
}

#[test]
fn float_mode() {
    let v = json_of(&polypack(&[
        "--float",
        "--eps",
        "1e-8",
        "generate",
        "--kind",
        "tetra",
        "--curvatures",
        "-1,2,2,3",
    ]));
    assert_eq!(v["exact"], false);
    assert_eq!(ints(&curvatures(&v)), vec![-1, 2, 2, 3]);
}
