use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use srg_cli::render::embedded_regions;
use srg_core::io::{parse_cloud_csv, parse_region_json};
use tempfile::TempDir;

fn srg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

const TWO_BY_TWO: &str = r#"{"n":2,"data":[1,2,3,4]}"#;

#[test]
fn sample_identity_gives_one() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "i.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let out = srg(&["sample", "--matrix", s(&m), "--count", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im"));
    assert_eq!(lines.collect::<Vec<_>>(), vec!["1,0"; 10]);
}

#[test]
fn sample_two_by_two_lies_on_circles() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.json", TWO_BY_TWO);
    let out = srg(&["sample", "--matrix", s(&m), "--count", "10000", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let points = parse_cloud_csv(&stdout(&out)).unwrap();
    assert_eq!(points.len(), 10_000);
    let r = 8.5f64.sqrt();
    for p in points {
        let d = [0.5, -0.5]
            .map(|c: f64| ((p.re() - 2.5).hypot(p.im() - c) - r).abs())
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        assert!(d <= 1e-9 * 30f64.sqrt(), "{p:?}");
    }
}

#[test]
fn sample_is_deterministic_and_writes_files() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.json", r#"{"n":3,"data":[1,2,0,-1,3,1,0.5,0,2]}"#);
    let (f1, f2) = (dir.path().join("1.csv"), dir.path().join("2.csv"));
    for f in [&f1, &f2] {
        let out = srg(&["sample", "--matrix", s(&m), "--count", "500", "--strategy", "eigen-directed", "--seed", "9", "--out", s(f)]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f2).unwrap());
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    let out = srg(&["sample", "--matrix", s(&missing)]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write(&dir, "bad.json", r#"{"n":2,"data":[1,2,3]}"#);
    let out = srg(&["exact", "--matrix", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("data"));

    let bad_csv = write(&dir, "bad.csv", "1,2\n3,x\n");
    let out = srg(&["eigs", "--matrix", s(&bad_csv)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));

    let m = write(&dir, "a.json", TWO_BY_TWO);
    assert_eq!(srg(&["sample", "--matrix", s(&m), "--strategy", "nope"]).status.code(), Some(2));
    assert_eq!(srg(&["sample", "--matrix", s(&m), "--count", "0"]).status.code(), Some(2));
    assert_eq!(srg(&["verify", "--suite", "nope", "--matrix", s(&m)]).status.code(), Some(2));
    assert_eq!(srg(&["verify", "--suite", "normal"]).status.code(), Some(2));
    assert_eq!(srg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(srg(&["--help"]).status.code(), Some(0));
}

#[test]
fn thread_variable_is_validated() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.json", TWO_BY_TWO);
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_srg"))
            .args(["sample", "--matrix", s(&m), "--count", "3000"])
            .env("SRG_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("zero").status.code(), Some(2));
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exact_outputs() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.json", TWO_BY_TWO);
    let out = srg(&["exact", "--matrix", s(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["kind"], "two_circles");
    assert_eq!(json["center"], serde_json::json!([2.5, 0.5]));
    assert!((json["radius"].as_f64().unwrap() - 8.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(json["meta"]["tool_version"], env!("CARGO_PKG_VERSION"));

    let d = write(&dir, "d.csv", "1,0,0\n0,2,0\n0,0,4\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&srg(&["exact", "--matrix", s(&d)]))).unwrap();
    assert_eq!(json["kind"], "disk_diff");
    assert_eq!(json["outer"], serde_json::json!([1.0, 4.0]));
    assert_eq!(json["removed"], serde_json::json!([[1.0, 2.0], [2.0, 4.0]]));

    let general = write(&dir, "g.csv", "1,2,0,0\n0,1,3,0\n0,0,1,4\n5,0,0,1\n");
    let out = srg(&["exact", "--matrix", s(&general)]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["kind"], "unsupported");
    assert!(json["hint"].as_str().unwrap().contains("sample"));
}

#[test]
fn eigs_outputs() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.csv", "1,0,0\n0,2,0\n0,0,4\n");
    assert_eq!(stdout(&srg(&["eigs", "--matrix", s(&d)])), "1,0\n2,0\n4,0\n");
    let rot = write(&dir, "r.csv", "0,1\n-1,0\n");
    assert_eq!(stdout(&srg(&["eigs", "--matrix", s(&rot)])), "0,1\n0,-1\n");

    let m = write(&dir, "a.json", TWO_BY_TWO);
    let text = stdout(&srg(&["eigs", "--matrix", s(&m)]));
    let values: Vec<f64> = text.lines().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    let root = 33f64.sqrt();
    assert!((values[0] - (5.0 - root) / 2.0).abs() < 1e-9);
    assert!((values[1] - (5.0 + root) / 2.0).abs() < 1e-9);
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn verify_twocircles_passes() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.json", TWO_BY_TWO);
    let out = srg(&["verify", "--suite", "twocircles", "--matrix", s(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["overall"], true);
    assert_eq!(r["records"][0]["status"], "pass");
    assert!(r["records"][0]["metric"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn verify_spectrum_skips_two_by_two() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.json", TWO_BY_TWO);
    let out = srg(&["verify", "--suite", "spectrum", "--matrix", s(&m)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["records"][0]["status"], "skipped");
}

#[test]
fn verify_normal_rejects_perturbed_matrix() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "p.csv", "1,1,0\n-1,1,0.001\n0,0,3\n");
    let out = srg(&["verify", "--suite", "normal", "--matrix", s(&m)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["overall"], false);
    assert_eq!(r["records"][0]["status"], "fail");
    assert!(r["records"][0]["detail"].as_str().unwrap().contains("not normal"));
}

#[test]
fn verify_geometry_and_blockdiag() {
    assert_eq!(srg(&["verify", "--suite", "geometry", "--seed", "4"]).status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", r#"{"blocks":[{"n":2,"data":[1,1,-1,1]},{"n":1,"data":[3]}]}"#);
    let out = srg(&["verify", "--suite", "blockdiag", "--matrix", s(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let statuses: Vec<&str> = r["records"].as_array().unwrap().iter().map(|x| x["status"].as_str().unwrap()).collect();
    assert!(statuses.iter().all(|&s| s == "pass"), "{statuses:?}");
}

#[test]
fn render_round_trip() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "a.json", TWO_BY_TWO);
    let region = dir.path().join("region.json");
    assert_eq!(srg(&["exact", "--matrix", s(&m), "--out", s(&region)]).status.code(), Some(0));
    let cloud = dir.path().join("cloud.csv");
    assert_eq!(srg(&["sample", "--matrix", s(&m), "--count", "200", "--out", s(&cloud)]).status.code(), Some(0));

    let out = srg(&["render", s(&region), s(&cloud), "--matrix", s(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    let original = std::fs::read_to_string(&region).unwrap();
    assert_eq!(embedded_regions(&svg), vec![original.trim().to_string()]);
    assert_eq!(
        parse_region_json(&embedded_regions(&svg)[0]).unwrap(),
        parse_region_json(&original).unwrap()
    );
    assert_eq!(svg, stdout(&srg(&["render", s(&region), s(&cloud), "--matrix", s(&m)])));
}

#[test]
fn render_empty_layers_and_errors() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", r#"{"layers":[],"viewport":[-2,2,-1,1],"width_px":400,"height_px":200}"#);
    let out = srg(&["render", "--spec", s(&spec)]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    assert!(svg.contains("width=\"400\""));
    assert_eq!(svg.matches("<line").count(), 2);

    let bad_spec = write(&dir, "bad.json", r#"{"viewport":[2,1,0,1]}"#);
    assert_eq!(srg(&["render", "--spec", s(&bad_spec)]).status.code(), Some(2));
    let txt = write(&dir, "region.txt", "{}");
    assert_eq!(srg(&["render", s(&txt)]).status.code(), Some(2));
    let bad_region = write(&dir, "r.json", r#"{"kind":"two_circles","center":[0,-1],"radius":1}"#);
    assert_eq!(srg(&["render", s(&bad_region)]).status.code(), Some(2));
}

#[test]
fn exact_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "n.csv", "1,1,0,0\n-1,1,0,0\n0,0,3,0\n0,0,0,-2\n");
    let a = srg(&["exact", "--matrix", s(&m)]);
    let b = srg(&["exact", "--matrix", s(&m)]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
