use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const THREE_CUBES: &str = "
(name A (cuboid 1 1 1))
(t 0.3 0.4 0.25) (r pi/5 0 0) (r 0 0 pi/12)
(name B (cuboid 1 1 1))
(t -0.2 0.4 -0.2) (r 0 pi/5 0) (r 0 pi/12 0)
(name C (cuboid 1 1 1))
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaincsg")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn arrange_then_evaluate_from_the_stored_complex() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "three.csg", THREE_CUBES);
    let lar3 = dir.path().join("three.lar3");
    let obj = dir.path().join("union.obj");

    let out = run(&["--report", "json", "arrange3d", "--in", &input, "--out", lar3.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["cells"], 7);
    assert_eq!(r["d2_d3_exact"], true);

    let out = run(&[
        "--report",
        "json",
        "eval",
        "--complex",
        lar3.to_str().unwrap(),
        "--expr",
        "(+ A B C)",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["boundary_counts"], serde_json::json!([38, 57, 21]));
    let text = fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 38);

    let out = run(&["--report", "json", "check", "--complex", lar3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["--report", "json", "--threads", "1", "atoms", "--in", &input]);
    assert!(out.status.success());
    assert_eq!(json(&out)["atoms"].as_array().unwrap().len(), 7);
}

#[test]
fn text_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cube.csg", "(cuboid 1 1 1)");
    let out = run(&["eval", "--in", &input, "--expr", "X1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("boundary_counts: [8,12,6]") && text.contains("euler: 2"), "{text}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cube.csg", "(cuboid 1 1 1)");
    // unbounded result
    assert_eq!(run(&["eval", "--in", &input, "--expr", "(! X1)"]).status.code(), Some(2));
    // syntax error
    assert_eq!(run(&["eval", "--in", &input, "--expr", "(+ X1"]).status.code(), Some(2));
    // unbound name
    assert_eq!(run(&["eval", "--in", &input, "--expr", "Y"]).status.code(), Some(2));
    // missing file
    let missing = dir.path().join("nope.csg");
    assert_eq!(run(&["eval", "--in", missing.to_str().unwrap(), "--expr", "X1"]).status.code(), Some(4));
    let bad = write(dir.path(), "bad.lar3", "LAR3 1\nV x\n");
    assert_eq!(run(&["check", "--complex", &bad]).status.code(), Some(4));
}

#[test]
fn planar_difference() {
    let dir = tempfile::tempdir().unwrap();
    let svg = write(
        dir.path(),
        "shapes.svg",
        r#"<svg><rect id="box" x="0" y="0" width="10" height="10"/>
           <polygon id="tri" points="1,1 4,1 2.5,4"/>
           <rect id="sq" x="6" y="6" width="2" height="2"/></svg>"#,
    );
    let lar = dir.path().join("out.lar");
    let out = run(&[
        "--report",
        "json",
        "arrange2d",
        "--svg",
        &svg,
        "--expr",
        "(- box tri sq)",
        "--out",
        lar.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["component_euler"], serde_json::json!([2, 2, 2]));
    assert_eq!(r["selected"].as_array().unwrap().len(), 1);
    assert!(lar.exists());
}
