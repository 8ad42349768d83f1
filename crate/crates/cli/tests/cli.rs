//! End-to-end tests of the command-line binary: file loading, report
//! shapes, exit codes, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn quadrant_fan(dir: &Path) -> String {
    write(
        dir,
        "quadrant.fan",
        r#"{ "dim": 2,
             "rays": [["1","0"],["0","1"],["-1","0"],["0","-1"]],
             "maximal_cones": [[0,1],[1,2],[2,3],[3,0]] }"#,
    )
}

fn b2_group(dir: &Path) -> String {
    write(
        dir,
        "b2.group",
        r#"{ "simple_roots": [["1","-1"],["0","1"]] }"#,
    )
}

#[test]
fn hpoly_reports_rational_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let fan = quadrant_fan(dir.path());
    let out = run(&["hpoly", &fan]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["h"], serde_json::json!(["1", "2", "1"]));
}

#[test]
fn validate_rejects_overlapping_cones() {
    let dir = tempfile::tempdir().unwrap();
    // cone((1,0),(1,2)) and cone((0,1),(1,1)) overlap between them
    let fan = write(
        dir.path(),
        "overlap.fan",
        r#"{ "dim": 2,
             "rays": [["1","0"],["1","2"],["0","1"],["1","1"]],
             "maximal_cones": [[0,1],[2,3]] }"#,
    );
    let out = run(&["validate", &fan]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["valid"], serde_json::json!(false));
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn invariant_routes_agree_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let fan = quadrant_fan(dir.path());
    let group = b2_group(dir.path());
    let out = run(&["invariants", &fan, &group, "--route", "all"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["equal"], serde_json::json!(true));
    let routes = v["routes"].as_object().unwrap();
    assert_eq!(routes.len(), 4);
    for p in routes.values() {
        assert_eq!(p, &serde_json::json!(["1", "1", "1"]));
    }
}

#[test]
fn hybrid_output_reloads_as_a_complete_fan() {
    let dir = tempfile::tempdir().unwrap();
    let fan = quadrant_fan(dir.path());
    let group = b2_group(dir.path());
    let folded = dir.path().join("folded.fan");
    let folded = folded.to_str().unwrap();
    let out = run(&["hybrid", &fan, &group, "--out", folded]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["f"], serde_json::json!([1, 3, 3]));

    // the written file is a loadable fan, and a well-formed one
    let out = run(&["validate", folded]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["valid"], serde_json::json!(true));
    assert_eq!(v["complete"], serde_json::json!(true));
    assert_eq!(v["simplicial"], serde_json::json!(true));

    // labels mark one source ray and two walls
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(folded).unwrap()).unwrap();
    let kinds: Vec<&str> = body["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["source", "wall", "wall"]);
}

#[test]
fn quotient_polytope_of_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let polytope = write(
        dir.path(),
        "square.poly",
        r#"{ "dim": 2,
             "vertices": [["1","1"],["1","-1"],["-1","1"],["-1","-1"]] }"#,
    );
    let group = write(
        dir.path(),
        "signs.group",
        r#"{ "simple_roots": [["1","0"],["0","1"]] }"#,
    );
    let out = run(&["quotient-polytope", &polytope, &group]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let verts = v["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 4);
    assert!(verts.contains(&serde_json::json!(["1", "1"])));
    assert!(verts.contains(&serde_json::json!(["0", "0"])));
}

#[test]
fn verify_passes_with_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let fan = quadrant_fan(dir.path());
    let group = b2_group(dir.path());
    let out = run(&["verify", &fan, &group, "--oracle"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], serde_json::json!("ok"));
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != serde_json::json!("failed")));
    assert!(checks
        .iter()
        .any(|c| c["name"] == serde_json::json!("socle") && c["status"] == serde_json::json!("ok")));
    // the swap reflection stabilizes cone(e1, e2) without fixing its rays
    assert_eq!(v["proper"], serde_json::json!(false));
}

#[test]
fn examples_lists_and_runs_entries() {
    let out = run(&["examples"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let names: Vec<&str> = v["fans"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"quadrant-b2"));
    assert!(names.contains(&"chambers-b3"));
    assert_eq!(v["polytopes"].as_array().unwrap().len(), 4);

    let out = run(&["examples", "octahedron-signs"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], serde_json::json!("ok"));

    let out = run(&["examples", "no-such-entry"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_files_exit_with_input_error() {
    let out = run(&["fvector", "/no/such/file.fan"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let fan = quadrant_fan(dir.path());
    let group = b2_group(dir.path());
    let first = run(&["echar", &fan, &group]);
    let second = run(&["echar", &fan, &group]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
