use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn plasmodium(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plasmodium"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for d in [&a, &b] {
        let o = plasmodium(&[
            "run", "--scenario", "fig3_spanning_tree", "--out", d.to_str().unwrap(),
            "--seed", "7", "--steps", "300", "--frame-every", "100", "--quiet",
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    let files = dir_contents(&a);
    assert_eq!(files, dir_contents(&b));
    let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
    for expected in ["scenario.resolved", "metrics.csv", "state.json", "report.json"] {
        assert!(names.contains(&expected), "{expected} missing from {names:?}");
    }
    assert!(names.iter().any(|n| n.starts_with("frame_field_") && n.ends_with(".pgm")));
    assert!(names.iter().any(|n| n.starts_with("frame_agents_") && n.ends_with(".pgm")));
}

#[test]
fn analyze_reproduces_the_stored_report() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let o = plasmodium(&[
        "run", "--scenario", "fig3_spanning_tree", "--out", out.to_str().unwrap(), "--steps", "400", "--quiet",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();

    let tree = plasmodium(&["analyze", "--run", out.to_str().unwrap(), "--mode", "tree"]);
    assert_eq!(code(&tree), 0, "{}", stderr(&tree));
    let tree = json(&tree);
    assert_eq!(tree, report["tree"]);
    for key in ["network", "mst_length", "length_ratio", "is_tree"] {
        assert!(tree.get(key).is_some(), "tree report lacks {key}");
    }
    assert!(tree["network"].get("holes").is_some());

    let morph = json(&plasmodium(&["analyze", "--run", out.to_str().unwrap(), "--mode", "morphology"]));
    assert_eq!(morph, report["morphology"]);
    let choice = json(&plasmodium(&["analyze", "--run", out.to_str().unwrap(), "--mode", "choice"]));
    assert_eq!(choice, report["choice"]);
}

#[test]
fn voronoi_mode_reports_both_agreements() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("vor");
    let o = plasmodium(&[
        "run", "--scenario", "fig4_voronoi", "--out", out.to_str().unwrap(), "--steps", "20", "--quiet",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&plasmodium(&["analyze", "--run", out.to_str().unwrap(), "--mode", "voronoi"]));
    let classical = v["classical_agreement"].as_f64().unwrap();
    let weighted = v["weighted_agreement"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&classical));
    // Equal weights: both diagrams coincide.
    assert_eq!(classical, weighted);
    assert_eq!(v["sites"].as_array().unwrap().len(), 5);
}

#[test]
fn usage_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("x");
    let o = plasmodium(&["run", "--scenario", "fig3_spanning_tree", "--out", out.to_str().unwrap(), "--steps", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("steps"));
    assert!(!out.exists());
    assert_eq!(code(&plasmodium(&["run", "--out", "x"])), 1);
    assert_eq!(code(&plasmodium(&["frobnicate"])), 1);
    assert_eq!(code(&plasmodium(&["analyze", "--run", tmp.path().to_str().unwrap(), "--mode", "shape"])), 1);
}

#[test]
fn invalid_inputs_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("x");
    let missing = tmp.path().join("nope.json");
    let o = plasmodium(&["run", "--scenario", missing.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nope.json"));

    let bad = tmp.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"lattice":{"width":20,"height":20},"seed":1,"steps":5,"colour":"red",
            "sources":[{"id":"a","kind":"attractant","center":[-5,10],"weight":1}]}"#,
    )
    .unwrap();
    let o = plasmodium(&["run", "--scenario", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let msg = stderr(&o);
    assert!(msg.contains("colour"), "{msg}");
    assert!(msg.contains("sources[0].center"), "{msg}");

    let o = plasmodium(&["analyze", "--run", tmp.path().to_str().unwrap(), "--mode", "tree"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn output_failures_exit_three() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let out = blocker.join("run");
    let o = plasmodium(&["run", "--scenario", "taxis", "--out", out.to_str().unwrap(), "--steps", "2", "--quiet"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn scenario_files_run_and_echo_their_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("s.json");
    fs::write(
        &path,
        r#"{"name":"tiny","lattice":{"width":30,"height":30},"seed":5,"steps":25,
            "sources":[{"id":"f","kind":"attractant","center":[15,15],"weight":3}]}"#,
    )
    .unwrap();
    let out = tmp.path().join("run");
    let o = plasmodium(&["run", "--scenario", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["steps"], 25);
    let resolved = fs::read_to_string(out.join("scenario.resolved")).unwrap();
    let again = plasmodium::parse_scenario(&resolved).unwrap();
    assert_eq!(again.agents.sensor_offset, 9.0);
    assert_eq!(again.diffusion.decay, 0.1);
    let csv = fs::read_to_string(out.join("metrics.csv")).unwrap();
    assert!(csv.lines().count() >= 3);
}
