use std::path::PathBuf;
use std::process::{Command, Output};

fn l2res(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l2res"))
        .args(args)
        .env_remove("L2RES_FACE_CAP")
        .env_remove("L2RES_TAYLOR_CAP")
        .env_remove("L2RES_ENUM_Q_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn betti_of_square_of_variables() {
    let o = l2res(&["betti", "--power", "2", "x,y,z,w"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("d "), "{text}");
    assert!(text.contains("10 20 15 4"), "{text}");
}

#[test]
fn betti_json_and_graded() {
    let o = l2res(&[
        "betti",
        "x^2,y^2,z^2,xy,xz,yz",
        "--format",
        "json",
        "--graded",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], serde_json::json!({"0": 6, "1": 8, "2": 3}));
    let ranks: u64 = v["graded"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["rank"].as_u64().unwrap())
        .sum();
    assert_eq!(ranks, 6 + 8 + 3);
}

#[test]
fn bounds_table_rows() {
    let o = l2res(&["bounds", "abe,bc,cdf,ad"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for row in [
        "9 20 18 7 1",
        "10 27 32 19 6 1",
        "9 36 84 126 126 84 36",
        "9 14 6 0",
    ] {
        assert!(text.contains(row), "missing {row}:\n{text}");
    }
    let csv = stdout(&l2res(&["bounds", "abe,bc,cdf,ad", "--format", "csv"]));
    assert!(csv.starts_with("d,0,1,2,3,4,5,6\n"), "{csv}");
}

#[test]
fn check_support_passes_for_square() {
    let o = l2res(&["check-support", "--ideal", "abe,bc,cdf,ad", "--power", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("connectivity criterion: PASS"));
    assert!(text.contains("acyclicity criterion (rational): PASS"));
}

#[test]
fn check_support_reports_witnesses() {
    let path = temp_file(
        "path_and_point.json",
        r#"{"vertices":[0,1,2],"facets":[[0,1],[2]],"labels":{"0":"x","1":"y","2":"z"}}"#,
    );
    let o = l2res(&[
        "check-support",
        "x,y,z",
        "--complex",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("disconnected at xz"), "{}", stdout(&o));

    let hollow = temp_file(
        "hollow.json",
        r#"{"vertices":[0,1,2],"facets":[[0,1],[1,2],[0,2]],"labels":{"0":"x","1":"y","2":"z"}}"#,
    );
    let o = l2res(&[
        "check-support",
        "x,y,z",
        "--complex",
        hollow.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["connectivity"]["status"], "N/A");
    assert_eq!(v["acyclicity"]["witness"], "xyz");
    assert_eq!(v["acyclicity"]["degree"], 1);
}

#[test]
fn build_l2_json_feeds_check_support() {
    let o = l2res(&["build-l2", "abe,bc,cdf,ad", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["deletion"]["deleted"], serde_json::json!([[1, 3]]));
    assert_eq!(v["deletion"]["s"], 9);
    assert_eq!(v["facets"].as_array().unwrap().len(), 5);
    let path = temp_file("l2.json", &text);
    let o = l2res(&[
        "check-support",
        "abe,bc,cdf,ad",
        "--power",
        "2",
        "--complex",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = l2res(&[
        "betti",
        "abe,bc,cdf,ad",
        "--power",
        "2",
        "--complex",
        path.to_str().unwrap(),
    ]);
    assert!(stdout(&o).contains("9 14 6"), "{}", stdout(&o));
}

#[test]
fn power_warns_on_redundant_input() {
    let o = l2res(&["power", "--power", "1", "x*y, x*y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).contains("count 1"));
    let o = l2res(&["power", "x,y,z,w"]);
    assert!(stdout(&o).contains("count 10"));
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["betti", "x,,y"][..],
        &["betti", "1"],
        &["build-l2", "x^2,y"],
        &["betti", "x,y", "--field", "gf:4"],
        &["betti", "x,y", "--power", "3"],
        &["frobnicate"],
    ] {
        let o = l2res(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
    }
    assert!(stderr(&l2res(&["build-l2", "x^2,y"])).contains("x^2"));
}

#[test]
fn resource_caps_exit_three() {
    let o = l2res(&["betti", "x,y,z", "--taylor-cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--taylor-cap"));
    let o = Command::new(env!("CARGO_BIN_EXE_l2res"))
        .args(["betti", "x,y,z"])
        .env("L2RES_TAYLOR_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify", "--seed", "5", "--count", "30", "--max-n", "6", "--max-q", "4",
    ];
    let a = l2res(&args);
    let b = l2res(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("counterexamples: none"));
    let o = l2res(&["verify", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no ideals checked"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(l2res(&["--help"]).status.code(), Some(0));
}
