use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiport"))
        .args(args)
        .env_remove("MULTIPORT_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn invalid_arguments_exit_two() {
    assert_eq!(run(&["classes", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["ck", "--arrangement", "12"]).status.code(), Some(2));
    assert_eq!(
        run(&["classes", "--n", "3", "--tolerance", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["classes", "--n", "40"]).status.code(), Some(2));
}

#[test]
fn verify_passes_at_six() {
    let out = run(&["verify", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("0 1 2 1 0 2") || text.contains("(0,1,2,1,0,2)"),
        "{text}"
    );
}

#[test]
fn classes_at_six() {
    let rows = csv_rows(&stdout(&["classes", "--n", "6"]));
    assert_eq!(rows.len(), 50);
    assert_eq!(rows.iter().filter(|r| r[3] == "true").count(), 40);
    let orbit_total: u64 = rows.iter().map(|r| r[1].parse::<u64>().unwrap()).sum();
    assert_eq!(orbit_total, 462);
}

#[test]
fn census_rows() {
    let rows = csv_rows(&stdout(&["table1", "--n-max", "6"]));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][..6], ["2", "3", "2", "2", "1", "0"]);
    assert_eq!(rows[4][..6], ["6", "462", "11", "50", "38", "2"]);
    let float = csv_rows(&stdout(&["table1", "--n-max", "2", "--mode", "float"]));
    assert_eq!(float[0][5], "requires exact mode");
}

#[test]
fn distribution_rows() {
    let occupied = csv_rows(&stdout(&["dist", "--n", "5", "--kind", "occupied-ports"]));
    assert_eq!(occupied.len(), 5);
    let port = csv_rows(&stdout(&["dist", "--n", "5", "--kind", "port-occupancy"]));
    assert_eq!(port.len(), 6);
    let classes = csv_rows(&stdout(&[
        "dist",
        "--n",
        "5",
        "--kind",
        "classical-classes",
    ]));
    assert_eq!(classes.len(), 7);
    for table in [occupied, port, classes] {
        let total: f64 = table.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn csv_and_json_agree() {
    let csv = csv_rows(&stdout(&["classes", "--n", "5"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["classes", "--n", "5", "--format", "json"])).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["n"], 5);
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.len());
    for (c, j) in csv.iter().zip(rows) {
        assert_eq!(c[1], j["orbit_size"].to_string());
        assert_eq!(c[3], j["suppressed_exact"].to_string());
        let p: f64 = c[7].parse().unwrap();
        assert_eq!(p, j["p_quantum"].as_f64().unwrap());
    }
}

#[test]
fn ck_output() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "ck",
        "--arrangement",
        "0,1,2,1,0,2",
        "--format",
        "json",
    ]))
    .unwrap();
    let total: i64 = json["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["c_k"].as_i64().unwrap())
        .sum();
    assert_eq!(total, 720);
    assert_eq!(json["vanishes"], true);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let printed = stdout(&["classes", "--n", "4"]);
    stdout(&["classes", "--n", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&path).unwrap(), printed);
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let fresh = stdout(&["classes", "--n", "5", "--cache-dir", cache]);
    let files: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1);
    assert_eq!(
        stdout(&["classes", "--n", "5", "--cache-dir", cache]),
        fresh
    );

    fs::write(&files[0], "{ not json").unwrap();
    let out = run(&["classes", "--n", "5", "--cache-dir", cache]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), fresh);
    assert!(!out.stderr.is_empty());
    assert_eq!(
        stdout(&["classes", "--n", "5", "--cache-dir", cache]),
        fresh
    );

    let file = dir.path().join("plain");
    fs::write(&file, "").unwrap();
    assert_eq!(
        run(&["classes", "--n", "3", "--cache-dir", file.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}
