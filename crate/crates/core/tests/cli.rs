use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

struct Workdir(TempDir);

impl Workdir {
    fn new() -> Self {
        Workdir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, value: &Value) -> PathBuf {
        let path = self.0.path().join(name);
        fs::write(&path, value.to_string()).unwrap();
        path
    }

    fn path(&self) -> &Path {
        self.0.path()
    }
}

fn eqpart(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqpart"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn json_ok(dir: &Path, args: &[&str]) -> Value {
    let out = eqpart(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(rows: &[&[i64]]) -> Value {
    json!(rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn setup() -> Workdir {
    let w = Workdir::new();
    w.file("h2_3.json", &json!({"gen": "hamming", "n": 2, "q": 3}));
    w.file("h7_2.json", &json!({"gen": "hamming", "n": 7, "q": 2}));
    w.file("S.json", &json!([[0, 4, 0], [1, 1, 2], [0, 2, 2]]));
    let col = json_ok(
        w.path(),
        &["gen", "coloring", "--family", "distance", "--graph", "h2_3.json", "--vertex", "0"],
    );
    w.file("vertexcol.json", &col);
    let code = json_ok(w.path(), &["gen", "code", "--family", "hamming", "-r", "3"]);
    w.file("hamming74.json", &code);
    w
}

#[test]
fn quotient_of_vertex_coloring() {
    let w = setup();
    let v = json_ok(
        w.path(),
        &["quotient", "--graph", "h2_3.json", "--coloring", "vertexcol.json"],
    );
    assert_eq!(v["S"], strings(&[&[0, 4, 0], &[1, 1, 2], &[0, 2, 2]]));
}

#[test]
fn crc_check_hamming_code() {
    let w = setup();
    let v = json_ok(
        w.path(),
        &["crc-check", "--graph", "h7_2.json", "--code", "hamming74.json"],
    );
    assert_eq!(v, json!({"rho": 1, "R": strings(&[&[0, 7], &[1, 6]])}));

    let ext = json_ok(w.path(), &["gen", "code", "--family", "extended-hamming", "-r", "3"]);
    w.file("ext.json", &ext);
    let v = json_ok(w.path(), &["crc-check", "--code", "ext.json"]);
    assert_eq!(v["R"], strings(&[&[0, 8, 0], &[1, 0, 7], &[0, 8, 0]]));
}

#[test]
fn vertex_distribution_equals_oracle_output() {
    let w = setup();
    let formula = eqpart(
        w.path(),
        &["distrib", "vertex", "--graph", "h2_3.json", "--s", "S.json", "--color", "0"],
    );
    let oracle = eqpart(
        w.path(),
        &["oracle", "--graph", "h2_3.json", "--coloring", "vertexcol.json", "--vertex", "0"],
    );
    assert!(formula.status.success() && oracle.status.success());
    assert_eq!(formula.stdout, oracle.stdout);
}

#[test]
fn verify_oracle_on_every_distrib_subcommand() {
    let w = setup();
    let d = w.path();
    json_ok(
        d,
        &[
            "distrib", "vertex", "--graph", "h2_3.json", "--coloring", "vertexcol.json",
            "--color", "2", "--verify-oracle",
        ],
    );
    let col = json_ok(
        d,
        &["gen", "coloring", "--family", "distance", "--graph", "h7_2.json", "--vertex", "5"],
    );
    w.file("h7v5.json", &col);
    json_ok(
        d,
        &[
            "distrib", "code", "--code", "hamming74.json", "--coloring", "h7v5.json",
            "--verify-oracle",
        ],
    );
    let lat = json_ok(d, &["gen", "coloring", "--family", "lattice", "-m", "2", "-k", "2", "-q", "2"]);
    w.file("lat.json", &lat);
    let v = json_ok(
        d,
        &["distrib", "lattice", "-m", "2", "-k", "2", "-q", "2", "--coloring", "lat.json", "--verify-oracle"],
    );
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);

    w.file("h3.json", &json!({"gen": "hamming", "n": 3, "q": 2}));
    let c = json_ok(d, &["gen", "coloring", "--family", "distance", "--graph", "h3.json", "--vertex", "6"]);
    w.file("h3v6.json", &c);
    json_ok(
        d,
        &["distrib", "fiber", "-m", "1", "-k", "2", "-q", "2", "--coloring", "h3v6.json", "--verify-oracle"],
    );

    w.file("k3.json", &json!({"n_vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}));
    w.file("j42.json", &json!({"gen": "johnson", "n": 4, "k": 2}));
    let c = json_ok(d, &["gen", "coloring", "--family", "distance", "--graph", "j42.json", "--vertex", "5"]);
    let right: Vec<u64> = serde_json::from_value(c["colors"].clone()).unwrap();
    let lifted: Vec<u64> = (0..18).map(|v| right[v % 6]).collect();
    w.file("pc.json", &json!(lifted));
    json_ok(
        d,
        &[
            "distrib", "fiber", "--left", "k3.json", "--graph", "j42.json", "--vertex", "2",
            "--coloring", "pc.json", "--verify-oracle",
        ],
    );

    let c = json_ok(d, &["gen", "coloring", "--family", "distance", "--graph", "h2_3.json", "--vertex", "8"]);
    w.file("v8.json", &c);
    json_ok(
        d,
        &["distrib", "pcube", "-n", "2", "-p", "2", "-q", "3", "--coloring", "v8.json", "--verify-oracle"],
    );
}

#[test]
fn lattice_and_pcube_from_parameters() {
    let w = setup();
    w.file("one4.json", &json!([[4]]));
    w.file("one2.json", &json!([[2]]));
    let v = json_ok(
        w.path(),
        &["distrib", "lattice", "-m", "2", "-k", "2", "-q", "2", "--s", "one4.json", "--f0", "[4]"],
    );
    assert_eq!(v["rows"], strings(&[&[4], &[8], &[4]]));
    let v = json_ok(
        w.path(),
        &["distrib", "pcube", "-n", "1", "-p", "2", "-q", "3", "--s", "one2.json", "--f0", "[\"2\"]"],
    );
    assert_eq!(v["rows"], strings(&[&[2], &[1]]));
}

#[test]
fn eigenfunction_verifies_and_distributes() {
    let w = setup();
    let code: Vec<u64> = serde_json::from_value(
        json_ok(w.path(), &["gen", "code", "--family", "hamming", "-r", "3"])["vertices"].clone(),
    )
    .unwrap();
    let f: Vec<Vec<i64>> = (0..128)
        .map(|v| vec![if code.contains(&v) { 7 } else { -1 }])
        .collect();
    w.file(
        "eig.json",
        &json!({"graph": {"gen": "hamming", "n": 7, "q": 2}, "f": f, "s": [[-1]]}),
    );
    let v = json_ok(w.path(), &["verify", "--structure", "eig.json"]);
    assert_eq!(v["holds"], json!(true));
    let v = json_ok(
        w.path(),
        &["distrib", "code", "--code", "hamming74.json", "--structure", "eig.json", "--verify-oracle"],
    );
    assert_eq!(v["rows"], strings(&[&[112], &[-112]]));

    w.file(
        "bad.json",
        &json!({"graph": {"gen": "hamming", "n": 7, "q": 2}, "f": f, "s": [[1]]}),
    );
    let out = eqpart(w.path(), &["verify", "--structure", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["holds"], json!(false));
}

#[test]
fn local_commands() {
    let w = setup();
    let v = json_ok(w.path(), &["local", "params", "--left", "h2_3.json", "--graph", "h2_3.json"]);
    assert_eq!(
        v["R"],
        strings(&[
            &[0, 4, 0, 4, 0, 0, 0, 0, 0],
            &[1, 1, 2, 0, 4, 0, 0, 0, 0],
            &[0, 2, 2, 0, 0, 4, 0, 0, 0],
            &[1, 0, 0, 1, 4, 0, 2, 0, 0],
            &[0, 1, 0, 1, 2, 2, 0, 2, 0],
            &[0, 0, 1, 0, 2, 3, 0, 0, 2],
            &[0, 0, 0, 2, 0, 0, 2, 4, 0],
            &[0, 0, 0, 0, 2, 0, 1, 3, 2],
            &[0, 0, 0, 0, 0, 2, 0, 2, 4],
        ])
    );

    w.file("prod.json", &json!({"gen": "product", "left": {"gen": "hamming", "n": 2, "q": 3}, "right": {"gen": "hamming", "n": 2, "q": 3}}));
    let c = json_ok(w.path(), &["gen", "coloring", "--family", "distance", "--graph", "prod.json", "--vertex", "40"]);
    w.file("pc.json", &c);
    let args = ["--left", "h2_3.json", "--graph", "h2_3.json", "--coloring", "pc.json", "--verify-oracle"];
    let d = json_ok(w.path(), &[&["local", "distrib"][..], &args].concat());
    let r = json_ok(w.path(), &[&["local", "reconstruct"][..], &args].concat());
    assert_eq!(d["h_star"], r["h_star"]);
    assert_eq!(d["h_star"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let w = setup();
    let out = eqpart(w.path(), &["distrib", "lattice", "-m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = eqpart(w.path(), &["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    w.file("pair.json", &json!([0, 1]));
    let out = eqpart(w.path(), &["crc-check", "--graph", "h2_3.json", "--code", "pair.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = eqpart(w.path(), &["quotient", "--graph", "h2_3.json", "--coloring", "missing.json"]);
    assert_eq!(out.status.code(), Some(1));

    let out = eqpart(w.path(), &["--vertex-budget", "10", "crc-check", "--graph", "h7_2.json", "--code", "hamming74.json"]);
    assert_eq!(out.status.code(), Some(1));

    let out = eqpart(w.path(), &["distrib", "lattice", "-m", "2", "-k", "2", "-q", "2", "--s", "S.json", "--f0", "[1,0,0]", "--verify-oracle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let w = setup();
    let args = ["local", "params", "--left", "h2_3.json", "--graph", "h2_3.json"];
    assert_eq!(eqpart(w.path(), &args).stdout, eqpart(w.path(), &args).stdout);
}

#[test]
fn selftest_passes() {
    let w = setup();
    let v = json_ok(w.path(), &["selftest"]);
    assert_eq!(v["passed"], json!(true));
}
