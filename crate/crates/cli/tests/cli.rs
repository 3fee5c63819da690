use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minranklab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("single JSON document")
}

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c5.g6"), "Dhc\n").unwrap();
    std::fs::write(dir.path().join("arcs.txt"), "3 3\n0 1\n1 2\n2 0\n").unwrap();
    dir
}

#[test]
fn five_cycle_minrank() {
    let dir = workdir();
    let doc = json(&run(
        dir.path(),
        &["minrank", "exact", "--field", "2", "--graph", "c5.g6"],
    ));
    assert_eq!(doc["result"]["value"], 3);
    assert_eq!(doc["manifest"]["command"], "minrank exact");
    assert_eq!(doc["manifest"]["params"]["field"], 2);

    let doc = json(&run(dir.path(), &["minrank", "bounds", "--graph", "c5.g6"]));
    assert_eq!(doc["result"]["lower"], 2);
    assert_eq!(doc["result"]["upper"], 3);
}

#[test]
fn directed_triangle_minrank() {
    let dir = workdir();
    let doc = json(&run(
        dir.path(),
        &["minrank", "exact", "--field", "3", "--graph", "arcs.txt"],
    ));
    assert_eq!(doc["result"]["value"], 2);
}

#[test]
fn exit_codes() {
    let dir = workdir();
    let code = |args: &[&str]| run(dir.path(), args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["--version"]), Some(0));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["minrank", "exact", "--field", "4", "--graph", "c5.g6"]), Some(1));
    assert_eq!(
        code(&["minrank", "exact", "--field", "2", "--graph", "missing.g6"]),
        Some(1)
    );
    assert_eq!(code(&["kneser", "build", "--d", "4", "--s", "5", "--m", "1"]), Some(1));
    assert_eq!(
        code(&["--jobs", "0", "kneser", "theorem", "--ell", "3", "--d", "60"]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "minrank",
            "exact",
            "--field",
            "2",
            "--graph",
            "c5.g6",
            "--max-subspaces",
            "3"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&["experiment", "g-exhaustive", "--n", "9", "--h", "K3", "--field", "2"]),
        Some(2)
    );
}

#[test]
fn convert_round_trip() {
    let dir = workdir();
    assert!(run(dir.path(), &["convert", "--in", "c5.g6", "--out", "c5.txt"])
        .status
        .success());
    let text = std::fs::read_to_string(dir.path().join("c5.txt")).unwrap();
    assert!(text.starts_with("5 10\n"));
    assert!(run(dir.path(), &["convert", "--in", "c5.txt", "--out", "back.g6"])
        .status
        .success());
    assert_eq!(std::fs::read_to_string(dir.path().join("back.g6")).unwrap(), "Dhc\n");
}

#[test]
fn lemma_lines_end_with_manifest() {
    let dir = workdir();
    let out = run(
        dir.path(),
        &[
            "verify", "lemma", "--id", "sparsity", "--id", "forest", "--csv", "s.csv",
        ],
    );
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["lemma"], "sparsity");
    assert_eq!(lines[1]["lemma"], "forest");
    assert_eq!(lines[2]["manifest"]["outputs"][0], "s.csv");
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn seed_comes_from_environment() {
    let dir = workdir();
    let args = [
        "experiment",
        "g-estimate",
        "--n",
        "5",
        "--h",
        "K3",
        "--field",
        "2",
        "--samples",
        "50",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_minranklab"))
        .args(args)
        .env("MINRANKLAB_SEED", "17")
        .current_dir(dir.path())
        .output()
        .unwrap();
    let doc = json(&out);
    assert_eq!(doc["manifest"]["seed"], 17);
    assert_eq!(doc["result"]["seed"], 17);
}

#[test]
fn theorem_from_vertex_count() {
    let dir = workdir();
    let doc = json(&run(dir.path(), &["kneser", "theorem", "--ell", "3", "--n", "1000"]));
    // C(12, 6) = 924 < 1000 <= C(18, 9)
    assert_eq!(doc["result"]["d"], 18);
    assert_eq!(doc["result"]["m"], 3);
}
