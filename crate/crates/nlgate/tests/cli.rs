use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn nlgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlgate")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.display().to_string()
}

fn export(dir: &TempDir, entry: &str) -> String {
    let p = dir.path().join(format!("{entry}.json"));
    let o = nlgate(&["export", entry, "-o", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    p.display().to_string()
}

fn read(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(Path::new(path)).unwrap()).unwrap()
}

#[test]
fn exported_entry_validates() {
    let dir = TempDir::new().unwrap();
    for entry in ["eq60", "eq66", "pauli-double", "cnot-controlled", "d4-double"] {
        let p = export(&dir, entry);
        let o = nlgate(&["validate", &p]);
        assert_eq!(code(&o), 0, "{entry}: {}", stdout(&o));
        assert!(stdout(&o).contains("valid"));
    }
}

#[test]
fn broken_cocycle_names_the_triple() {
    let dir = TempDir::new().unwrap();
    let one = json!([[[1.0, 0.0]]]); // 1x1 matrix holding 1 + 0i
    let file = json!({
        "version": 1,
        "group": {"table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
        "factorSystem": {"mu": [[1, 1, 1], [1, [0.0, 1.0], 1], [1, 1, 1]]},
        "groupForm": {"u": [one, one, one], "w": [[[1]], [[0]], [[0]]]}
    });
    let p = write(&dir, "cocycle.json", &file);
    let o = nlgate(&["validate", &p]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("FAIL factor system"), "{text}");
    assert!(text.contains("cocycle rule violated at (1,1,2)"), "{text}");
}

#[test]
fn malformed_file_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"version\": 1,\n  \"group\": [\n").unwrap();
    let o = nlgate(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.json:"), "{}", stderr(&o));

    let o = nlgate(&["validate", "/nonexistent/problem.json"]);
    assert_eq!(code(&o), 2);

    let wrong_shape = json!({"version": 1, "group": {"table": [[0, 1], [1, 0]]}, "groupForm": {"u": [[[1]]], "w": [[[1]], [[0]]]}});
    let p = write(&dir, "shape.json", &wrong_shape);
    let o = nlgate(&["validate", &p]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("groupForm.u"), "{}", stderr(&o));
}

#[test]
fn synth_reports_table_and_block_ranks() {
    let o = nlgate(&["synth", "--catalog", "s3-table1-row1", "--dim", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Schmidt rank: 5"));
    let o = nlgate(&["synth", "--catalog", "s3-table1-row1", "--dim", "4"]);
    assert!(stdout(&o).contains("Schmidt rank: 6"));
    let o = nlgate(&["synth", "--catalog", "eq63"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Schmidt rank: 6"));
}

#[test]
fn identity_q_blocks_give_rank_one() {
    let dir = TempDir::new().unwrap();
    let eye = json!([[1, 0], [0, 1]]);
    let file = json!({
        "version": 1,
        "group": {"table": [[0, 1], [1, 0]]},
        "irreps": {"matrices": [[[[1]], [[1]]], [[[1]], [[-1]]]]},
        "qBlocks": {"pattern": [1, 1], "dB": 2, "blocks": [eye, eye]}
    });
    let p = write(&dir, "ident.json", &file);
    let out = dir.path().join("out.json");
    let o = nlgate(&["synth", &p, "--json-out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("Schmidt rank: 1"));
    let v = read(out.to_str().unwrap());
    assert_eq!(v["results"]["schmidtRank"], 1);
    let u = &v["results"]["u"];
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((u[i][j][0].as_f64().unwrap() - want).abs() < 1e-12);
        }
    }
}

#[test]
fn synth_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("eq65.json");
    let o = nlgate(&["synth", "--catalog", "eq65", "--json-out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = nlgate(&["validate", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("Schmidt rank: 8 (expected 8)"));
}

#[test]
fn simulate_catalog_entries() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.json");
    let o = nlgate(&["simulate", "--catalog", "eq66", "--json-out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("branches: 64"));
    assert!(text.contains("information absence: PASS"));
    let v = read(out.to_str().unwrap());
    assert_eq!(v["branches"].as_array().unwrap().len(), 64);
    assert!(v["summary"]["worstResidual"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["summary"]["passed"], true);

    let o = nlgate(&["simulate", "--catalog", "cnot-controlled"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("branches: 4"));
}

#[test]
fn corrupted_w_fails_simulation() {
    let dir = TempDir::new().unwrap();
    let p = export(&dir, "xz-swap-2");
    let mut v = read(&p);
    v["groupForm"]["w"][1][0][0] = json!([0.3, 0.1]);
    let p = write(&dir, "corrupt.json", &v);
    let o = nlgate(&["simulate", &p]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("information absence: FAIL"));
    let o = nlgate(&["validate", &p]);
    assert_eq!(code(&o), 1);
}

#[test]
fn report_reproduces_the_table() {
    let o = nlgate(&["report"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for (row, a, b) in [(1, 5, 6), (2, 5, 6), (3, 5, 5), (4, 4, 4)] {
        let line = text.lines().find(|l| l.starts_with(&format!("s3-table1-row{row}"))).unwrap();
        let cols: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cols[1..], [a.to_string().as_str(), b.to_string().as_str(), "match"]);
    }
    let eq65 = text.lines().find(|l| l.starts_with("eq65")).unwrap();
    assert_eq!(eq65.split_whitespace().nth(4), Some("8"));
    let eq60 = text.lines().find(|l| l.starts_with("eq60")).unwrap();
    assert_eq!(eq60.split_whitespace().nth(4), Some("5"));
}

#[test]
fn strength_is_deterministic_in_the_seed() {
    let args = ["synth", "--catalog", "cnot-controlled", "--strength", "--seed", "7", "--restarts", "2"];
    let a = stdout(&nlgate(&args));
    let b = stdout(&nlgate(&args));
    assert_eq!(a, b);
    assert!(a.contains("entangling strength"));
}

#[test]
fn unknown_entry_is_an_input_error() {
    let o = nlgate(&["synth", "--catalog", "eq99"]);
    assert_eq!(code(&o), 2);
    let o = nlgate(&["synth", "--catalog", "eq60", "--dim", "7"]);
    assert_eq!(code(&o), 2);
}
