use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latstick")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Work {
    dir: TempDir,
}

impl Work {
    fn new() -> Self {
        Work { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn demo(&self, name: &str) -> PathBuf {
        let path = self.path(&format!("{name}.json"));
        let out = run(&["demo", "--name", name, "--output", p(&path)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        path
    }

    fn build(&self, input: &Path) -> (Output, PathBuf) {
        let emb = self.path(&format!("{}.emb.json", input.file_stem().unwrap().to_str().unwrap()));
        (run(&["build", "--input", p(input), "--output", p(&emb)]), emb)
    }

    fn write(&self, name: &str, v: &Value) -> PathBuf {
        let path = self.path(name);
        std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
        path
    }
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_then_validate_every_demo() {
    let w = Work::new();
    for name in ["unknot", "trefoil", "figure8", "theta-planar", "bouquet3", "theta-composite"] {
        let input = w.demo(name);
        let (out, emb) = w.build(&input);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let out = run(&["validate", "--embedding", p(&emb), "--input", p(&input)]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("reconstruction: ok"));
    }
}

#[test]
fn unknot_builds_four_sticks() {
    let w = Work::new();
    let (out, emb) = w.build(&w.demo("unknot"));
    assert!(stdout(&out).contains("sticks: 4"));
    let doc = read_json(&emb);
    assert_eq!(doc["sticks"].as_array().unwrap().len(), 4);
    assert_eq!(doc["counts"]["total"], 4);
}

#[test]
fn degree_seven_vertex_is_rejected() {
    let w = Work::new();
    let arcs: Vec<Value> = (1..=7).map(|p| json!({"page": p, "from": 1, "to": 2})).collect();
    let input = w.write(
        "th7.json",
        &json!({
            "components": [{
                "id": "th7",
                "binding_points": [{"index": 1, "vertex": "a"}, {"index": 2, "vertex": "b"}],
                "arcs": arcs
            }],
            "attachments": []
        }),
    );
    let (out, _) = w.build(&input);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree"));
}

#[test]
fn malformed_and_unknown_inputs_are_usage_errors() {
    let w = Work::new();
    let bad = w.path("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&w.build(&bad).0), 2);
    let typo = w.write("typo.json", &json!({"components": [], "attachments": [], "crossings": 3}));
    assert_eq!(code(&w.build(&typo).0), 2);
    let missing = w.path("nowhere.json");
    assert_eq!(code(&w.build(&missing).0), 2);
    assert_eq!(code(&run(&["demo", "--name", "cinquefoil", "--output", p(&w.path("x.json"))])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn corrupted_stick_fails_consistency() {
    let w = Work::new();
    let input = w.demo("trefoil");
    let (_, emb) = w.build(&input);
    let mut doc = read_json(&emb);
    let axis = match doc["sticks"][0]["axis"].as_str().unwrap() {
        "x" => 0,
        "y" => 1,
        _ => 2,
    };
    let end = &mut doc["sticks"][0]["end"];
    end[axis] = json!(end[axis].as_i64().unwrap() + 1);
    let emb = w.write("corrupt.json", &doc);
    let out = run(&["validate", "--embedding", p(&emb), "--input", p(&input)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("consistency"));
}

#[test]
fn wrong_input_pairing_fails_reconstruction() {
    let w = Work::new();
    let (_, emb) = w.build(&w.demo("theta-planar"));
    let out = run(&["validate", "--embedding", p(&emb), "--input", p(&w.demo("unknot"))]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("reconstruction"));
}

#[test]
fn bound_reports() {
    let w = Work::new();
    let out = run(&["bound", "--input", p(&w.demo("trefoil")), "--crossings", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("construction count: 13"), "{text}");
    assert!(text.contains("crossing-number bound: 13"), "{text}");
    assert!(text.contains("lemma 5"), "{text}");

    let out = run(&["bound", "--input", p(&w.demo("theta-planar")), "--crossings", "0"]);
    assert!(stdout(&out).contains("crossing-number bound: 8"));
    let out = run(&["bound", "--input", p(&w.demo("theta-planar"))]);
    assert!(!stdout(&out).contains("crossing-number"));
}

#[test]
fn invariant_command() {
    let w = Work::new();
    for (name, comp, det) in [("unknot", "unknot", 1), ("trefoil", "trefoil", 3), ("figure8", "figure8", 5)] {
        let (_, emb) = w.build(&w.demo(name));
        let out = run(&["invariant", "--embedding", p(&emb), "--component", comp]);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).contains(&format!("determinant: {det}")), "{name}: {}", stdout(&out));
    }
    let (_, emb) = w.build(&w.demo("theta-planar"));
    assert_eq!(code(&run(&["invariant", "--embedding", p(&emb), "--component", "theta"])), 1);
    assert_eq!(code(&run(&["invariant", "--embedding", p(&emb), "--component", "nope"])), 1);
}

fn obj_counts(text: &str) -> (usize, usize) {
    (text.lines().filter(|l| l.starts_with("v ")).count(), text.lines().filter(|l| l.starts_with("l ")).count())
}

#[test]
fn obj_export() {
    let w = Work::new();
    for (name, want) in [("unknot", (4, 4)), ("theta-planar", (6, 7))] {
        let (_, emb) = w.build(&w.demo(name));
        let a = w.path("a.obj");
        let b = w.path("b.obj");
        for target in [&a, &b] {
            let out = run(&["export", "--embedding", p(&emb), "--format", "obj", "--output", p(target)]);
            assert_eq!(code(&out), 0);
        }
        let bytes = std::fs::read(&a).unwrap();
        assert_eq!(bytes, std::fs::read(&b).unwrap());
        assert_eq!(obj_counts(&String::from_utf8(bytes).unwrap()), want, "{name}");
    }
    let (_, emb) = w.build(&w.demo("unknot"));
    let out = run(&["export", "--embedding", p(&emb), "--format", "stl", "--output", p(&w.path("c.stl"))]);
    assert_eq!(code(&out), 2);
}

#[test]
fn demo_documents() {
    let w = Work::new();
    let doc = read_json(&w.demo("trefoil"));
    assert_eq!(doc["components"][0]["arcs"].as_array().unwrap().len(), 5);
    let doc = read_json(&w.demo("bouquet3"));
    let c = &doc["components"][0];
    let labeled: Vec<&Value> =
        c["binding_points"].as_array().unwrap().iter().filter(|b| b.get("vertex").is_some()).collect();
    assert_eq!(labeled.len(), 1);
    assert_eq!(c["arcs"].as_array().unwrap().len(), 6);
}
