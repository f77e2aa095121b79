use std::path::Path;
use std::process::{Command, Output};

use queuelay::io::{to_json, GraphFile};
use queuelay::layout::{verify_layout, LayoutFile};
use queuelay::unsubdivide::SubdivisionMap;
use queuelay::{generators, Graph, QueueLayout};

fn queuelay(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_queuelay")).current_dir(dir).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, contents: String) {
    std::fs::write(dir.join(name), contents).unwrap();
}

#[test]
fn planar_layout_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&queuelay(d, &["gen", "tight", "--delta", "3", "--out", "t.json"])), 0);
    let out = queuelay(d, &["layout", "planar", "--input", "t.json", "--delta", "auto", "--check", "--explain", "x.json", "--out", "l.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = String::from_utf8_lossy(&out.stderr);
    assert!(report.contains("bound=159") && report.contains("rainbow=9"), "{report}");
    let explain: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("x.json")).unwrap()).unwrap();
    assert!(explain[0][0]["m"].is_string());
    assert_eq!(code(&queuelay(d, &["verify", "--graph", "t.json", "--layout", "l.json"])), 0);
    let rainbow = queuelay(d, &["rainbow", "--graph", "t.json", "--layout", "l.json"]);
    assert!(String::from_utf8_lossy(&rainbow.stdout).starts_with("rainbow=9"));
}

#[test]
fn verify_rejects_nested_pair() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = Graph::new(4, vec![(0, 3), (1, 2)]).unwrap();
    write(d, "g.json", to_json(&GraphFile::from_graph(&g)).unwrap());
    write(d, "bad.json", to_json(&LayoutFile { order: vec![0, 1, 2, 3], queues: vec![0, 0], k: 1 }).unwrap());
    write(d, "good.json", to_json(&LayoutFile { order: vec![0, 1, 2, 3], queues: vec![0, 1], k: 2 }).unwrap());
    assert_eq!(code(&queuelay(d, &["verify", "--graph", "g.json", "--layout", "bad.json"])), 1);
    assert_eq!(code(&queuelay(d, &["verify", "--graph", "g.json", "--layout", "good.json"])), 0);
}

#[test]
fn oracle_prints_k4() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k4.json", r#"{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#.into());
    let out = queuelay(d, &["oracle", "--graph", "k4.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "qn=2");
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&queuelay(d, &["verify", "--no-such-flag"])), 1);
    assert_eq!(code(&queuelay(d, &["frobnicate"])), 1);
    assert_eq!(code(&queuelay(d, &["layout", "planar", "--input", "missing.json"])), 1);
    write(d, "k4.json", r#"{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#.into());
    assert_eq!(code(&queuelay(d, &["layout", "planar", "--input", "k4.json"])), 1);
    assert_eq!(code(&queuelay(d, &["gen", "torus", "3", "3", "--out", "t.json"])), 0);
    assert_eq!(code(&queuelay(d, &["layout", "planar", "--input", "t.json"])), 1);
    assert_eq!(code(&queuelay(d, &["render", "--input", "t.json"])), 1);
    assert_eq!(code(&queuelay(d, &["layout", "planar", "--input", "t.json", "--delta", "1"])), 1);
    assert_eq!(code(&queuelay(d, &["--help"])), 0);
}

#[test]
fn genus_layout_and_cut() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&queuelay(d, &["gen", "torus", "4", "4", "--out", "t.json"])), 0);
    let out = queuelay(d, &["layout", "genus", "--input", "t.json", "--check", "--out", "l.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound=785"));
    assert_eq!(code(&queuelay(d, &["verify", "--graph", "t.json", "--layout", "l.json"])), 0);
    assert_eq!(code(&queuelay(d, &["cut", "--input", "t.json", "--out", "z.json"])), 0);
    let z: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("z.json")).unwrap()).unwrap();
    assert_eq!(z["Q"].as_array().unwrap().len(), 2);
    assert!(z["per_layer_counts"].as_array().unwrap().iter().all(|c| c.as_u64().unwrap() <= 4));
    let report = queuelay(d, &["report", "--input", "t.json"]);
    let report: serde_json::Value = serde_json::from_slice(&report.stdout).unwrap();
    assert_eq!(report["pipeline"], "genus");
    assert_eq!(report["verified"], true);
}

#[test]
fn unsubdivide_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
    let map = SubdivisionMap::from_paths(&g, 6, vec![vec![0, 4, 1], vec![1, 2], vec![2, 5, 3], vec![3, 0], vec![0, 2]], 1).unwrap();
    write(d, "g.json", to_json(&GraphFile::from_graph(&g)).unwrap());
    write(d, "map.json", to_json(&map.to_file()).unwrap());
    write(d, "sub.json", to_json(&GraphFile::from_graph(&map.subdivided)).unwrap());
    assert_eq!(code(&queuelay(d, &["oracle", "--graph", "sub.json", "--out", "ls.json"])), 0);
    let out = queuelay(d, &["unsubdivide", "--graph", "g.json", "--subdivision", "map.json", "--layout", "ls.json", "--out", "l.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let layout: QueueLayout = serde_json::from_str(&std::fs::read_to_string(d.join("l.json")).unwrap()).unwrap();
    assert!(verify_layout(&g, &layout).is_ok());
}

#[test]
fn render_and_gen_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["a.json", "b.json"] {
        assert_eq!(code(&queuelay(d, &["gen", "well-layered", "--n", "40", "--delta", "3", "--seed", "7", "--out", name])), 0);
    }
    assert_eq!(std::fs::read(d.join("a.json")).unwrap(), std::fs::read(d.join("b.json")).unwrap());
    let grid = generators::grid(4, 4);
    write(d, "grid.json", to_json(&GraphFile::from_embedding(&grid)).unwrap());
    for name in ["a.svg", "b.svg"] {
        assert_eq!(code(&queuelay(d, &["render", "--input", "grid.json", "--out", name])), 0);
    }
    let a = std::fs::read_to_string(d.join("a.svg")).unwrap();
    assert_eq!(a, std::fs::read_to_string(d.join("b.svg")).unwrap());
    roxmltree::Document::parse(&a).unwrap();
}
