use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use schur_embed::geometry::is_convex_position;
use schur_embed::graph::build_gkl;
use schur_embed::io::{format_graph, parse_layout};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schur-embed"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gkl_file(dir: &Path, k: usize, l: usize) -> PathBuf {
    let (g, b) = build_gkl(k, l, false).unwrap();
    write(dir, &format!("g{k}_{l}.txt"), &format_graph(&g, Some(&b)))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn embed_writes_convex_boundary_svg_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let input = gkl_file(dir.path(), 16, 3);
    let (out, svg, trace) = (dir.path().join("x.csv"), dir.path().join("x.svg"), dir.path().join("t.jsonl"));
    let o = run(&["embed", s(&input), "--out", s(&out), "--svg", s(&svg), "--trace", s(&trace)]);
    assert!(o.status.success(), "{}", stderr(&o));

    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# schur-embed embed "));
    let x = parse_layout(&text).unwrap();
    assert_eq!(x.len(), 48);
    assert!(is_convex_position(&x[..16]).unwrap());

    let drawing = std::fs::read_to_string(&svg).unwrap();
    assert!(drawing.contains("<svg") && drawing.contains("<polygon"));
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines[0]["config"].as_str().unwrap().contains("--seed"));
    assert_eq!(lines[1]["iteration"], 0);

    // rerunning reproduces the artifact byte for byte
    let again = run(&["embed", s(&input)]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn missing_boundary_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k3.txt", "3 3\n1 2\n2 3\n1 3\n");
    let o = run(&["embed", s(&input)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("boundary required"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.txt", "3 2\n1 2\n2 9\nboundary: 1 2 3\n");
    let o = run(&["schur", s(&input)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn schur_reports_k4_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k4.txt", "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\nboundary: 1 2 3\n");
    let o = run(&["schur", s(&input)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for l in v["lambda"].as_array().unwrap() {
        assert!((l.as_f64().unwrap() - 4.0).abs() < 1e-9);
    }
    assert!(v["notice"].is_null());
    assert!(v["equivalence"]["product"].as_f64().unwrap().is_finite());

    let tri = write(dir.path(), "k3.txt", "3 3\n1 2\n2 3\n1 3\nboundary: 1 2 3\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["schur", s(&tri)]))).unwrap();
    assert!(v["notice"].as_str().unwrap().contains("S_Γ = L_Γ"));
}

#[test]
fn schur_on_model_graph() {
    let dir = tempfile::tempdir().unwrap();
    let input = gkl_file(dir.path(), 40, 8);
    let o = run(&["schur", s(&input)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["equivalence"]["c1"].as_f64().unwrap() > 0.0);
    assert_eq!(v["eigvec_convex"], true);
}

#[test]
fn trace_check_passes_and_validates_parameters() {
    let o = run(&["trace-check", "--k", "40", "--ell", "8", "--c", "3", "--trials", "50"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["report"]["checks"].as_array().unwrap().len(), 8);

    let o = run(&["trace-check", "--k", "40", "--ell", "8", "--star", "--trials", "20"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["star"], true);
    assert!(v["report"]["checks"].as_array().unwrap().iter().any(|c| c["name"] == "trace-star-upper"));

    let o = run(&["trace-check", "--k", "20", "--ell", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("4ℓ < k"));
}

#[test]
fn experiment_sweep_gives_one_row_per_size() {
    let o = run(&["experiment", "--shape", "rect", "--n", "150,200", "--trials", "2", "--seed", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows[0].starts_with("shape,n,trials,"));
    assert!(rows[1].starts_with("rect,150,2,"));
    assert!(rows[2].starts_with("rect,200,2,"));
    assert!(text.starts_with("# schur-embed experiment --shape rect --n 150,200 --trials 2 --seed 3"));

    assert_eq!(run(&["experiment", "--shape", "square", "--n", "100"]).status.code(), Some(2));
    assert_eq!(run(&["experiment", "--shape", "disk", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn render_full_and_boundary_layouts() {
    let dir = tempfile::tempdir().unwrap();
    let input = gkl_file(dir.path(), 8, 2);
    let layout = dir.path().join("x.csv");
    assert!(run(&["embed", s(&input), "--out", s(&layout)]).status.success());
    let o = run(&["render", s(&input), "--layout", s(&layout)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches("<line").count(), 24);

    let rows: Vec<String> = (1..=8).map(|v| format!("{v},{},{}", (v as f64).cos(), (v as f64).sin())).collect();
    let ring = write(dir.path(), "ring.csv", &format!("vertex,x,y\n{}\n", rows.join("\n")));
    let o = run(&["render", s(&input), "--layout", s(&ring)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches("<line").count(), 0);

    let short = write(dir.path(), "short.csv", "vertex,x,y\n1,0,0\n2,1,0\n");
    assert_eq!(run(&["render", s(&input), "--layout", s(&short)]).status.code(), Some(3));
}
