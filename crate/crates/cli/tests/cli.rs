use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sl3webs::enumeration::enumerate_ne;
use sl3webs::web::io::render_web;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl3webs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn bracket_of_a_circle() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "circle.script", "bpm\nspm\n");
    let (v, code) = machine(&["bracket", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["bracket"], "q^2 + 1 + q^-2");
    assert_eq!(v["command"], "bracket");
}

#[test]
fn bracket_with_trace_and_seed() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "theta.script", "tppp\nt_ppp\n");
    let (v, code) = machine(&["--seed", "4", "bracket", "--trace", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["bracket"], "q^3 + 2q + 2q^-1 + q^-3");
    assert_eq!(v["results"]["trace"].as_array().unwrap().len(), 2);
    assert_eq!(v["checks"][0]["passed"], true);
}

#[test]
fn json_web_files() {
    let dir = TempDir::new().unwrap();
    let basis = enumerate_ne(&"+-+-".parse().unwrap()).unwrap();
    let a = write(&dir, "a.json", &render_web(&basis.webs[0]));
    let b = write(&dir, "b.json", &render_web(&basis.webs[1]));
    let (v, code) = machine(&["homdim", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dimension"], "9");
    let (v, _) = machine(&["homdim", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(v["results"]["dimension"], "3");
    let (v, code) = machine(&["colorings", "--count", a.to_str().unwrap()]);
    assert_eq!((v["results"]["count"].as_u64(), code), (Some(9), 0));
    let (v, _) = machine(&["colorings", "--boundary=-1,-1,-1,-1", a.to_str().unwrap()]);
    assert_eq!(v["results"]["count"], 1);
}

#[test]
fn enumerate_and_check() {
    let cache = TempDir::new().unwrap();
    let (v, code) = machine(&[
        "enumerate",
        "+-+-+-",
        "--cache-dir",
        cache.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], 6);
    assert_eq!(v["results"]["basis"].as_array().unwrap().len(), 6);
    // second run reads the cache
    let (again, _) = machine(&[
        "enumerate",
        "+-+-+-",
        "--cache-dir",
        cache.path().to_str().unwrap(),
    ]);
    assert_eq!(again["results"], v["results"]);
    let (v, code) = machine(&["check", "+-+-+-"]);
    assert_eq!(code, 0);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    assert_ne!(v["results"]["gram_determinant"], "0");
    let (v, code) = machine(&["check", "++-"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["admissible"], false);
}

#[test]
fn gornik_blocks() {
    let (v, code) = machine(&["gornik-blocks", "+++"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["blocks"].as_object().unwrap().len(), 6);
    assert_eq!(v["results"]["sum_n_squared"], 6);
}

#[test]
fn foam_eval() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "theta.foam",
        "facet 0 genus=0 dots=0 slots=0 color=a\nfacet 1 genus=0 dots=1 slots=0 color=b\nfacet 2 genus=0 dots=2 slots=0 color=c\ncircle 0.0,1.0,2.0\n",
    );
    let (v, code) = machine(&["--seed", "1", "foam-eval", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["value"], "1");
    assert_eq!(v["results"]["degree"], 0);
    assert_eq!(v["results"]["well_colored"], true);
    let torus = write(&dir, "torus.foam", "facet 0 genus=1 dots=0 slots=\n");
    let (v, _) = machine(&["foam-eval", torus.to_str().unwrap()]);
    assert_eq!(v["results"]["value"], "3");
}

#[test]
fn oracle_is_deterministic() {
    let a = run(&["--seed", "7", "oracle", "--samples", "5"]);
    assert_eq!(a.status.code(), Some(0));
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("[pass] tensor = bracket: 5 of 5"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.foam",
        "facet 0 slots=0\nfacet 1 slots=0\ncircle 0.0,1.0\n",
    );
    let out = run(&["foam-eval", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let broken = write(&dir, "w.json", "{\"boundary\": [\"+\"],\n \"vertices\": 3}");
    let out = run(&["bracket", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["enumerate", "+x"]).status.code(), Some(2));
    assert_eq!(run(&["bracket", "/does/not/exist"]).status.code(), Some(2));
    let open = write(&dir, "y.script", "tppp\n");
    assert_eq!(
        run(&["bracket", open.to_str().unwrap()]).status.code(),
        Some(2)
    );
}
