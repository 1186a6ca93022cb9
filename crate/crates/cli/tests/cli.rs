use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn distrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distrep")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn coords_csv(doc: &Value) -> String {
    doc["embedding"]["coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| floats(row).iter().map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn embed_path() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.graph", "3\n0 1\n1 2\n");
    let out = distrep(&["embed", s(&p3)]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["embedding"]["dim"], 1);
    let lengths = floats(&doc["pipeline"]["final_lengths"]);
    assert!((lengths[0] - 1.0).abs() < 1e-9 && (lengths[1] - 2.0).abs() < 1e-9, "{lengths:?}");
    assert!((doc["pipeline"]["tau"].as_f64().unwrap() - 0.375).abs() < 1e-9);
    assert_eq!(doc["certification"]["passed"], true);
    assert_eq!(doc["input"]["p"], 2);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"tau\": 0.375000000000000"), "{text}");
}

#[test]
fn embed_complete_falls_back() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.graph", "3\n0 1\n0 2\n1 2\n");
    let out = distrep(&["embed", s(&k3)]);
    assert_eq!(code(&out), 2);
    let doc = json(&out);
    assert_eq!(doc["status"], "fallback");
    assert_eq!(doc["embedding"]["dim"], 2);
    assert!(doc["note"].as_str().unwrap().contains("dimension |G|-1 is necessary"));
    assert_eq!(doc["pipeline"], Value::Null);
}

#[test]
fn embed_parse_error() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.graph", "3\n0 1\n1 7\n");
    let out = distrep(&["embed", s(&broken)]);
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["stage"], "parse");
    assert_eq!(doc["error"]["line"], 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let missing = distrep(&["embed", s(&dir.path().join("nope.graph"))]);
    assert_eq!(code(&missing), 1);
    assert_eq!(json(&missing)["error"]["stage"], "read");
}

#[test]
fn embed_colored() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.colored", "# two colors\n3\n0 1 1\n1 2 1\n0 2 2\n");
    let out = distrep(&["embed", "--colored", s(&tri)]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["input"]["kind"], "colored");
    assert_eq!(doc["pipeline"]["classes"], serde_json::json!([1, 2]));

    let mono = write(&dir, "mono.colored", "3\n0 1 4\n1 2 4\n0 2 4\n");
    assert_eq!(code(&distrep(&["embed", "--colored", s(&mono)])), 2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.graph", "5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let a = distrep(&["embed", s(&c5)]);
    let b = distrep(&["embed", s(&c5)]);
    assert_eq!(a.stdout, b.stdout);
    let out_path = dir.path().join("c5.json");
    let c = distrep(&["embed", s(&c5), "--json-out", s(&out_path)]);
    assert_eq!(code(&c), 0);
    assert!(c.stdout.is_empty());
    assert_eq!(fs::read(&out_path).unwrap(), a.stdout);
}

#[test]
fn embed_then_check_passes() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("p3.graph", "3\n0 1\n1 2\n", false),
        ("c4.graph", "4\n0 1\n1 2\n2 3\n0 3\n", false),
        ("star.graph", "5\n0 1\n0 2\n0 3\n0 4\n", false),
        ("pet.graph", "6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n0 3\n", false),
        ("k4.graph", "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n", false),
        ("col.colored", "4\n0 1 1\n0 2 2\n0 3 3\n1 2 1\n1 3 2\n2 3 3\n", true),
    ];
    for (name, text, colored) in cases {
        let graph = write(&dir, name, text);
        let mut args = vec!["embed", s(&graph)];
        if colored {
            args.push("--colored");
        }
        let out = distrep(&args);
        assert!(code(&out) == 0 || code(&out) == 2, "{name}");
        let coords = write(&dir, &format!("{name}.csv"), &coords_csv(&json(&out)));
        let mut args = vec!["check", s(&graph), s(&coords)];
        if colored {
            args.push("--colored");
        }
        let check = distrep(&args);
        assert_eq!(code(&check), 0, "{name}: {}", String::from_utf8_lossy(&check.stdout));
        assert_eq!(json(&check)["passed"], true);
    }
}

#[test]
fn qvalue_examples() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("jm.txt", "0 1 1\n1 0 1\n1 1 0\n", -0.5, "FullDimension"),
        ("line.txt", "0 1 4\n1 0 1\n4 1 0\n", 0.0, "Degenerate"),
        ("bad.txt", "0 1 9\n1 0 1\n9 1 0\n", 5.0 / 6.0, "NonEmbeddable"),
    ];
    for (name, text, q, class) in cases {
        let path = write(&dir, name, text);
        let out = distrep(&["qvalue", s(&path)]);
        assert_eq!(code(&out), 0);
        let doc = json(&out);
        assert!((doc["q"].as_f64().unwrap() - q).abs() <= 1e-12, "{name}: {}", doc["q"]);
        assert_eq!(doc["classification"], class);
    }

    let asym = write(&dir, "asym.txt", "0 1\n2 0\n");
    assert_eq!(code(&distrep(&["qvalue", s(&asym)])), 1);
    let diag = write(&dir, "diag.txt", "1 1\n1 0\n");
    assert_eq!(code(&distrep(&["qvalue", s(&diag)])), 1);
}

#[test]
fn check_examples() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.graph", "3\n0 1\n1 2\n");
    let good = write(&dir, "good.csv", "0\n1\n2\n");
    let out = distrep(&["check", s(&p3), s(&good)]);
    assert_eq!(code(&out), 0);

    let skewed = write(&dir, "skewed.csv", "0\n1\n2.5\n");
    let out = distrep(&["check", s(&p3), s(&skewed)]);
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["passed"], false);
    let pairs: Vec<Value> = doc["violations"].as_array().unwrap().iter().map(|v| v["pair"].clone()).collect();
    assert_eq!(pairs, vec![serde_json::json!([0, 1]), serde_json::json!([1, 2])]);

    let short = write(&dir, "short.csv", "0\n1\n");
    let out = distrep(&["check", s(&p3), s(&short)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2 rows"));

    let loose = write(&dir, "loose.csv", "0\n1\n2.0001\n");
    assert_eq!(code(&distrep(&["check", s(&p3), s(&loose)])), 1);
    assert_eq!(code(&distrep(&["check", s(&p3), s(&loose), "--rel-tol", "1e-3"])), 0);
}

#[test]
fn sweep_small() {
    let out = distrep(&["sweep", "--max-n", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).take(2).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(&rows[0][..4], &["3", "8", "6", "6"]);
    assert_eq!(&rows[1][..4], &["4", "64", "62", "62"]);
    assert!(text.contains("all passed"));
}

#[test]
#[ignore = "exhaustive over n <= 6 plus 1000 graphs on 7 vertices; run with --release"]
fn sweep_full() {
    let out = distrep(&["sweep", "--max-n", "7", "--sample", "1000", "--seed", "42"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("32766"));
    assert!(text.contains("all passed"));
}

#[test]
fn simplex_examples() {
    for n in [1usize, 2, 3, 5] {
        let out = distrep(&["simplex", "-n", &n.to_string()]);
        assert_eq!(code(&out), 0);
        let doc = json(&out);
        assert_eq!(doc["affine_dimension"], n - 1);
        assert!(doc["max_distance_error"].as_f64().unwrap() <= 1e-12);
        assert_eq!(doc["coords"].as_array().unwrap().len(), n);
    }
    assert_eq!(code(&distrep(&["simplex", "-n", "0"])), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&distrep(&[])), 1);
    assert_eq!(code(&distrep(&["sweep", "--max-n", "8"])), 1);
    assert_eq!(code(&distrep(&["sweep", "--max-n", "2"])), 1);
    assert_eq!(code(&distrep(&["--help"])), 0);
}
