use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn preset(name: &str) -> String {
    root().join("presets").join(name).to_string_lossy().into_owned()
}

fn hypercert(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypercert")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn reports(stdout: &str) -> Vec<Value> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

const VALIDATE: &str = "
import json, sys
import jsonschema
schema = json.load(open(sys.argv[1]))
cls = jsonschema.validators.validator_for(schema)
cls.check_schema(schema)
v = cls(schema)
bad = 0
for n, line in enumerate(open(sys.argv[2]), 1):
    for e in v.iter_errors(json.loads(line)):
        print(n, e.message)
        bad += 1
sys.exit(1 if bad else 0)
";

/// Validates JSON lines against the shipped schema with Python's `jsonschema`.
fn check_schema(reports: &Path) {
    let schema = root().join("docs/report.schema.json");
    let out = Command::new("python3").args(["-c", VALIDATE]).arg(&schema).arg(reports).output().unwrap();
    assert!(out.status.success(), "{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
}

fn write_batch(dir: &Path, lines: &[String]) -> String {
    let path = dir.join("batch.jsonl");
    fs::write(&path, lines.join("\n")).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn segre_nagata_is_not_a_coordinate() {
    let (code, out) = hypercert(&["coord", "--field", "F2", "--poly", "Z^4+T+T^6", "--json"]);
    assert_eq!(code, 0);
    let r = &reports(&out)[0];
    assert_eq!(r["verdict"], "not-coordinate");
    assert_eq!(r["version"], concat!("hypercert ", env!("CARGO_PKG_VERSION")));
}

#[test]
fn unstructured_presentation_points_to_ufd() {
    let (code, out) = hypercert(&["theorem-b", "--preset", &preset("ex1.json"), "--json"]);
    assert_eq!(code, 1);
    let r = &reports(&out)[0];
    assert_eq!(r["error"]["kind"], "input");
    let msg = r["error"]["message"].as_str().unwrap();
    assert!(msg.contains("unstructured") && msg.contains("ufd"), "{msg}");
}

#[test]
fn catalog_has_five_entries_and_ten_certificates() {
    let (code, out) = hypercert(&["catalog", "--count", "5", "--sn", "2,2,3", "--m", "2", "--json"]);
    assert_eq!(code, 0);
    let cert = &reports(&out)[0]["certificate"];
    let entries = cert["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    let certs: usize = entries.iter().map(|e| e["certificates"].as_array().unwrap().len()).sum();
    assert_eq!(certs, 10);
    assert_eq!(cert["certificate_count"], 10);
}

#[test]
fn undecided_verdicts_exit_two() {
    let (code, out) = hypercert(&["line", "--field", "F2", "--poly", "Z^2 + T^3", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(reports(&out)[0]["verdict"], "unknown");
}

#[test]
fn pretty_output_labels_the_statements() {
    let (code, out) = hypercert(&["theorem-b", "--preset", &preset("segre_nagata_f2.json"), "--pretty"]);
    assert_eq!(code, 0);
    for label in ["(i)", "(ii)", "(iii)", "(iv)", "(v)"] {
        assert!(out.contains(label), "{out}");
    }
    assert!(out.contains("refuted"));
}

#[test]
fn batch_preserves_order() {
    let dir = tempfile::tempdir().unwrap();
    let lines = [
        json!({"command": "coord", "field": "F2", "poly": "Z^4+T+T^6"}).to_string(),
        json!({"command": "ufd", "preset": preset("ex1.json")}).to_string(),
        json!({"command": "theorem-b", "preset": preset("bezout.json")}).to_string(),
    ];
    let (code, out) = hypercert(&["batch", &write_batch(dir.path(), &lines)]);
    assert_eq!(code, 0);
    let got: Vec<String> = reports(&out).iter().map(|r| r["verdict"].as_str().unwrap().to_string()).collect();
    assert_eq!(got, ["not-coordinate", "not-ufd", "established"]);
}

#[test]
fn batch_isolates_malformed_lines() {
    let dir = tempfile::tempdir().unwrap();
    let lines = [
        json!({"command": "coord", "poly": "Z + T^2"}).to_string(),
        "{\"command\": \"coord\", \"poly\": ".to_string(),
        json!({"command": "line", "sn": "3,2,2"}).to_string(),
    ];
    let (code, out) = hypercert(&["batch", &write_batch(dir.path(), &lines)]);
    assert_eq!(code, 1);
    let rs = reports(&out);
    assert_eq!(rs.len(), 3);
    assert_eq!(rs[0]["verdict"], "coordinate");
    assert_eq!(rs[1]["error"]["kind"], "input");
    assert_eq!(rs[1]["line"], 2);
    assert_eq!(rs[2]["verdict"], "line");
}

#[test]
fn empty_batch_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hypercert(&["batch", &write_batch(dir.path(), &[])]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
}

fn all_kinds() -> Vec<Value> {
    vec![
        json!({"command": "coord", "poly": "T + (Z + T^2)^3"}),
        json!({"command": "coord", "field": "F2", "poly": "Z^4+T+T^6"}),
        json!({"command": "line", "sn": "2,2,3"}),
        json!({"command": "line", "poly": "Z*T"}),
        json!({"command": "line", "field": "F2", "poly": "Z^2 + T^3"}),
        json!({"command": "theorem-b", "preset": preset("bezout.json")}),
        json!({"command": "theorem-b", "r": "2", "F": "Z + X1*Z^2 + X1*T"}),
        json!({"command": "theorem-b", "preset": preset("segre_nagata_f2.json")}),
        json!({"command": "theorem-b", "preset": preset("ex1.json")}),
        json!({"command": "ufd", "preset": preset("ex1.json")}),
        json!({"command": "ufd", "preset": preset("bezout.json")}),
        json!({"command": "fibration", "preset": preset("segre_nagata_f2.json")}),
        json!({"command": "fibration", "r": [2], "F": "Z*T + X1"}),
        json!({"command": "expmap", "preset": preset("graded.json")}),
        json!({"command": "gr", "preset": preset("graded.json")}),
        json!({"command": "gr", "preset": preset("graded.json"), "weights": "-1"}),
        json!({"command": "gr", "r": "2", "F": "Z + X1*Z", "weights": [1]}),
        json!({"command": "iso", "preset": [preset("bezout.json"), preset("graded.json")]}),
        json!({"command": "iso", "preset": [preset("segre_nagata_f2.json"), {"m": 2, "r": [2, 3], "field": "F2", "F": "Z^4 + T + T^6"}]}),
        json!({"command": "aut", "preset": preset("translation_aut.json")}),
        json!({"command": "aut", "preset": {"m": 1, "r": [2], "field": "Q", "F": "Z + X1*T", "images": {"x1": "x1^2", "z": "x1^2*z", "t": "x1*t"}}}),
        json!({"command": "catalog", "sn": "2,2,3", "count": 3, "m": 2}),
        json!({"command": "nonsense"}),
        json!({"command": "coord", "poly": "Z +* T"}),
    ]
}

#[test]
fn reports_match_the_schema_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let lines: Vec<String> = all_kinds().iter().map(Value::to_string).collect();
    let (_, out) = hypercert(&["batch", &write_batch(dir.path(), &lines), "--jobs", "4"]);
    let rs = reports(&out);
    assert_eq!(rs.len(), lines.len());
    let verdicts: Vec<&str> = rs.iter().filter_map(|r| r["verdict"].as_str()).collect();
    for v in [
        "coordinate",
        "not-coordinate",
        "line",
        "not-line",
        "unknown",
        "established",
        "refuted",
        "ufd",
        "not-ufd",
        "fibration",
        "not-fibration",
        "verified",
        "graded",
        "hypothesis-fails",
        "consistent-with",
        "not-isomorphic",
        "not-automorphism",
        "automorphism",
        "catalog",
    ] {
        assert!(verdicts.contains(&v), "no {v} among {verdicts:?}");
    }
    let saved = dir.path().join("reports.jsonl");
    fs::write(&saved, &out).unwrap();
    check_schema(&saved);
    let (code, checked) = hypercert(&["--verify-only", saved.to_str().unwrap()]);
    assert_eq!(code, 0, "{checked}");
    for line in reports(&checked) {
        assert_ne!(line["status"], "failed", "{line}");
    }
}

#[test]
fn tampered_certificates_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out) = hypercert(&["theorem-b", "--preset", &preset("bezout.json"), "--json"]);
    let mut r = reports(&out).remove(0);
    r["certificate"]["witness"]["polys"][2] = json!("Y + Z");
    let path = dir.path().join("bad.json");
    fs::write(&path, r.to_string()).unwrap();
    let (code, checked) = hypercert(&["--verify-only", path.to_str().unwrap()]);
    assert_eq!(code, 3, "{checked}");
    assert_eq!(reports(&checked)[0]["status"], "failed");
}

#[test]
fn parallel_batches_agree() {
    let dir = tempfile::tempdir().unwrap();
    let lines: Vec<String> = all_kinds().iter().map(Value::to_string).collect();
    let path = write_batch(dir.path(), &lines);
    let strip = |out: String| -> Vec<String> {
        let mut v: Vec<String> = reports(&out)
            .into_iter()
            .map(|mut r| {
                r.as_object_mut().unwrap().remove("timing_ms");
                r.to_string()
            })
            .collect();
        v.sort();
        v
    };
    let one = strip(hypercert(&["batch", &path, "--jobs", "1"]).1);
    let many = strip(hypercert(&["batch", &path, "--jobs", "4"]).1);
    assert_eq!(one, many);
}
