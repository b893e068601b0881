use std::fmt::Write;

use serde_json::Value;

/// The five equivalent statements for `G = X^r Y - F` with `F = f + X1...Xm g`.
const STATEMENTS: [(&str, &str); 5] = [
    ("(i)", "k[X1..Xm, Y, Z, T] = k[X1..Xm, G]^[2]"),
    ("(ii)", "k[X1..Xm, Y, Z, T] = k[G]^[m+2]"),
    ("(iii)", "A = k[x1..xm]^[2]"),
    ("(iv)", "A = k^[m+2]"),
    ("(v)", "k[Z, T] = k[f]^[1]"),
];

fn statement(out: &mut String, idx: usize, status: &str) {
    let (label, text) = STATEMENTS[idx];
    let _ = writeln!(out, "  {label:<6}{text:<40}{status}");
}

fn str_at<'a>(v: &'a Value, key: &str) -> &'a str {
    v.get(key).and_then(Value::as_str).unwrap_or("?")
}

fn statements(out: &mut String, command: &str, verdict: &str, cert: &Value) {
    match (command, verdict) {
        ("theorem-b", _) => {
            let v = &cert["statement_v"];
            let (first, fifth) = match verdict {
                "established" => (
                    "holds".to_string(),
                    format!("holds, tame word of length {}", v["word"].as_array().map_or(0, Vec::len)),
                ),
                "refuted" => ("fails, by (v)".to_string(), format!("fails: reduction stuck at {}", str_at(v, "stuck"))),
                _ => ("undecided".to_string(), str_at(v, "verdict").to_string()),
            };
            for i in 0..4 {
                statement(out, i, &first);
            }
            statement(out, 4, &fifth);
        }
        ("coord", "coordinate") => statement(out, 4, "holds"),
        ("coord", "not-coordinate") => {
            statement(out, 4, &format!("fails: reduction stuck at {}", str_at(cert, "stuck")))
        }
        _ => {}
    }
}

/// Multi-line human summary of a report or error object.
pub fn render(report: &Value) -> String {
    let mut out = String::new();
    let command = report["command"]["command"].as_str().unwrap_or("?");
    if let Some(err) = report.get("error") {
        let _ = writeln!(out, "{command}: {} error: {}", str_at(err, "kind"), str_at(err, "message"));
        return out;
    }
    let verdict = str_at(report, "verdict");
    let cert = &report["certificate"];
    let _ = writeln!(out, "{command}: {verdict}");
    statements(&mut out, command, verdict, cert);
    match command {
        "theorem-b" => {
            if let Some(polys) = cert["witness"]["polys"].as_array() {
                let names: Vec<&str> = polys.iter().filter_map(Value::as_str).collect();
                let _ = writeln!(out, "  coordinate system: {}", names.join(", "));
            }
            if let Some(case) = cert["mate_case"].as_str() {
                let _ = writeln!(out, "  mate case: {case}");
            }
        }
        "coord" if verdict == "coordinate" => {
            let _ = writeln!(out, "  mate: {}", str_at(cert, "mate"));
        }
        "catalog" => {
            for e in cert["entries"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  r = {}", e["r"]);
            }
            let _ = writeln!(out, "  pairwise certificates: {}", cert["certificate_count"]);
        }
        "gr" if verdict == "graded" => {
            let last = cert.get("chain").and_then(|c| c.as_array()).and_then(|c| c.last()).unwrap_or(cert);
            let _ = writeln!(out, "  graded relation F_d = {}", str_at(last, "F_d"));
        }
        _ => {}
    }
    for flag in report["hypothesis_flags"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  flag: {}", flag.as_str().unwrap_or_default());
    }
    let _ = writeln!(out, "  time: {} ms", report["timing_ms"]);
    out
}
