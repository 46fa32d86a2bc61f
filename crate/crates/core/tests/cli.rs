use std::path::Path;
use std::process::{Command, Output};

fn bohrfrac(args: &[&str]) -> Output {
    bohrfrac_env(args, None)
}

fn bohrfrac_env(args: &[&str], max_terms: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bohrfrac"));
    cmd.args(args).env_remove("BOHRFRAC_MAX_TERMS");
    if let Some(v) = max_terms {
        cmd.env("BOHRFRAC_MAX_TERMS", v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn radius_examples() {
    let o = bohrfrac(&["radius", "--family", "convex", "--alpha", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("root: 0.333333"));

    let o = bohrfrac(&[
        "radius", "--family", "bloch", "--alpha", "0.9", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["root"].as_f64().unwrap() - 0.088162).abs() < 2e-4);
    assert_eq!(v["family"], "bloch_M");

    assert_eq!(
        code(&bohrfrac(&[
            "radius", "--family", "analytic", "--alpha", "1.5"
        ])),
        2
    );
    assert_eq!(
        code(&bohrfrac(&[
            "radius", "--family", "analytic", "--alpha", "-0.1"
        ])),
        2
    );
    assert_eq!(
        code(&bohrfrac(&[
            "radius",
            "--family",
            "univalent",
            "--alpha",
            "0.9"
        ])),
        3
    );
}

#[test]
fn radius_variants() {
    let o = bohrfrac(&[
        "radius",
        "--family",
        "analytic",
        "--variant",
        "tabulated",
        "--alpha",
        "0.5",
        "--format",
        "json",
    ]);
    assert!((json(&o)["root"].as_f64().unwrap() - 0.28301).abs() < 2e-4);
    let o = bohrfrac(&[
        "radius",
        "--family",
        "analytic",
        "--variant",
        "stated",
        "--alpha",
        "0.99",
        "--format",
        "json",
    ]);
    assert!(json(&o)["root"].as_f64().unwrap() < 0.02);
    assert_eq!(
        code(&bohrfrac(&[
            "radius",
            "--family",
            "bloch",
            "--variant",
            "tabulated",
            "--alpha",
            "0.5"
        ])),
        64
    );
}

#[test]
fn usage_errors() {
    assert_eq!(code(&bohrfrac(&[])), 64);
    assert_eq!(code(&bohrfrac(&["radius", "--alpha", "0.5"])), 64);
    assert_eq!(
        code(&bohrfrac(&[
            "radius", "--family", "koebe", "--alpha", "0.5"
        ])),
        64
    );
    assert_eq!(
        code(&bohrfrac(&[
            "radius", "--family", "convex", "--alpha", "half"
        ])),
        64
    );
    assert_eq!(
        code(&bohrfrac(&[
            "radius", "--family", "convex", "--alpha", "0.2", "--format", "xml"
        ])),
        64
    );
    assert_eq!(code(&bohrfrac(&["--help"])), 0);
    assert_eq!(code(&bohrfrac(&["--version"])), 0);
}

#[test]
fn curve_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rho.csv");
    let o = bohrfrac(&[
        "curve",
        "--family",
        "shifted",
        "--alpha-min",
        "0",
        "--alpha-max",
        "1",
        "--steps",
        "5",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());

    let text = std::fs::read_to_string(&out).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["alpha", "root", "residual", "status", "note"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    let alphas: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(alphas, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    let first: f64 = rows[0][1].parse().unwrap();
    let last: f64 = rows[4][1].parse().unwrap();
    assert!((first - 0.33333).abs() < 2e-4);
    assert!((last - 0.18350).abs() < 2e-4);
    assert!(rows.iter().all(|r| &r[3] == "ok"));

    // Printed values carry 12 significant digits and survive a reparse.
    let o = bohrfrac(&[
        "radius", "--family", "shifted", "--alpha", "1", "--format", "json",
    ]);
    let root = json(&o)["root"].as_f64().unwrap();
    assert!((last - root).abs() <= 1e-12);
    assert!((last - (1.0 - (2.0f64 / 3.0).sqrt())).abs() < 1e-9);
}

#[test]
fn univalent_curve_decreases() {
    let o = bohrfrac(&[
        "curve",
        "--family",
        "univalent",
        "--alpha-min",
        "0",
        "--alpha-max",
        "0.5",
        "--steps",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let roots: Vec<f64> = json(&o)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["root"].as_f64().unwrap())
        .collect();
    assert_eq!(roots.len(), 6);
    assert!(roots.windows(2).all(|w| w[1] < w[0]), "{roots:?}");
}

#[test]
fn curve_records_failures_per_row() {
    let o = bohrfrac(&[
        "curve",
        "--family",
        "univalent",
        "--alpha-min",
        "0.7",
        "--alpha-max",
        "0.9",
        "--steps",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let statuses: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(statuses, vec!["ok", "ok", "no_root"]);
}

#[test]
fn curve_validation_precedes_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    let p = path_str(&out);
    assert_eq!(
        code(&bohrfrac(&[
            "curve", "--family", "shifted", "--steps", "1", "--out", p
        ])),
        64
    );
    assert_eq!(
        code(&bohrfrac(&[
            "curve",
            "--family",
            "bloch",
            "--alpha-max",
            "1",
            "--out",
            p
        ])),
        2
    );
    assert_eq!(
        code(&bohrfrac(&[
            "curve",
            "--family",
            "bloch",
            "--alpha-min",
            "0.5",
            "--alpha-max",
            "0.2",
            "--out",
            p
        ])),
        64
    );
    assert!(!out.exists());

    let o = bohrfrac(&[
        "curve",
        "--family",
        "shifted",
        "--steps",
        "3",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(code(&o), 74);
}

#[test]
fn majorant_presets() {
    let o = bohrfrac(&[
        "majorant", "--preset", "koebe", "--alpha", "0", "--r", "0.1", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["value"].as_f64().unwrap() - 0.1 / 0.81).abs() < 1e-12);
    assert!(v["tail_bound"].as_f64().unwrap() < 1e-12);

    let third = (1.0f64 / 3.0).to_string();
    let o = bohrfrac(&[
        "majorant",
        "--preset",
        "half_plane",
        "--alpha",
        "0",
        "--r",
        &third,
        "--format",
        "json",
    ]);
    assert!((json(&o)["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let o = bohrfrac(&[
        "majorant",
        "--preset",
        "mobius:0.5",
        "--alpha",
        "0",
        "--r",
        "0.25",
        "--format",
        "json",
    ]);
    // 0.5 + 0.75 Σ 0.5^(n-1) 0.25^n = 0.5 + 0.75 · 0.25 / (1 - 0.125)
    assert!((json(&o)["value"].as_f64().unwrap() - (0.5 + 0.75 * 0.25 / 0.875)).abs() < 1e-12);

    assert_eq!(
        code(&bohrfrac(&[
            "majorant",
            "--preset",
            "joukowski",
            "--alpha",
            "0",
            "--r",
            "0.1"
        ])),
        64
    );
    assert_eq!(
        code(&bohrfrac(&[
            "majorant", "--preset", "koebe", "--alpha", "0", "--r", "1"
        ])),
        2
    );
}

#[test]
fn majorant_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("one.txt");
    std::fs::write(&good, "1\n").unwrap();
    let o = bohrfrac(&[
        "majorant",
        "--coeffs",
        path_str(&good),
        "--direction",
        "integral",
        "--alpha",
        "0.5",
        "--r",
        "0.25",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let value: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
    assert!((value - 0.564190).abs() < 1e-6);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "offset 0\n1\n0.5\nnot-a-number\n").unwrap();
    let o = bohrfrac(&[
        "majorant",
        "--coeffs",
        path_str(&bad),
        "--alpha",
        "0.5",
        "--r",
        "0.25",
    ]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(
        code(&bohrfrac(&[
            "majorant",
            "--coeffs",
            path_str(&missing),
            "--alpha",
            "0.5",
            "--r",
            "0.25"
        ])),
        74
    );
    assert_eq!(
        code(&bohrfrac(&[
            "majorant",
            "--coeffs",
            path_str(&good),
            "--preset",
            "koebe",
            "--alpha",
            "0.5",
            "--r",
            "0.25"
        ])),
        64
    );
}

#[test]
fn max_terms_precedence() {
    let args = [
        "majorant", "--preset", "koebe", "--alpha", "0.5", "--r", "0.95",
    ];
    assert_eq!(code(&bohrfrac_env(&args, None)), 0);
    assert_eq!(code(&bohrfrac_env(&args, Some("64"))), 3);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--max-terms", "8192"]);
    assert_eq!(code(&bohrfrac_env(&with_flag, Some("64"))), 0);
    assert_eq!(code(&bohrfrac_env(&args, Some("-3"))), 64);
}

#[test]
fn verify_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = bohrfrac(&["verify", "--format", "json", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 39);
    for r in rows {
        let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
        let status = r["status"].as_str().unwrap();
        if r["table_id"] == "T1_R"
            && r["note"].as_str().unwrap().starts_with("as_stated")
            && r["alpha"].as_f64().unwrap() > 0.0
        {
            assert_eq!(status, "mismatch");
        } else if r["table_id"] == "T1_R" && r["note"].as_str().unwrap().starts_with("as_tabulated")
        {
            assert_eq!(status, "variant_match");
        } else {
            assert_eq!(status, "match", "{r}");
        }
    }
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert_eq!(stderr.lines().filter(|l| l.ends_with("PASS")).count(), 10);

    assert_eq!(
        code(&bohrfrac(&[
            "verify",
            "--out",
            "/nonexistent-dir/report.json"
        ])),
        74
    );
}

#[test]
fn verify_is_deterministic() {
    let a = bohrfrac(&["verify", "--format", "csv"]);
    let b = bohrfrac(&["verify", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("table_id,alpha,published,computed,abs_delta,status,note\n"));
}
