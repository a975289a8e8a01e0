//! End-to-end runs of the binary: pipelines, exit codes, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_srgswitch")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn symplectic_pipeline_reaches_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_code(
        &run(d, &["build", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity", "-o", "sp.g6"]),
        0,
    );
    assert!(d.join("sp.g6").exists());
    assert!(d.join("sp.g6.labels").exists());
    assert_code(
        &run(
            d,
            &[
                "switchset", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity",
                "--kind", "collinearity", "--m", "3", "--bind", "sp.g6", "-o", "set.json",
            ],
        ),
        0,
    );
    let record: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.join("set.json")).unwrap()).unwrap();
    assert_eq!(record["c1"].as_array().unwrap().len(), 2);
    assert_code(
        &run(d, &["switch", "--graph", "sp.g6", "--set", "set.json", "-o", "switched.g6"]),
        0,
    );
    assert!(d.join("switched.g6.transcript.json").exists());
    assert_code(
        &run(
            d,
            &[
                "certify", "--a", "sp.g6", "--b", "switched.g6", "--checks",
                "srg,cospectral,triangles", "--expect", "pass,pass,pass", "--report", "report.json",
            ],
        ),
        0,
    );
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["ok"], serde_json::Value::Bool(true));
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn design_pipeline_and_clique_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_code(
        &run(
            d,
            &[
                "build", "--design", "grassmann", "--n", "4", "--q", "2", "--graph", "block",
                "-o", "gr.g6", "--design-out", "gr.design",
            ],
        ),
        0,
    );
    let design_text = std::fs::read_to_string(d.join("gr.design")).unwrap();
    assert!(design_text.starts_with("design/v1\nv=15 b=3 lambda=1"));
    assert_code(
        &run(
            d,
            &[
                "switchset", "--design", "grassmann", "--n", "4", "--q", "2", "--graph", "block",
                "--kind", "design", "--s", "3", "-o", "set.json",
            ],
        ),
        0,
    );
    assert_code(
        &run(d, &["switch", "--graph", "gr.g6", "--set", "set.json", "-o", "sw.g6"]),
        0,
    );
    // identical files: the triangle check must fail its pass expectation
    assert_code(
        &run(d, &["certify", "--a", "gr.g6", "--b", "gr.g6", "--checks", "triangles"]),
        1,
    );
    // cliques separate the switched graph; the small-graph oracle agrees
    assert_code(
        &run(
            d,
            &[
                "certify", "--a", "gr.g6", "--b", "sw.g6", "--checks",
                "srg,cospectral,cliques,iso", "--expect", "pass,pass,pass,fail",
            ],
        ),
        0,
    );
}

#[test]
fn gm_method_switches_the_union_cell() {
    // On this record the union cell C1 ∪ C2 is also a valid single GM cell;
    // outside vertices seeing one point per side get complemented, so the
    // result differs from the WQH switch but is cospectral all the same.
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        vec!["build", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity", "-o", "sp.g6"],
        vec![
            "switchset", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity",
            "--kind", "collinearity", "--m", "3", "-o", "set.json",
        ],
        vec!["switch", "--graph", "sp.g6", "--set", "set.json", "--method", "wqh", "-o", "w.g6"],
        vec!["switch", "--graph", "sp.g6", "--set", "set.json", "--method", "gm", "-o", "g.g6"],
    ] {
        assert_code(&run(d, &args), 0);
    }
    assert_code(
        &run(d, &["certify", "--a", "sp.g6", "--b", "g.g6", "--checks", "cospectral"]),
        0,
    );
    assert_code(
        &run(d, &["certify", "--a", "sp.g6", "--b", "w.g6", "--checks", "cospectral"]),
        0,
    );
}

#[test]
fn unitary_tangent_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        vec!["build", "--space", "u", "--n", "6", "--q", "4", "--graph", "polarity", "-o", "u62.g6"],
        vec![
            "switchset", "--space", "u", "--n", "6", "--q", "4", "--graph", "polarity",
            "--kind", "tangent", "--quotient", "u2", "-o", "set.json",
        ],
        vec!["switch", "--graph", "u62.g6", "--set", "set.json", "-o", "sw.g6"],
        vec![
            "certify", "--a", "u62.g6", "--b", "sw.g6", "--checks", "srg,triangles",
            "--expect", "pass,pass",
        ],
    ] {
        assert_code(&run(d, &args), 0);
    }
    let record: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.join("set.json")).unwrap()).unwrap();
    assert_eq!(record["c1"].as_array().unwrap().len(), 4);
    let labels = std::fs::read_to_string(d.join("u62.g6.labels")).unwrap();
    assert_eq!(labels.lines().count(), 672);
}

#[test]
fn impossible_quotient_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // a hyperbolic same-type quotient cannot exist over GF(3)
    let out = run(
        d,
        &[
            "switchset", "--space", "o+", "--n", "6", "--q", "3", "--graph", "polarity",
            "--kind", "tangent", "--quotient", "hyperbolic", "--class", "plus", "-o", "never.json",
        ],
    );
    assert_code(&out, 3);
    assert!(!d.join("never.json").exists());
}

#[test]
fn tampered_set_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_code(
        &run(d, &["build", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity", "-o", "sp.g6"]),
        0,
    );
    assert_code(
        &run(
            d,
            &[
                "switchset", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity",
                "--kind", "collinearity", "--m", "3", "-o", "set.json",
            ],
        ),
        0,
    );
    // corrupt one cell so the hypotheses fail
    let text = std::fs::read_to_string(d.join("set.json")).unwrap();
    let mut record: serde_json::Value = serde_json::from_str(&text).unwrap();
    record["c1"] = serde_json::json!([0, 1]);
    std::fs::write(d.join("bad.json"), serde_json::to_string(&record).unwrap()).unwrap();
    let out = run(d, &["switch", "--graph", "sp.g6", "--set", "bad.json", "-o", "out.g6"]);
    assert_code(&out, 4);
    assert!(!d.join("out.g6").exists());
    // the transcript still records the violation
    let transcript = std::fs::read_to_string(d.join("out.g6.transcript.json")).unwrap();
    assert!(transcript.contains("\"valid\": false"));
}

#[test]
fn bad_specs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // odd-dimensional symplectic space
    assert_code(
        &run(d, &["build", "--space", "sp", "--n", "5", "--q", "2", "--graph", "collinearity", "-o", "x.g6"]),
        2,
    );
    // quadric in even characteristic
    assert_code(
        &run(d, &["build", "--space", "o", "--n", "5", "--q", "4", "--graph", "polarity", "-o", "x.g6"]),
        2,
    );
    // clap-level parse failure
    assert_code(&run(d, &["build", "--space", "nope", "-o", "x.g6"]), 2);
    // missing input file
    assert_code(&run(d, &["certify", "--a", "missing.g6", "--b", "missing.g6", "--checks", "srg"]), 2);
}

#[test]
fn digest_binding_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        vec!["build", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity", "-o", "sp.g6"],
        vec!["build", "--space", "sp", "--n", "4", "--q", "2", "--graph", "collinearity", "-o", "other.g6"],
        vec![
            "switchset", "--space", "sp", "--n", "6", "--q", "2", "--graph", "collinearity",
            "--kind", "collinearity", "--m", "3", "--bind", "sp.g6", "-o", "set.json",
        ],
    ] {
        assert_code(&run(d, &args), 0);
    }
    assert_code(&run(d, &["switch", "--graph", "other.g6", "--set", "set.json", "-o", "out.g6"]), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let build = |out: &str, manifest: &str| {
        assert_code(
            &run(
                d,
                &[
                    "build", "--space", "u", "--n", "4", "--q", "4", "--graph", "polarity",
                    "-o", out, "--manifest", manifest,
                ],
            ),
            0,
        );
    };
    build("a.g6", "a.manifest.json");
    build("b.g6", "b.manifest.json");
    assert_eq!(
        std::fs::read(d.join("a.g6")).unwrap(),
        std::fs::read(d.join("b.g6")).unwrap()
    );
    let strip = |path: PathBuf| -> serde_json::Value {
        let mut v: serde_json::Value =
            serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("wall_clock_unix");
        // output paths differ by construction here; compare digests only
        v.as_object_mut().unwrap().remove("command_line");
        for o in v["outputs"].as_array_mut().unwrap() {
            o.as_object_mut().unwrap().remove("path");
        }
        v
    };
    assert_eq!(strip(d.join("a.manifest.json")), strip(d.join("b.manifest.json")));
    // certify is seed-deterministic too
    let certify = |report: &str| {
        assert_code(
            &run(
                d,
                &[
                    "certify", "--a", "a.g6", "--b", "b.g6", "--checks", "cospectral",
                    "--seed", "7", "--report", report,
                ],
            ),
            0,
        );
    };
    certify("r1.json");
    certify("r2.json");
    assert_eq!(
        std::fs::read(d.join("r1.json")).unwrap(),
        std::fs::read(d.join("r2.json")).unwrap()
    );
}

#[test]
fn large_gate_requires_flag() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(
        d,
        &["build", "--space", "o", "--n", "7", "--q", "5", "--graph", "polarity", "-o", "big.g6"],
    );
    assert_code(&out, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-large"));
}
