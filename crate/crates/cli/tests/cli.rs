use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn minrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_solve_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let report = dir.path().join("r.json");
    let out = minrank(&[
        "gen",
        "--n",
        "5",
        "--p",
        "0.5",
        "--seed",
        "42",
        "--out",
        path(&graph),
    ]);
    assert!(out.status.success());
    let g: Value = serde_json::from_str(&fs::read_to_string(&graph).unwrap()).unwrap();
    assert_eq!(g["n"], 5);
    assert_eq!(g["edges"].as_array().unwrap().len(), 6);

    let out = minrank(&["minrank", path(&graph), "--out", path(&report)]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["status"], "exact");
    assert_eq!(r["minrank"], r["certificate"]["claimed_rank"]);

    let out = minrank(&["verify", path(&report)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["valid"], true);
}

#[test]
fn forged_certificate_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    // the identity has rank 3, not 2
    fs::write(
        &cert,
        r#"{"graph":{"n":3,"edges":[]},"matrix":{"domain":"gf:2","rows":[[1,0,0],[0,1,0],[0,0,1]]},"claimed_rank":2,"field":"gf:2"}"#,
    )
    .unwrap();
    let out = minrank(&["verify", path(&cert)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["valid"], false);
}

#[test]
fn budget_exhaustion_exits_2() {
    let out = minrank(&[
        "minrank", "--n", "12", "--p", "0.8", "--seed", "6", "--budget", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let r = json_of(&out);
    assert_eq!(r["status"], "undecided");
    assert!(r["minrank"].is_null());
    let out = minrank(&["minrank", "--n", "30", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_1() {
    assert_eq!(minrank(&["gen", "--n", "5", "--p", "1.5"]).status.code(), Some(1));
    assert_eq!(
        minrank(&["bounds", "--n", "10", "--p", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(minrank(&["minrank", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(minrank(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        minrank(&["minrank", "--n", "5", "--p", "0.5", "--field", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(minrank(&["--help"]).status.code(), Some(0));
}

#[test]
fn bounds_json_fields() {
    let out = minrank(&["bounds", "--n", "10000", "--p", "0.5"]);
    assert!(out.status.success());
    let v = json_of(&out);
    for key in ["n", "p", "k", "threshold", "log_union_bound", "reference_scale"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["k"], 9);
    assert!((v["threshold"].as_f64().unwrap() - 9.4072).abs() < 1e-3);
    assert!(v["log_union_bound"].as_f64().unwrap() < 0.0);

    let v = json_of(&minrank(&["bounds", "--n", "10", "--p", "0.5", "--k", "5"]));
    assert!((v["log_union_bound"].as_f64().unwrap() - 2282.452328044012).abs() < 1e-6 * 2282.45);
}

#[test]
fn experiment_files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path, threads: &str| {
        minrank(&[
            "experiment",
            "--n-list",
            "6,8",
            "--p-list",
            "0.3,0.7",
            "--trials",
            "3",
            "--seed",
            "11",
            "--threads",
            threads,
            "--out",
            path(out),
        ])
    };
    assert!(args(&a, "1").status.success());
    assert!(args(&b, "4").status.success());
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    assert!(csv.starts_with(
        "n,p,seed,trial,alpha,cc,cc_mode,minrank_lo,minrank_hi,status,theory_lower,reference_scale,ratio\n"
    ));
    assert_eq!(csv.lines().count(), 13);

    let out = minrank(&["experiment", "--n-list", "3", "--p-list", "0", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["schema"], "minrank-report/1");
    assert_eq!(v["rows"][0]["minrank_lo"], 3);
    assert!(v["rows"][0]["theory_lower"].is_null());
}

#[test]
fn pattern_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let polys = dir.path().join("polys.json");
    // x and x + 1 over GF(2)
    fs::write(
        &polys,
        r#"[{"num_vars":1,"terms":[{"exps":[1],"coef":1}]},{"num_vars":1,"terms":[{"exps":[1],"coef":1},{"exps":[0],"coef":1}]}]"#,
    )
    .unwrap();
    let v = json_of(&minrank(&["patterns", "rbg", path(&polys)]));
    assert_eq!(v["count"], 2);
    assert_eq!(v["bound"], "3");
    assert_eq!(v["within_bound"], true);

    let m = dir.path().join("m.json");
    fs::write(&m, r#"{"domain":"gf:2","rows":[[1,0],[0,1]]}"#).unwrap();
    let v = json_of(&minrank(&["patterns", "nks-witness", path(&m)]));
    assert_eq!(v["witness"]["k"], 2);
    assert_eq!(v["witness"]["basis_nonzeros"], 4);

    let out = minrank(&["patterns", "nks-census", "--n", "2"]);
    assert!(out.status.success());
    let entries = json_of(&out);
    let one = entries
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["k"] == 1 && e["s"] == 1)
        .unwrap();
    assert_eq!(one["count"], 4);
    assert_eq!(
        minrank(&["patterns", "nks-census", "--n", "9"]).status.code(),
        Some(2)
    );

    let out = minrank(&["patterns", "lemma22", "--n", "6", "--rank", "3", "--seed", "4"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let size = v["subset"].as_array().unwrap().len() as u64;
    assert!(v["witness"]["k"].as_u64().unwrap() * 6 <= 3 * size);
}

#[test]
fn geom_subcommands() {
    let v = json_of(&minrank(&["geom", "simplex", "--d", "5"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    assert!(v["max_distance_error"].as_f64().unwrap() < 1e-12);

    let out = minrank(&["geom", "unit-distance", "--n", "9", "--p", "0.5", "--seed", "2"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["within_bound"], true);

    let dir = tempfile::tempdir().unwrap();
    let spheres = dir.path().join("s.json");
    fs::write(
        &spheres,
        r#"{"dim":2,"centers":[[0,0],[3,0],[0,4],[1,1]],"radii":[1,2,1.5,0.5]}"#,
    )
    .unwrap();
    let out = minrank(&["geom", "spheres", path(&spheres)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json_of(&out)["rank"].as_u64().unwrap() <= 5);

    // x1 y1 + x2 y2 has no pure-x part, so one coordinate drops
    let poly = dir.path().join("p.json");
    let reps = dir.path().join("reps.json");
    fs::write(
        &poly,
        r#"{"num_vars":4,"terms":[{"exps":[1,0,1,0],"coef":1},{"exps":[0,1,0,1],"coef":1}]}"#,
    )
    .unwrap();
    fs::write(&reps, "[[0,0],[0,1],[1,0],[1,1]]").unwrap();
    let out = minrank(&[
        "geom",
        "pgraph",
        path(&poly),
        "--d",
        "2",
        "--field",
        "2",
        "--reps",
        path(&reps),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["len"], 5);
    assert_eq!(v["matrix"]["domain"], "gf:2");

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"num_vars":2,"terms":[{"exps":[1,0],"coef":1}]}"#).unwrap();
    assert_eq!(
        minrank(&["geom", "pgraph", path(&bad), "--d", "1"]).status.code(),
        Some(1)
    );
}
