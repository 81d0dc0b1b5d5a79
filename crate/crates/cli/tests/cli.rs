use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "specs", name].iter().collect();
    p.display().to_string()
}

fn zhu_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zhu-lab"))
        .args(args)
        .arg("--no-cache")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

#[test]
fn zhu_virasoro_level_one_relation() {
    let o = zhu_lab(&["zhu", "--preset", "virasoro", "--c", "1", "--level", "1", "--cutoff", "12", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], "zhu-lab/report/1");
    assert_eq!(v["report"]["weight_cutoff"], 12);
    assert_eq!(v["report"]["stabilized"], true);
    let rel = &v["report"]["presentation"]["relations"][0];
    assert_eq!(rel["polynomial"], "(y - x^2 - 2x)*(y - x^2 - 6x + 4)");
    assert_eq!(rel["certified"], true);
}

#[test]
fn zhu_at_cutoff_ten_is_flagged_unstable() {
    let args = ["zhu", "--preset", "virasoro", "--c", "1", "--level", "1", "--cutoff", "10", "--format", "json"];
    let o = zhu_lab(&args);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["report"]["relations_certified"], false);
    assert!(v["status"]["unstable"].as_str().unwrap().contains("raise --cutoff"));
    assert!(stderr(&o).contains("raise --cutoff"));

    let mut allowed = args.to_vec();
    allowed.push("--allow-unstable");
    assert_eq!(code(&zhu_lab(&allowed)), 0);
}

#[test]
fn zhu_heisenberg_level_zero() {
    let o = zhu_lab(&["zhu", "--preset", "heisenberg", "--a", "0", "--level", "0", "--cutoff", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relation p0: (y - x^2) = 0 certified"), "{}", stdout(&o));
}

#[test]
fn invalid_rational_is_a_usage_error() {
    let o = zhu_lab(&["zhu", "--preset", "virasoro", "--c", "1.5x"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("1.5x"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["zhu"][..],
        &["zhu", "--preset", "virasoro", "--a", "0"],
        &["zhu", "--preset", "heisenberg"],
        &["zhu", "--preset", "virasoro", "--c", "1", "--cutoff", "0"],
        &["zhu", "--preset", "virasoro", "--c", "1", "--level", "2", "--cutoff", "3"],
        &["induce"],
        &["gdim", "--preset", "virasoro", "--c", "1"],
        &["frobnicate"],
    ] {
        let o = zhu_lab(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn induce_factoring_family_fails_with_named_submodule() {
    let o = zhu_lab(&["induce", "--spec", &spec("virasoro_factoring_k1.json"), "--max-degree", "4"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("roundtrip FAILS; factoring submodule dim 1"), "{out}");
    assert!(out.contains("  1: dim 2 1:[2]\n"), "{out}");
}

#[test]
fn induce_json_carries_jordan_data_and_window() {
    let o = zhu_lab(&["induce", "--spec", &spec("virasoro_factoring_k1.json"), "--max-degree", "4", "--format", "json"]);
    let v = json(&o);
    let r = &v["report"];
    assert_eq!(r["max_degree"], 4);
    assert_eq!(r["classification"]["kind"], "has-factoring-submodule");
    assert_eq!(r["jordan"][1]["jordan"]["blocks"][0]["sizes"], serde_json::json!([2]));
    assert_eq!(r["jordan"][1]["jordan"]["blocks"][0]["eigenvalue"], "1/1");
    assert_eq!(r["roundtrip"]["omega_stabilized"], true);
    assert_eq!(v["status"]["negative"], "roundtrip FAILS; factoring submodule dim 1");
}

#[test]
fn induce_heisenberg_level_one_holds() {
    let o = zhu_lab(&["induce", "--spec", &spec("heisenberg_u1_k2.json"), "--max-degree", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("roundtrip HOLDS"));
}

#[test]
fn induce_at_default_degree_cutoff_resolves_every_jordan_structure() {
    // degree 6 has dim 22 with a single eigenvalue of multiplicity 22
    let o = zhu_lab(&["induce", "--spec", &spec("heisenberg_u1_k2.json"), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &json(&o)["report"];
    assert_eq!(r["max_degree"], 6);
    assert_eq!(r["jordan"][6]["dim"], 22);
    assert_eq!(r["jordan"][6]["jordan"]["blocks"][0]["eigenvalue"], "6/1");
}

#[test]
fn noncommuting_spec_names_the_invariant() {
    let o = zhu_lab(&["induce", "--spec", &spec("noncommuting.json")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("XY = YX"), "{}", stderr(&o));
}

#[test]
fn roundtrip_reads_toml_specs() {
    let o = zhu_lab(&["roundtrip", "--spec", &spec("virasoro_level0_h1.toml"), "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("degree,induced_dim,quotient_dim,omega_n_dim,omega_0_dim"));
    let dims: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(dims, ["1", "1", "2", "2", "4", "5", "8"]);
}

#[test]
fn gdim_heisenberg_matches_k_partitions() {
    let o = zhu_lab(&[
        "gdim", "--preset", "heisenberg", "--a", "0", "--lambda", "0", "--k", "3", "--max-degree", "8", "--compare", "3",
        "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let r = &json(&o)["report"];
    let want: Vec<String> = [1, 1, 2, 3, 5, 7, 11, 15, 22].iter().map(|p| format!("{}/1", 3 * p)).collect();
    assert_eq!(r["coefficients"], serde_json::json!(want));
    assert_eq!(r["comparison"]["matches"], true);
    assert_eq!(r["leading_exponent"], "-1/24");
}

#[test]
fn gdim_comparison_mismatch_is_a_negative_verdict() {
    let o = zhu_lab(&["gdim", "--preset", "heisenberg", "--a", "0", "--k", "2", "--max-degree", "4", "--compare", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("matches: false"));
}

#[test]
fn gdim_verma_and_degree_zero() {
    let o = zhu_lab(&["gdim", "--preset", "virasoro", "--c", "1", "--h", "0", "--max-degree", "5", "--format", "csv"]);
    assert_eq!(stdout(&o), "degree,coefficient\n0,1/1\n1,1/1\n2,2/1\n3,3/1\n4,5/1\n5,7/1\n");
    let o = zhu_lab(&["gdim", "--preset", "virasoro", "--c", "1", "--h", "0", "--max-degree", "0", "--format", "json"]);
    assert_eq!(json(&o)["report"]["coefficients"], serde_json::json!(["1/1"]));
}

#[test]
fn omega_reports_dims_and_flags() {
    let o = zhu_lab(&["omega", "--preset", "virasoro", "--c", "3", "--h", "0", "--level", "1", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &json(&o)["report"];
    assert_eq!(r["omega"]["stabilized"], true);
    assert_eq!(r["degree_bound"]["holds"], true);
    assert_eq!(r["omega"]["dims"][0], 1);
    assert!(r["omega_lower"]["dims"].is_array());
}

#[test]
fn zhu_has_no_csv_form() {
    let o = zhu_lab(&["zhu", "--preset", "heisenberg", "--a", "0", "--format", "csv"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "preset = \"virasoro\"\nc = \"1/2\"\nh = \"0\"\nmax-degree = 3\nformat = \"csv\"\n").unwrap();
    let cfg = cfg.display().to_string();
    let o = zhu_lab(&["gdim", "--config", &cfg]);
    assert_eq!(stdout(&o), "degree,coefficient\n0,1/1\n1,1/1\n2,2/1\n3,3/1\n");
    let o = zhu_lab(&["gdim", "--config", &cfg, "--max-degree", "1"]);
    assert_eq!(stdout(&o), "degree,coefficient\n0,1/1\n1,1/1\n");

    std::fs::write(dir.path().join("bad.toml"), "cutof = 3\n").unwrap();
    let o = zhu_lab(&["gdim", "--config", &dir.path().join("bad.toml").display().to_string()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cutof"));
}

#[test]
fn reruns_are_byte_identical_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["zhu", "--preset", "virasoro", "--c", "1/2", "--level", "1", "--cutoff", "12", "--format", "json"];
    let run = |cached: bool| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_zhu-lab"));
        c.args(args);
        if cached {
            c.env("ZHU_LAB_CACHE_DIR", dir.path());
        } else {
            c.arg("--no-cache");
        }
        c.output().unwrap().stdout
    };
    let fresh = run(false);
    let miss = run(true);
    let hit = run(true);
    assert_eq!(fresh, miss);
    assert_eq!(miss, hit);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn selfcheck_passes() {
    let o = zhu_lab(&["selfcheck"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("7 passed, 0 failed\n"));
}
