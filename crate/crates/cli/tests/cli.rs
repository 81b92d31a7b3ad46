use std::path::Path;
use std::process::{Command, Output};

fn tfzero(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfzero"))
        .args(args)
        .current_dir(dir)
        .env_remove("TFZERO_THREADS")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reproduce_passes_and_writes_a_verdict() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["ex3_2", "sec4_hurwitz"] {
        let out = tfzero(&["reproduce", id, "--out-dir", "art"], dir.path());
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        let v = json(&dir.path().join(format!("art/{id}.json")));
        assert_eq!(v["pass"], true);
        assert!(v["claims"].as_array().unwrap().iter().all(|c| c["pass"] == true));
        assert!(dir.path().join(format!("art/{id}.json.log")).exists());
    }
}

#[test]
fn unknown_example_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfzero(&["reproduce", "bogus_id"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_grid_names_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfzero(&["scan", "--pair", "gauss", "--grid", "0,1,5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--grid"));
}

#[test]
fn unknown_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tfzero(&["hurwitz", "--An", "3", "--frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(tfzero(&["hurwitz"], dir.path()).status.code(), Some(2));
}

#[test]
fn config_round_trips_through_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = tfzero(
        &["--print-config", "eval", "--pair", "one_sided", "--params", r#"{"a":1.5,"b":0.5}"#, "--point", "0.5,-1"],
        dir.path(),
    );
    assert_eq!(first.status.code(), Some(0));
    std::fs::write(dir.path().join("cfg.json"), &first.stdout).unwrap();
    let second = tfzero(&["--print-config", "run", "cfg.json"], dir.path());
    assert_eq!(first.stdout, second.stdout);

    let run = tfzero(&["run", "cfg.json"], dir.path());
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.starts_with("x,xi,re,im,modulus\n"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn thread_count_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        let mut args = extra.to_vec();
        args.extend(["--print-config", "hurwitz", "--An", "4"]);
        let out = Command::new(env!("CARGO_BIN_EXE_tfzero"))
            .args(&args)
            .current_dir(dir.path())
            .env("TFZERO_THREADS", "3")
            .output()
            .unwrap();
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap()["parallelism"].as_u64().unwrap()
    };
    assert_eq!(run(&[]), 3);
    assert_eq!(run(&["--threads", "5"]), 5);
}

#[test]
fn scan_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["scan", "--pair", "gumbel", "--grid", "-2,2,41,-2,2,41", "--out", "r.json", "--heatmap", "h.pgm"];
    assert_eq!(tfzero(&args, dir.path()).status.code(), Some(0));
    let a = std::fs::read(dir.path().join("r.json")).unwrap();
    let ha = std::fs::read(dir.path().join("h.pgm")).unwrap();
    let single: Vec<&str> = ["--threads", "1"].into_iter().chain(args).collect();
    assert_eq!(tfzero(&single, dir.path()).status.code(), Some(0));
    assert_eq!(a, std::fs::read(dir.path().join("r.json")).unwrap());
    assert_eq!(ha, std::fs::read(dir.path().join("h.pgm")).unwrap());
    assert!(ha.starts_with(b"P5\n41 41\n255\n"));
    assert_eq!(ha.len(), b"P5\n41 41\n255\n".len() + 41 * 41);
    assert!(!String::from_utf8(a).unwrap().contains("unix"));
}

#[test]
fn scan_accepts_an_oracle_target() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"transform": "wigner", "f": {"family": "one_sided_exp", "a": 1.0}, "g": {"family": "gaussian", "a": [1.0, 0.0]}}"#;
    std::fs::write(dir.path().join("pair.json"), spec).unwrap();
    let out = tfzero(&["scan", "--spec", "pair.json", "--grid", "-1,1,5,-1,1,5", "--out", "r.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&dir.path().join("r.json"));
    assert_eq!(v["target"]["transform"], "wigner");
    assert!(v["report"]["min_modulus"].as_f64().is_some());

    std::fs::write(dir.path().join("bad.json"), r#"{"formula": "gauss", "a": [-1, 0], "b": [1, 0]}"#).unwrap();
    assert_eq!(tfzero(&["scan", "--spec", "bad.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn hurwitz_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfzero(&["hurwitz", "--An", "5"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["is_hurwitz"], true);
    assert_eq!(v["polynomial"]["coeffs"][0], "120");
    assert_eq!(v["polynomial"]["coeffs"][5], "3628800");
    let out = tfzero(&["hurwitz", "--coeffs", "1,0,-1"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["is_hurwitz"], false);
}

#[test]
fn eval_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfzero(&["eval", "--pair", "sym_exp", "--grid", "-1,1,3,-1,1,2", "--out", "k.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("k.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,xi,re,im,modulus"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn polyb_and_stepfn() {
    let dir = tempfile::tempdir().unwrap();
    let out = tfzero(&["polyb", "--P", "1,0.5i", "--Q", "-0.2,1", "--scan"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["deg_z"], 1);
    assert_eq!(v["deg_conj"], 1);
    assert!(!v["report"]["zeros"].as_array().unwrap().is_empty());

    let out = tfzero(&["stepfn", "--mode", "lp", "--grid", "0,1,21,-2,2,21"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v["report"]["zeros"].as_array().unwrap().is_empty());

    let out = tfzero(&["stepfn", "--mode", "monotone", "--alpha", "1/2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
