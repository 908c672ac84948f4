use std::path::PathBuf;
use std::process::Command;

use dmod::cli::{render, run, Cmd, Format, RunConfig};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn with_inputs(cmd: Cmd, files: &[&str]) -> RunConfig {
    let mut cfg = RunConfig::new(cmd);
    cfg.inputs = files.iter().map(|f| data(f)).collect();
    cfg
}

#[test]
fn dictionary_files() {
    let ok = run(&with_inputs(Cmd::Dictionary, &["connection_trivial.json", "connection_log.json"]));
    assert_eq!(ok.code, 0, "{}", ok.report);
    let bad = run(&with_inputs(Cmd::Dictionary, &["connection_corrupted.json"]));
    assert_eq!(bad.code, 1);
    let failures = bad.report["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert!(failures[0].as_str().unwrap().contains("F_xy nonzero"));
}

#[test]
fn dictionary_suite_passes() {
    let out = run(&RunConfig::new(Cmd::Dictionary));
    assert_eq!(out.code, 0);
    assert_eq!(out.report["instances"].as_array().unwrap().len(), 100);
}

#[test]
fn pullback_files_and_suite() {
    let sq = run(&with_inputs(Cmd::Pullback, &["map_square.json", "connection_y.json"]));
    assert_eq!(sq.code, 0);
    let m = &sq.report["instances"][0]["report"]["matrices"][0];
    assert_eq!(m[0], "x");
    assert_eq!(m[1][0][0], "6/x");
    let id = run(&with_inputs(Cmd::Pullback, &["map_identity.json", "connection_y.json"]));
    assert_eq!(id.code, 0);
    // odd number of files
    assert_eq!(run(&with_inputs(Cmd::Pullback, &["map_square.json"])).code, 2);
    // connection on the wrong ring
    assert_eq!(run(&with_inputs(Cmd::Pullback, &["map_square.json", "connection_log.json"])).code, 2);
    assert_eq!(run(&RunConfig::new(Cmd::Pullback)).code, 0);
}

#[test]
fn gaussmanin_corpus_files() {
    let q = run(&with_inputs(Cmd::Gaussmanin, &["family_quadratic.json"]));
    assert_eq!(q.code, 0);
    assert_eq!(q.report["gm_matrix"], serde_json::json!([["-1/(2*lam)"]]));
    assert_eq!(q.report["routes_agree"], true);
    assert_eq!(q.report["picard_fuchs"], serde_json::json!(["d_lam + 1/(2*lam)"]));
    let keys: Vec<&String> = q.report.as_object().unwrap().keys().take(4).collect();
    assert_eq!(keys, ["basis", "gm_matrix", "routes_agree", "picard_fuchs"]);

    let c = run(&with_inputs(Cmd::Gaussmanin, &["family_cubic.json"]));
    assert_eq!(c.report["gm_matrix"], serde_json::json!([["-2/(3*lam)", "0"], ["0", "-1/(3*lam)"]]));

    let e = run(&with_inputs(Cmd::Gaussmanin, &["family_empty.json"]));
    assert_eq!(e.code, 0);
    assert_eq!(e.report["gm_matrix"], serde_json::json!([]));

    let l = run(&with_inputs(Cmd::Gaussmanin, &["family_linear.json"]));
    assert_eq!(l.report["gm_matrix"], serde_json::json!([["0"]]));

    let t = run(&with_inputs(Cmd::Gaussmanin, &["family_twisted.json"]));
    assert_eq!(t.report["gm_matrix"], serde_json::json!([["1"]]));
}

#[test]
fn gaussmanin_error_codes() {
    let bad = run(&with_inputs(Cmd::Gaussmanin, &["family_not_integrable.json"]));
    assert_eq!(bad.code, 2);
    assert!(bad.report["families"][0]["error"].as_str().unwrap().contains("not integrable"));
    let stuck = run(&with_inputs(Cmd::Gaussmanin, &["family_resonant.json"]));
    assert_eq!(stuck.code, 3);
    assert!(stuck.report["families"][0]["error"].as_str().unwrap().contains("resonance"));
    let missing = run(&with_inputs(Cmd::Gaussmanin, &["no_such_family.json"]));
    assert_eq!(missing.code, 2);
}

#[test]
fn caps_are_enforced() {
    let mut cfg = RunConfig::new(Cmd::Homalg);
    cfg.degree_cap = Some(13);
    assert_eq!(run(&cfg).code, 2);
    cfg.degree_cap = Some(0);
    assert_eq!(run(&cfg).code, 2);
    cfg.degree_cap = None;
    cfg.order_cap = 5;
    assert_eq!(run(&cfg).code, 2);
}

#[test]
fn homalg_small_caps() {
    let mut cfg = RunConfig::new(Cmd::Homalg);
    cfg.degree_cap = Some(4);
    cfg.order_cap = 1;
    let out = run(&cfg);
    assert_eq!(out.code, 0, "{}", out.report);
    assert!(out.report["report"]["scope"].as_str().unwrap().contains("truncation"));
}

#[test]
fn reports_are_deterministic() {
    let mut a = RunConfig::new(Cmd::Dictionary);
    a.seed = 11;
    let mut b = a.clone();
    b.jobs = 4;
    let (ra, rb) = (run(&a), run(&b));
    // config embeds jobs; everything else must match byte for byte
    assert_eq!(render(&ra.report["instances"], Format::Json), render(&rb.report["instances"], Format::Json));
    assert_eq!(render(&ra.report, Format::Text), render(&run(&a).report, Format::Text));
    let mut c = a.clone();
    c.seed = 12;
    assert_ne!(render(&ra.report, Format::Json), render(&run(&c).report, Format::Json));
}

#[test]
fn text_mirrors_json_order() {
    let q = run(&with_inputs(Cmd::Gaussmanin, &["family_quadratic.json"]));
    let text = render(&q.report, Format::Text);
    let lines: Vec<&str> = text.lines().take(5).collect();
    assert_eq!(lines[0], "basis: [dx/(x^2 - lam)]");
    assert_eq!(lines[1], "gm_matrix:");
    assert_eq!(lines[2], "  - [-1/(2*lam)]");
    assert_eq!(lines[3], "routes_agree: true");
    assert_eq!(lines[4], "picard_fuchs: [d_lam + 1/(2*lam)]");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dmod");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    let f = |n: &str| data(n).display().to_string();
    assert_eq!(status(&["gaussmanin", "--input", &f("family_quadratic.json"), "--format", "text"]), 0);
    assert_eq!(status(&["dictionary", "--input", &f("connection_corrupted.json")]), 1);
    assert_eq!(status(&["homalg", "--degree-cap", "20"]), 2);
    assert_eq!(status(&["gaussmanin", "--input", &f("family_resonant.json")]), 3);
    assert_eq!(status(&["no-such-command"]), 2);
}
