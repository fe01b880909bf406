use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn flagflux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagflux"))
        .env_remove("FLAGFLUX_RANK_BOUND")
        .args(args)
        .output()
        .expect("failed to spawn flagflux")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn jobs() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(root().join("jobs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn golden_for(job: &Path) -> PathBuf {
    let stem = job.file_stem().unwrap();
    let json = root().join("golden").join(stem).with_extension("json");
    if json.exists() {
        json
    } else {
        root().join("golden").join(stem).with_extension("txt")
    }
}

#[test]
fn every_job_matches_its_golden_report() {
    let files = jobs();
    assert!(files.len() >= 10);
    for job in files {
        let config: Value = serde_json::from_str(&fs::read_to_string(&job).unwrap()).unwrap();
        let command = config["command"].as_str().unwrap();
        let out = flagflux(&[command, "--config", job.to_str().unwrap()]);
        let expected = fs::read(golden_for(&job)).unwrap();
        assert_eq!(
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&expected),
            "{}",
            job.display()
        );
        let code = out.status.code().unwrap();
        let is_error = String::from_utf8_lossy(&expected).contains("\"error\"");
        assert_eq!(code, if is_error { 1 } else { 0 }, "{}", job.display());
    }
}

#[test]
fn golden_subcommand_passes() {
    let out = flagflux(&["golden"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.lines().last().unwrap().starts_with("golden: "));
    assert!(!text.contains("DIFF"));
}

#[test]
fn maximal_sl3_from_flags() {
    let out = flagflux(&["dualize", "--algebra", "(0,0,-e^{12})", "--ideal", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["H_dual"], "-e^{123}");
    assert_eq!(v["n_dual"], "(0,0,0)");
}

#[test]
fn sl4_a6_has_no_target() {
    let out = flagflux(&["correspond", "--rank", "3", "--ideal", "6", "--rank-bound", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["targets"], Value::Array(vec![]));
    assert!(v["reason"].as_str().unwrap().contains("rank bound 7"));
}

#[test]
fn a1_root_system() {
    let v = json(&flagflux(&["root-system", "--series", "A", "--rank", "1"]));
    assert_eq!(v["positive_roots"], serde_json::json!(["α1"]));
    assert_eq!(v["dim"], 1);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["correspond", "--rank", "3", "--ideal", "4,5,6", "--rank-bound", "7"];
    assert_eq!(flagflux(&args).stdout, flagflux(&args).stdout);
}

#[test]
fn domain_error_exits_one_with_error_object() {
    let out = flagflux(&["dualize", "--rank", "3", "--ideal", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "not_admissible");
    assert_eq!(v["error"]["exit_code"], 1);
}

#[test]
fn parse_errors_exit_two() {
    let bad_flux = flagflux(&["dualize", "--algebra", "(0,0,-e^{12})", "--ideal", "3", "--flux", "e^{12"]);
    assert_eq!(bad_flux.status.code(), Some(2));
    assert_eq!(json(&bad_flux)["error"]["kind"], "parse");

    let missing = flagflux(&["nilradical"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown = flagflux(&["nilradical", "--rank", "x"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn config_file_wins_and_warns() {
    let job = root().join("jobs/sl3_max_correspond.json");
    let out = flagflux(&["correspond", "--rank", "4", "--config", job.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--rank overridden by the config file"));
    assert_eq!(json(&out)["config"]["rank"], 2);
}

#[test]
fn rank_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_flagflux"))
        .env("FLAGFLUX_RANK_BOUND", "5")
        .args(["correspond", "--rank", "2", "--ideal", "3"])
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["config"]["rank_bound"], 5);
    assert_eq!(v["targets"][0]["name"], "SU(4)/S(U(3)×U(1)) ≅ CP^3");
}

#[test]
fn text_format_prints_tuples_verbatim() {
    let out = flagflux(&["nilradical", "--rank", "3", "--format", "text"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("n: (0,0,0,-e^{12},-e^{23},-e^{15}+e^{34})"), "{text}");
}

#[test]
fn gcs_transport_flags_mixed_types_on_cp3() {
    let blocks = r#"{"α1":{"kind":"noncomplex","a":"0","x":"1","y":"1"},"α2":{"kind":"complex"},"α1+α2":{"kind":"complex"}}"#;
    let out = flagflux(&["gcs-transport", "--rank", "2", "--ideal", "3", "--rank-bound", "3", "--blocks", blocks]);
    let v = json(&out);
    assert_eq!(v["source"]["integrability"]["passes"], true);
    assert_eq!(v["targets"][0]["integrability"]["passes"], false);

    let short = r#"{"α1":{"kind":"complex"}}"#;
    let out = flagflux(&["gcs-transport", "--rank", "2", "--ideal", "3", "--blocks", short]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "missing_block");
}
