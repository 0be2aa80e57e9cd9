use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn pdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdm"))
        .args(args)
        .env_remove("PDM_SEED")
        .env_remove("PDM_TOL")
        .env_remove("PDM_JSON")
        .env_remove("PDM_FORMAT")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    pdm(args).status.code().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = pdm(&all);
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn symmetry_checks() {
    assert_eq!(code(&["check-symmetry", &data("so3.ham"), &data("rotation.op")]), 0);
    assert_eq!(code(&["check-symmetry", &data("free.ham"), &data("translation.op")]), 0);
    assert_eq!(code(&["check-symmetry", &data("t13.ham"), &data("t13_boost.op")]), 0);
    assert_eq!(code(&["check-symmetry", &data("so4_roos.ham"), &data("rotation.op")]), 0);
    let r = json(&["check-symmetry", &data("t13.ham"), &data("t13_boost_perturbed.op")]);
    assert_eq!(r["is_symmetry"], false);
    assert_eq!(code(&["check-symmetry", &data("t13.ham"), &data("t13_boost_perturbed.op")]), 1);
}

#[test]
fn flatness() {
    let r = json(&["test-flat", &data("exp.mass")]);
    assert_eq!(r["is_flat"], true);
    assert_eq!(r["family"], "exponential-x1");
    assert_eq!(code(&["test-flat", &data("one.mass")]), 0);
    assert_eq!(code(&["test-flat", &data("so4.mass")]), 1);
    assert_eq!(code(&["test-flat", &data("broken.mass")]), 2);
    assert_eq!(code(&["test-flat", &data("missing.mass")]), 2);
}

#[test]
fn catalog_commands() {
    let list = pdm(&["catalog", "list"]);
    assert!(list.status.success());
    assert!(String::from_utf8_lossy(&list.stdout).lines().count() > 11);
    let r = json(&["catalog", "verify", "--id", "so5"]);
    assert_eq!(r["passed"], true);
    let rels: Vec<String> = r["algebra"][0]["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["relation"].as_str().unwrap().to_string())
        .collect();
    assert!(rels.iter().any(|s| s.starts_with("[Q4, Q5]")), "{rels:?}");
    assert_eq!(code(&["catalog", "verify", "--id", "nope"]), 2);
}

#[test]
fn spectrum_schema() {
    let dir = std::env::temp_dir().join(format!("pdm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    let out = pdm(&["spectrum", "--k", "0", "--rmax", "20", "--n-grid", "1000", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["k"], 0);
    assert_eq!(v["grid"]["N"], 1000);
    assert_eq!(v["grid"]["rmax"], 20.0);
    let first = &v["eigenvalues"][0];
    assert!(first["value"].is_number() && first["error_estimate"].is_number());
    assert_eq!(first["matched_n"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["spectrum", "--n-grid", "ten"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["spectrum", "--n-grid", "10"]), 2);
}

#[test]
fn seed_from_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_pdm"))
        .args(["test-flat", &data("exp.mass"), "--format", "json"])
        .env("PDM_SEED", "5")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(code(&["--seed", "x", "test-flat", &data("exp.mass")]), 2);
}

#[test]
fn verify_all_is_deterministic() {
    let a = pdm(&["verify-all", "--format", "json", "--seed", "7"]);
    let b = pdm(&["verify-all", "--format", "json", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let m: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(m["seed"], 7);
    assert_eq!(m["sections"].as_array().unwrap().len(), 8);
}
