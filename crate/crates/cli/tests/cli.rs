use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invforge"))
        .args(args)
        .env_remove("INVFORGE_ALLOW_SLOW")
        .output()
        .expect("spawn invforge")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(&[&["--json"], args].concat());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn golden_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[test]
fn lambda_four_plain_and_json() {
    let o = run(&["compute", "lambda", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "xi1^5+xi2^3+xi1^2*xi3\n");
    let v = json(&["compute", "lambda", "--n", "2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["lambda"], "xi1^5+xi2^3+xi1^2*xi3");
}

#[test]
fn verify_single_identity() {
    let o = run(&["verify", "identity", "--name", "omega-cube", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS omega-cube n=2"));
}

#[test]
fn verify_list_has_every_identity() {
    let out = stdout(&run(&["verify", "--list"]));
    for name in invforge_core::invariants::IDENTITIES {
        assert!(out.lines().any(|l| l.trim() == *name), "{name} missing");
    }
}

#[test]
fn verify_all_defaults_to_small_n() {
    let o = run(&["verify", "identity", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2 * invforge_core::invariants::IDENTITIES.len());
}

#[test]
fn hilbert_orthogonal_n2() {
    let v = json(&["hilbert", "--group", "o-odd", "--n", "2", "--expand", "12"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], 720);
    assert_eq!(v["reflections"], 15);
    let coeffs: Vec<i64> = serde_json::from_value(v["coefficients"].clone()).unwrap();
    assert_eq!(coeffs, [1, 0, 1, 1, 2, 2, 4, 3, 6, 6, 9, 9, 14]);
}

#[test]
fn enumerate_plus_group() {
    let v = json(&["enumerate", "group", "--group", "o-plus", "--n", "2", "--transvections"]);
    assert_eq!(v["result"]["order"], 72);
    assert_eq!(v["result"]["transvections"], 6);
}

#[test]
fn relations_determinant() {
    let v = json(&["compute", "relations", "--n", "2", "--group", "o-plus"]);
    assert_eq!(v["result"]["determinants"]["M"], "xi0^3*xi1+xi1^3+xi0^2*xi2");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["compute", "bogus", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["hilbert", "--group", "o-odd", "--n", "0"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "identity", "--name", "no-such", "--n", "2"]).status.code(), Some(1));
    // gated without the slow flag
    let o = run(&["compute", "omega", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("allow-slow"));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&["--json", "compute", "omega-pm", "--n", "2", "--sign", "+"]));
    let b = stdout(&run(&["--json", "compute", "omega-pm", "--n", "2", "--sign", "+"]));
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

fn copy_tree(from: &Path, to: &Path) {
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let dest = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            std::fs::create_dir_all(&dest).unwrap();
            copy_tree(&entry.path(), &dest);
        } else {
            std::fs::copy(entry.path(), dest).unwrap();
        }
    }
}

#[test]
fn goldens_check_and_corruption() {
    let root = golden_root();
    let o = run(&["goldens", "check", "--root", root.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    copy_tree(&root, dir.path());
    let victim = dir.path().join("omega/n2.txt");
    let text = std::fs::read_to_string(&victim).unwrap();
    std::fs::write(&victim, text.replacen('X', "t", 1)).unwrap();
    let tmp = dir.path().to_str().unwrap();
    let o = run(&["goldens", "check", "--root", tmp]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("MISMATCH omega/n2.txt"));
    assert_eq!(run(&["goldens", "regenerate", "--root", tmp]).status.code(), Some(0));
    assert_eq!(run(&["goldens", "check", "--root", tmp]).status.code(), Some(0));
}
