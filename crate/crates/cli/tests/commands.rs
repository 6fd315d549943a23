use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn counterexample_ends_with_the_verdict() {
    let o = run(&["counterexample", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("pushout-product axiom: FAILS for ⊗ and ⊗̄"));
}

#[test]
fn resolution_complex_is_exact() {
    let o = run(&["homology", &data("resolution.json")]);
    let text = stdout(&o);
    for d in -1..=1 {
        assert!(text.contains(&format!("H_{d} = 0")), "{text}");
    }
    assert_eq!(run(&["exact", &data("resolution.json")]).status.code(), Some(0));
    assert_eq!(run(&["exact", &data("sphere_z2.json")]).status.code(), Some(1));
}

#[test]
fn validate_names_the_bad_degree() {
    let o = run(&["validate", &data("not_a_complex.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("degree 2"));
    assert_eq!(run(&["validate", &data("resolution.json")]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["homology", &data("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["membership", &data("sphere_z2.json"), "--n", "1"]).status.code(), Some(1));
    // zig-zag needs a member of the class
    let o = run(&["zigzag", &data("resolution.json"), "--element", "top", "--budget", "3", "--n", "0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["zigzag", &data("resolution.json"), "--element", "middle", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["oracle-ext", &data("z2_over_z4.json"), &data("z2_over_z4.json"), "--cap", "3"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--output", "json", "zigzag", &data("resolution.json"), "--element", "top", "--budget", "2", "--audit"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["checks"]["sub_in_class"], true);
    assert!(v["report"]["history"].as_array().is_some_and(|h| !h.is_empty()));
    assert!(v["report"]["selected_bases"].is_array());
}

#[test]
fn oracle_and_ext_agree_on_files() {
    let o = run(&["oracle-ext", &data("z2_over_z4.json"), &data("z2_over_z4.json")]);
    assert!(stdout(&o).contains("extension classes: 2"));
    let o = run(&["ext1", &data("z2_over_z4.json"), &data("z2_over_z4.json")]);
    assert!(stdout(&o).contains("Ext^1 = Z/2"));
    let o = run(&["oracle-ext", &data("z2_over_z6.json"), &data("z3_over_z6.json")]);
    assert!(stdout(&o).contains("extension classes: 1"));
}
