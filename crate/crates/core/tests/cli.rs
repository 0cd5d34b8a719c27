use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hk-lattice")).args(args).env_remove("IHS_NORM_BOUND").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn tsv_rows(id: &str) -> Vec<(u32, u32, u8)> {
    let out = run(&["figure", "--id", id, "--tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r\ta\tdelta"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn lattice_invariants_of_u_and_minus_two() {
    let u = json(&run(&["lattice", "invariants", fixture("u.gram").to_str().unwrap()]));
    assert_eq!(u["signature"], serde_json::json!([1, 1]));
    assert_eq!(u["det"], "-1");
    assert_eq!(u["triple"], serde_json::json!({"r": 2, "a": 0, "delta": 0}));

    let m = json(&run(&["lattice", "invariants", fixture("minus2.gram").to_str().unwrap()]));
    assert_eq!(m["triple"], serde_json::json!({"r": 1, "a": 1, "delta": 1}));
    assert_eq!(m["disc_group"], serde_json::json!(["2"]));
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(run(&["lattice", "invariants", fixture("malformed.gram").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "invariants", "/nonexistent.gram"]).status.code(), Some(2));
    assert_eq!(run(&["figure", "--id", "fig9"]).status.code(), Some(2));
    assert_eq!(run(&["mukai", "dim", "--vector", "2;x;-3"]).status.code(), Some(2));
}

#[test]
fn figures() {
    let k3 = tsv_rows("k3");
    assert_eq!(k3.len(), 75);
    let mut sorted = k3.clone();
    sorted.sort();
    assert_eq!(sorted, k3);

    let ex51 = tsv_rows("ex51");
    let want: Vec<_> = k3.iter().copied().filter(|&(r, a, d)| r >= a + 2 && (r, a, d) != (6, 4, 0)).collect();
    assert_eq!(ex51, want);
    let ex52 = tsv_rows("ex52");
    assert!(!ex52.contains(&(14, 6, 0)));
    assert!(k3.contains(&(14, 6, 0)));

    let report = json(&run(&["figure", "--id", "k3"]));
    assert_eq!(report["count"], 75);
}

#[test]
fn mirror_scenarios() {
    let worked = json(&run(&["mirror", "--scenario", fixture("u2_worked.json").to_str().unwrap()]));
    assert_eq!(worked["period_ok"], true);
    assert_eq!(worked["obstructions"], serde_json::json!([]));
    assert_eq!(worked["sigma_check"]["re"], serde_json::json!(["1/1", "2/1", "1/1", "0/1"]));

    let planted = json(&run(&["mirror", "--scenario", fixture("planted_wall.json").to_str().unwrap()]));
    assert!(!planted["obstructions"].as_array().unwrap().is_empty());

    let impossible = json(&run(&["mirror", "--scenario", fixture("table_indirect_aba.json").to_str().unwrap()]));
    assert_eq!(impossible["table_match"], serde_json::json!({"error": "Impossible"}));
    let row = json(&run(&["involution", "--scenario", fixture("table_direct_aab.json").to_str().unwrap()]));
    assert_eq!(row["mirror_type"], "BAA");
    assert_eq!(row["table_match"], true);
}

#[test]
fn engine_errors_exit_with_three() {
    let dir = tempdir();
    let path = dir.join("non_involution.json");
    let mut sc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("table_direct_bbb.json")).unwrap()).unwrap();
    sc["involution"][0][0] = serde_json::json!(2);
    std::fs::write(&path, sc.to_string()).unwrap();
    let out = run(&["involution", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["kind"], "involution");
}

#[test]
fn norm_bound_precedence() {
    let dir = tempdir();
    let path = dir.join("no_bound.json");
    let mut sc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("planted_wall.json")).unwrap()).unwrap();
    sc.as_object_mut().unwrap().remove("norm_bound");
    std::fs::write(&path, sc.to_string()).unwrap();
    let bin = env!("CARGO_BIN_EXE_hk-lattice");
    let with_env = Command::new(bin)
        .args(["mirror", "--scenario", path.to_str().unwrap()])
        .env("IHS_NORM_BOUND", "6")
        .output()
        .unwrap();
    assert_eq!(json(&with_env)["norm_bound"], 6);
    assert_eq!(json(&run(&["mirror", "--scenario", path.to_str().unwrap()]))["norm_bound"], 20);
    let explicit = Command::new(bin)
        .args(["mirror", "--scenario", fixture("planted_wall.json").to_str().unwrap()])
        .env("IHS_NORM_BOUND", "6")
        .output()
        .unwrap();
    assert_eq!(json(&explicit)["norm_bound"], 4);
    let bad = Command::new(bin)
        .args(["mirror", "--scenario", path.to_str().unwrap()])
        .env("IHS_NORM_BOUND", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn mukai_commands() {
    let dim = json(&run(&["mukai", "dim", "--vector", "2;1;-3", "--picard-gram", "[[-12]]"]));
    assert_eq!(dim["dimension"], 2);
    let fine = json(&run(&["mukai", "fine", "--vector", "2;5;-3", "--picard-gram", "[[-12]]"]));
    assert_eq!(fine["fine"], true);
    let refl = json(&run(&["mukai", "reflexive", "2", "0", "-12"]));
    assert_eq!(refl["accepted"], true);
    assert_eq!(refl["unchecked"].as_array().unwrap().len(), 1);
    let hilb = json(&run(&["mukai", "hilbert", "--n", "3"]));
    assert_eq!(hilb["vector"], "1;;-2");
    assert_eq!(hilb["dimension"], 6);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["figure".to_string(), "--id".into(), "k3sq-minus".into()],
        vec!["mirror".into(), "--scenario".into(), fixture("planted_wall.json").to_string_lossy().into_owned()],
        vec![
            "involution".into(),
            "--scenario".into(),
            fixture("table_indirect_baa.json").to_string_lossy().into_owned(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

fn tempdir() -> PathBuf {
    let dir =
        std::env::temp_dir().join(format!("hk-lattice-cli-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
