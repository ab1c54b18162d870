use std::process::{Command, Output};

use normone::Permutation;
use normone_cli::parse::{parse_cycles, parse_generators};
use normone_cli::record::{ResultRecord, KEYS};
use proptest::prelude::*;

fn normone(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_normone"));
    cmd.args(args).env_remove("NORMONE_CACHE");
    if let Some(dir) = cache {
        cmd.env("NORMONE_CACHE", dir);
    }
    cmd.output().unwrap()
}

fn records(out: &Output) -> Vec<ResultRecord> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| normone(args, None).status.code();
    assert_eq!(code(&["compute", "A4", "--point-stabilizer", "4"]), Some(0));
    assert_eq!(code(&["compute", "Q8", "--class", "0"]), Some(2));
    assert_eq!(code(&["compute", "A4", "--subgroup", "(1 2 2)"]), Some(2));
    assert_eq!(code(&["compute", "A4", "--subgroup", "(1 2)"]), Some(2));
    assert_eq!(code(&["compute", "A4", "--class", "99"]), Some(2));
    assert_eq!(code(&["compute", "A4"]), Some(2));
    assert_eq!(code(&["compute", "A7", "--point-stabilizer", "7", "--max-rank", "50"]), Some(3));
    assert_eq!(code(&["compute", "S6", "--point-stabilizer", "6", "--max-order", "100"]), Some(3));
}

#[test]
fn documented_examples() {
    let a6 = records(&normone(&["compute", "A6", "--subgroup", "(1 2 3 4 5),(1 4)(5 6)"], None));
    assert_eq!(a6[0].h1, Vec::<String>::new());
    let c5 = records(&normone(&["compute", "C5", "--point-stabilizer", "5"], None));
    assert_eq!(c5[0].h1, Vec::<String>::new());
    assert_eq!(c5[0].j_rank, 4);
    let classes = normone(&["classes", "A4"], None);
    assert_eq!(String::from_utf8_lossy(&classes.stdout).lines().count(), 5);
    let schur = normone(&["verify-schur", "4"], None);
    let v: serde_json::Value = serde_json::from_slice(&schur.stdout).unwrap();
    assert_eq!((v["cover_order"].as_u64(), v["preimage_order"].as_u64(), v["claim"].as_bool()), (Some(48), Some(24), Some(true)));
    let oracle = normone(&["sha-oracle", "C2xC2", "--class", "0"], None);
    assert!(oracle.status.success());
    let v: serde_json::Value = serde_json::from_slice(&oracle.stdout).unwrap();
    assert_eq!(v["sha2_omega"], serde_json::json!(["2"]));
    assert_eq!(v["agree"], serde_json::json!(true));
}

#[test]
fn schema_keys_always_present() {
    let out = normone(&["compute", "S4", "--all-classes"], None);
    assert!(out.status.success());
    let lines: Vec<String> = String::from_utf8_lossy(&out.stdout).lines().map(String::from).collect();
    assert_eq!(lines.len(), 10);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut want = KEYS.to_vec();
        want.sort_unstable();
        let mut keys = keys;
        keys.sort_unstable();
        assert_eq!(keys, want);
    }
}

#[test]
fn cache_hit_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "A4", "--point-stabilizer", "4"];
    let cold = normone(&args, Some(dir.path()));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 2, "{files:?}");
    let warm = normone(&args, Some(dir.path()));
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hit"));
    let (a, b) = (&records(&cold)[0], &records(&warm)[0]);
    assert_eq!(serde_json::to_string(&a.h1).unwrap(), serde_json::to_string(&b.h1).unwrap());
    assert_eq!(a.verdict, b.verdict);

    // a corrupt entry is reported and recomputed
    for f in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(f.unwrap().path(), "{not json").unwrap();
    }
    let flag = dir.path().to_str().unwrap();
    let again = normone(&["compute", "A4", "--point-stabilizer", "4", "--cache-dir", flag], None);
    assert!(again.status.success());
    assert!(String::from_utf8_lossy(&again.stderr).contains("warning"));
    assert_eq!(records(&again)[0].h1, a.h1);
}

#[test]
fn subgroup_list_takes_degree_of_group() {
    let gens = parse_generators("(1 2 3),(4 5)", Some(6)).unwrap();
    assert!(gens.iter().all(|p| p.degree() == 6));
}

fn permutation() -> impl Strategy<Value = Permutation> {
    (1usize..=14).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()).prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn cycle_notation_round_trips(p in permutation()) {
        let text = p.to_string();
        prop_assert_eq!(parse_cycles(&text, Some(p.degree())).unwrap(), p);
    }
}
