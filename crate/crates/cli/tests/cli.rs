use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hadakern"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    child.wait_with_output().expect("finishes")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn one_based(v: &Value) -> Vec<Vec<u64>> {
    serde_json::from_value(v.clone()).expect("partition")
}

#[test]
fn analyze_worked_example_under_fourth_roots() {
    let out = run(&["analyze", "example5x5", "--group", "roots:4"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(one_based(&r["pi_min"]), vec![vec![1, 2, 4, 5], vec![3]]);
    assert_eq!(one_based(&r["pi_stratum"]), vec![vec![1, 2, 4, 5], vec![3]]);
    assert_eq!(r["pmp_order"], 5);
}

#[test]
fn analyze_identity_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id.json");
    std::fs::write(&path, r#"{"n": 3, "domain": "rational", "entries": [[1,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let out = run(&["analyze", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(one_based(&r["pi_min"]), vec![vec![1], vec![2], vec![3]]);
    assert_eq!(r["simultaneous_kernel"]["dim"], 0);
}

#[test]
fn analyze_flags_hns_inapplicable() {
    let out = run(&["analyze", "hns-fail-3x3"], None);
    let r = &json_lines(&out)[0];
    assert_eq!(r["pmp_order"], 2);
    assert_eq!(r["hns"]["applicable"], false);
}

#[test]
fn verify_toeplitz_reports_expected_inequality() {
    let out = run(&["verify", "T8"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let lines = json_lines(&out);
    let t3 = lines.iter().find(|l| l["check"] == "t3pmp").unwrap();
    assert_eq!(t3["status"], "pass");
    assert!(t3["note"].as_str().unwrap().contains("expected inequality"));
}

#[test]
fn verify_small_corpus() {
    let out = run(&["verify", "--corpus", "1..3"], None);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["matrices"].as_u64().unwrap() as usize, lines.len() - 1);
    // Deterministic aggregation order.
    assert_eq!(out.stdout, run(&["verify", "--corpus", "1..3"], None).stdout);
}

#[test]
fn invalid_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 2, "domain": "rational", "entries": [["1","2"],["3","1"]]}"#).unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()], None).status.code(), Some(2));
    assert_eq!(run(&["analyze"], Some("{not json")).status.code(), Some(2));
    assert_eq!(run(&["analyze", "no-such-file"], None).status.code(), Some(2));
    assert_eq!(run(&["partition", "example5x5", "--group", "sphere"], None).status.code(), Some(2));
    assert_eq!(run(&["pmp", "example5x5"], None).status.code(), Some(2));
}

#[test]
fn property_violations_exit_one() {
    let out = run(&["pmp", "hns-fail-3x3", "--k", "3"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["witness"], serde_json::json!([1, 2, 3]));
    assert_eq!(run(&["hns", "hns-fail-3x3"], None).status.code(), Some(1));
    assert_eq!(run(&["pmp", "hns-fail-3x3", "--k", "2"], None).status.code(), Some(0));
}

#[test]
fn generate_round_trips_through_stdin() {
    let out = run(&["generate", "toeplitz", "--params", "n=5"], None);
    assert_eq!(out.status.code(), Some(0));
    let g = &json_lines(&out)[0];
    let matrix = g["matrix"].to_string();
    let k = run(&["kernel", "--simultaneous"], Some(&matrix));
    assert_eq!(k.status.code(), Some(0));
    let basis = &json_lines(&k)[0]["basis"];
    assert_eq!(basis, &serde_json::json!([["-1", "1", "0", "-1", "1"]]));
}

#[test]
fn generate_signature_and_seeded_families() {
    let out = run(&["generate", "signature", "--params", "n=4,k=2,n_plus=2,n_minus=1"], None);
    assert_eq!(out.status.code(), Some(0));
    let g = &json_lines(&out)[0];
    assert!(g["certificate"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let a = run(&["generate", "random-psd", "--params", "n=4,r=2", "--seed", "9"], None);
    let b = run(&["generate", "random-psd", "--params", "n=4,r=2", "--seed", "9"], None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["generate", "signature", "--params", "n=4,k=3,n_plus=2,n_minus=1"], None).status.code(), Some(2));
}

#[test]
fn rectangular_kernel_over_gf5() {
    let out = run(&["kernel", "--rectangular", "--domain", "gf", "--modulus", "5"], Some("1,1,2,2\n1,2,1,2\n"));
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["kernel"]["dim"], 1);
    assert_eq!(r["block_kernel_exact"], false);
}

#[test]
fn partition_with_cyclic_group() {
    let out = run(&["partition", "pow2-psd", "--group", "cyclic:2"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(one_based(&r["pi_min"]), vec![vec![1, 2], vec![3]]);
    assert_eq!(one_based(&r["pi_stratum"]), vec![vec![1], vec![2], vec![3]]);
}

#[test]
fn out_file_and_table_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = run(&["pmp", "T5", "--order", "--format", "table", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("pmp_order") && l.ends_with('2')));
}

#[test]
fn kernel_modes() {
    let ones = r#"{"n": 3, "domain": "rational", "entries": [[1,1,1],[1,1,1],[1,1,1]]}"#;
    let out = run(&["kernel", "--combination", "1,2,3"], Some(ones));
    assert_eq!(json_lines(&out)[0]["dim"], 2);
    let out = run(&["kernel", "--block-ones", "--partition", "1,2|3"], Some(ones));
    assert_eq!(json_lines(&out)[0]["kernel"]["dim"], 1);
    let out = run(&["kernel", "--t3pmp"], Some(ones));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["kernel", "--combination", "1,-2,3"], Some(ones)).status.code(), Some(2));
    let out = run(&["kernel", "--distinct-diagonal", "--domain", "gf", "--modulus", "7"], Some("1,2\n2,3\n"));
    assert_eq!(json_lines(&out)[0]["hypothesis"], true);
}

#[test]
fn float_domain_analysis() {
    let out = run(&["pmp", "example5x5", "--order", "--domain", "float", "--tolerance", "1e-9"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["pmp_order"], 5);
}
