//! End-to-end tests of the `sds` binary, covering the documented command
//! examples and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sds(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sds"));
    cmd.args(args);
    cmd.env_remove("SDS_CATALOG");
    cmd
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = sds(args).output().expect("binary runs");
    collect(out)
}

fn run_stdin(args: &[&str], input: &str) -> (i32, String, String) {
    let mut child = sds(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().expect("binary finishes");
    collect(out)
}

fn collect(out: Output) -> (i32, String, String) {
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn feasible_examples() {
    let (code, stdout, _) = run(&["feasible", "19", "13", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("s=7"), "{stdout}");
    assert!(stdout.contains("|P|=10"), "{stdout}");
    assert!(stdout.contains("|N|=3"), "{stdout}");

    let (code, stdout, _) = run(&["feasible", "20", "11", "3"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("not a perfect square"), "{stdout}");
    assert!(stdout.contains("68"), "{stdout}");

    let (code, stdout, _) = run(&["feasible", "7", "6", "-1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("s=0"), "{stdout}");
    assert!(stdout.contains("|P|=3"), "{stdout}");
    assert!(stdout.contains("|N|=3"), "{stdout}");
}

#[test]
fn construct_then_verify_pipes() {
    let (code, set_json, _) = run(&["construct", "quartic", "--v", "29"]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run_stdin(&["verify", "-"], &set_json);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("ok"), "{stdout}");
}

#[test]
fn autocorr_rejects_noncyclic() {
    let (code, set_json, _) = run(&["construct", "noncyclic-18-13-4"]);
    assert_eq!(code, 0);
    let (code, _, stderr) = run_stdin(&["autocorr", "-"], &set_json);
    assert_eq!(code, 1, "{stderr}");
    assert!(stderr.contains("not cyclic"), "{stderr}");
}

#[test]
fn autocorr_prints_two_level_sequence() {
    let (code, set_json, _) = run(&["construct", "qr", "--v", "7"]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run_stdin(&["autocorr", "-"], &set_json);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "6 -1 -1 -1 -1 -1 -1");
}

#[test]
fn construct_wire_format_and_families() {
    let (code, stdout, _) = run(&["construct", "qr", "--v", "7"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["group"], serde_json::json!([7]));
    assert_eq!(value["lambda"], serde_json::json!(-1));
    assert_eq!(value["P"], serde_json::json!([[1], [2], [4]]));
    assert_eq!(value["N"], serde_json::json!([[3], [5], [6]]));

    let (code, stdout, _) = run(&["construct", "complement", "--q", "7"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["lambda"], serde_json::json!(-1));
    assert_eq!(value["P"].as_array().unwrap().len(), 4);

    let (code, _, stderr) = run(&["construct", "quartic", "--v", "30"]);
    assert_eq!(code, 1, "{stderr}");

    let (code, _, stderr) = run(&["construct", "unknown-family"]);
    assert_eq!(code, 2, "{stderr}");

    // prime-pair emits a noncyclic group literal
    let (code, stdout, _) = run(&["construct", "prime-pair", "--m", "3"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["group"], serde_json::json!([3, 3, 3]));
}

#[test]
fn verify_detects_bad_sets_and_bad_json() {
    // a wrong lambda fails verification with exit 1
    let bad_lambda = r#"{"group":[7],"lambda":0,"P":[[1],[2],[4]],"N":[[3],[5],[6]]}"#;
    let (code, stdout, _) = run_stdin(&["verify", "-"], bad_lambda);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL"), "{stdout}");

    // malformed JSON is a usage error with exit 2
    let (code, _, stderr) = run_stdin(&["verify", "-"], "{broken");
    assert_eq!(code, 2, "{stderr}");

    // overlapping P and N is invariant-violating input: exit 2 with location
    let overlap = r#"{"group":[7],"lambda":0,"P":[[1]],"N":[[1]]}"#;
    let (code, _, stderr) = run_stdin(&["verify", "-"], overlap);
    assert_eq!(code, 2);
    assert!(stderr.contains("overlap"), "{stderr}");
}

#[test]
fn search_exit_codes() {
    let (code, stdout, _) = run(&["search", "--group", "7", "--k", "6", "--lambda", "-1"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("status=exhaustive"), "{stdout}");
    assert!(stdout.contains("found=1"), "{stdout}");

    // infeasible parameters exit 1
    let (code, stdout, _) = run(&["search", "--group", "20", "--k", "11", "--lambda", "3"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("infeasible"), "{stdout}");

    // a tiny node budget exits 3 with a frontier
    let (code, stdout, _) = run(&[
        "search",
        "--group",
        "19",
        "--k",
        "13",
        "--lambda",
        "2",
        "--max-nodes",
        "3",
    ]);
    assert_eq!(code, 3, "{stdout}");
    assert!(stdout.contains("status=partial"), "{stdout}");

    // exhaustively empty parameter sets exit 1: (13,13,-1) needs s=1, k=v,
    // which is the all-signed shape with one sign flipped, only possible for
    // lambda = v-4 = 9, so nothing exists at lambda=-1... but (13,13,-1) has
    // s^2 = -12+13 = 1, feasible arithmetic; the search proves emptiness.
    let (code, stdout, _) = run(&["search", "--group", "13", "--k", "13", "--lambda", "-1"]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("status=exhaustive"), "{stdout}");
    assert!(stdout.contains("found=0"), "{stdout}");
}

#[test]
fn search_json_reports_sets() {
    let (code, stdout, _) = run(&[
        "--json", "search", "--group", "19", "--k", "13", "--lambda", "2",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["status"], "exhaustive");
    assert_eq!(value["multiplier"], 7);
    assert!(!value["sets"].as_array().unwrap().is_empty());
    assert_eq!(value["params"]["p_size"], 10);
}

#[test]
fn scan_residues_exit_codes() {
    let (code, stdout, _) = run(&["scan-residues", "--e", "4", "--max-v", "400"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("v=29"), "{stdout}");
    assert!(stdout.contains("v=61"), "{stdout}");
    assert!(stdout.contains("v=349"), "{stdout}");

    let (code, stdout, _) = run(&["scan-residues", "--e", "3", "--max-v", "500"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("no residue"), "{stdout}");
}

#[test]
fn enumerate_lists_expected_rows() {
    let (code, stdout, _) = run(&["enumerate", "19"]);
    assert_eq!(code, 0);
    assert!(
        stdout.lines().any(|l| l.starts_with("7\t6\t-1")),
        "{stdout}"
    );
    assert!(
        stdout.lines().any(|l| l.starts_with("19\t13\t2")),
        "{stdout}"
    );
    assert!(
        stdout.lines().any(|l| l.starts_with("19\t13\t6")),
        "{stdout}"
    );
}

#[test]
fn catalog_round_trip_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    let path_str = path.to_str().unwrap();

    let (code, set_json, _) = run(&["construct", "qr", "--v", "11"]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run_stdin(
        &[
            "--catalog",
            path_str,
            "catalog",
            "add",
            "-",
            "--source",
            "qr",
        ],
        &set_json,
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("added"), "{stdout}");

    // idempotent under the canonical key
    let (code, stdout, _) = run_stdin(
        &[
            "--catalog",
            path_str,
            "catalog",
            "add",
            "-",
            "--source",
            "qr",
        ],
        &set_json,
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("already present"), "{stdout}");

    let (code, stdout, _) = run(&["--catalog", path_str, "catalog", "list"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1 record(s)"), "{stdout}");

    let (code, stdout, _) = run(&["--catalog", path_str, "catalog", "check"]);
    assert_eq!(code, 0, "{stdout}");

    // corrupt the stored lambda and the checker names the line
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"lambda\":-1", "\"lambda\":0")).unwrap();
    let (code, stdout, _) = run(&["--catalog", path_str, "catalog", "check"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("line 1"), "{stdout}");
}

#[test]
fn search_appends_to_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    let path_str = path.to_str().unwrap();
    let (code, _, _) = run(&[
        "--catalog",
        path_str,
        "search",
        "--group",
        "7",
        "--k",
        "6",
        "--lambda",
        "-1",
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"source\":\"search\""), "{text}");
    let (code, _, _) = run(&["--catalog", path_str, "catalog", "check"]);
    assert_eq!(code, 0);
}

#[test]
fn sporadic_flags_the_known_bad_row() {
    let (code, stdout, _) = run(&["sporadic", "--skip-search"]);
    assert_eq!(code, 0, "{stdout}");
    let bad_line = stdout
        .lines()
        .find(|l| l.starts_with("71\t"))
        .expect("row 71 present");
    assert!(bad_line.contains("MISMATCH"), "{bad_line}");
    assert!(bad_line.contains("|P|=31"), "{bad_line}");
    // every other row checks out
    assert_eq!(stdout.matches("MISMATCH").count(), 1, "{stdout}");
}

#[test]
fn group_literals_with_factors() {
    let (code, stdout, _) = run(&[
        "search",
        "--group",
        "2x3x3",
        "--k",
        "13",
        "--lambda",
        "4",
        "--multiplier",
        "1",
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("\"group\":[2,3,3]"), "{stdout}");
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[
        "search",
        "--group",
        "not-a-group",
        "--k",
        "3",
        "--lambda",
        "1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn complement_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ds.json");
    // a (13,4,1) planar difference set
    std::fs::write(
        &path,
        r#"{"group":[13],"lambda":1,"P":[[0],[1],[3],[9]],"N":[]}"#,
    )
    .unwrap();
    let (code, stdout, _) = run(&["construct", "complement", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["lambda"], serde_json::json!(1));
    let (code, _, _) = run_stdin(&["verify", "-"], &stdout);
    assert_eq!(code, 0);

    // a signed set is refused as complement input
    let signed = dir.path().join("signed.json");
    std::fs::write(
        &signed,
        r#"{"group":[7],"lambda":0,"P":[[1],[2],[4]],"N":[[0]]}"#,
    )
    .unwrap();
    let (code, _, stderr) = run(&[
        "construct",
        "complement",
        "--file",
        signed.to_str().unwrap(),
    ]);
    assert_eq!(code, 1, "{stderr}");
}

#[test]
fn search_with_explicit_quotient_and_prune_flags() {
    // the documented flag set, end to end on the (20,11,2) row
    let (code, stdout, _) = run(&[
        "search",
        "--group",
        "20",
        "--k",
        "11",
        "--lambda",
        "2",
        "--quotient-gen",
        "5",
        "--no-prune-diff",
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("status=exhaustive"), "{stdout}");

    // identical classes with every pruning layer off
    let (code2, stdout2, _) = run(&[
        "search",
        "--group",
        "20",
        "--k",
        "11",
        "--lambda",
        "2",
        "--no-prune-quotient",
        "--no-prune-diff",
    ]);
    assert_eq!(code2, 0);
    let sets1: Vec<&str> = stdout.lines().filter(|l| l.starts_with('{')).collect();
    let sets2: Vec<&str> = stdout2.lines().filter(|l| l.starts_with('{')).collect();
    assert_eq!(sets1, sets2);
}

#[test]
fn sporadic_with_search_reproduction() {
    let (code, stdout, _) = run(&["sporadic", "--max-nodes", "10000000"]);
    assert_eq!(code, 0, "{stdout}");
    for row in ["(19,13,2)", "(19,13,6)", "(20,11,2)", "(55,10,1)"] {
        let line = stdout
            .lines()
            .find(|l| l.contains(row))
            .unwrap_or_else(|| panic!("missing search line for {row}: {stdout}"));
        assert!(line.contains("found"), "{line}");
        assert!(!line.contains("NOT FOUND"), "{line}");
    }
}

#[test]
fn json_outputs_are_wellformed() {
    let (code, stdout, _) = run(&["--json", "feasible", "19", "13", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["s"], 7);

    let (code, stdout, _) = run(&["--json", "enumerate", "19"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["v"] == 19 && r["k"] == 13));

    let (code, stdout, _) = run(&["--json", "scan-residues", "--e", "4", "--max-v", "100"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v[0]["v"], 29);

    let (code, stdout, _) = run(&["--json", "sporadic", "--skip-search"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 23);
}

#[test]
fn enumerate_dedup_drops_complement_partners() {
    let (code, full, _) = run(&["enumerate", "93"]);
    assert_eq!(code, 0);
    assert!(full.lines().any(|l| l.starts_with("93\t32\t7")), "{full}");
    assert!(full.lines().any(|l| l.starts_with("93\t73\t48")), "{full}");
    let (code, deduped, _) = run(&["enumerate", "93", "--dedup"]);
    assert_eq!(code, 0);
    assert!(deduped.lines().any(|l| l.starts_with("93\t32\t7")));
    assert!(!deduped.lines().any(|l| l.starts_with("93\t73\t48")));
}

#[test]
fn construct_out_writes_a_verifiable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.json");
    let (code, stdout, _) = run(&[
        "construct",
        "paley-signed",
        "--q",
        "19",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let (code, stdout, _) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}
