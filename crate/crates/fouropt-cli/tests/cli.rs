//! End-to-end tests of the compiled binary: exit codes, output shapes, and
//! the run-report file format.

use std::process::{Command, Output};

use fouropt::io::report::RunReport;

fn fouropt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fouropt"))
        .args(args)
        .output()
        .expect("failed to launch the binary")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn schemes_table_lists_the_whole_catalog() {
    let out = fouropt(&["schemes"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("r1 "));
    assert!(text.contains("r25"));
    assert!(text.contains("(+4,+3,+2)"));
    assert!(text.contains("(-2,-3,-4)"));
    // Header plus one row per scheme.
    assert_eq!(text.lines().count(), 26);
}

#[test]
fn schemes_json_has_25_entries_with_orbits() {
    let out = fouropt(&["schemes", "--json"]);
    assert!(out.status.success());
    let entries: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 25);
    assert_eq!(entries[0]["name"], "r1");
    assert_eq!(
        entries[24]["signed_permutation"],
        serde_json::json!([4, 3, 2])
    );
    for e in entries {
        let orbit = e["orbit"].as_u64().unwrap();
        assert!((1..=7).contains(&orbit));
        assert_eq!(e["inserted_edges"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn orbits_json_partitions_the_catalog() {
    let out = fouropt(&["orbits", "--json"]);
    assert!(out.status.success());
    let entries: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 7);
    let sizes: Vec<u64> = entries
        .iter()
        .map(|e| e["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [4, 2, 4, 4, 8, 2, 1]);
    assert_eq!(sizes.iter().sum::<u64>(), 25);
    assert_eq!(entries[6]["representative"], "r25");
}

#[test]
fn solve_writes_a_parsable_report_with_frozen_results() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("run.jsonl");
    let out = fouropt(&[
        "solve",
        "--instance",
        "random-matrix:12,seed=0",
        "--engine",
        "brute",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("initial length 8155"));
    assert!(text.contains("final length 2400"));

    let report = RunReport::parse_lines(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report.n, 12);
    assert_eq!(report.engine, "brute");
    assert_eq!(report.initial_length, 8155.0);
    assert_eq!(report.final_length, 2400.0);
    assert_eq!(report.iterations, 5);
    assert_eq!(report.moves.len(), 5);
    let gains: f64 = report.moves.iter().map(|m| m.gain).sum();
    assert_eq!(report.initial_length - gains, report.final_length);
}

#[test]
fn engines_agree_on_the_same_generated_instance() {
    let mut finals = Vec::new();
    for engine in ["brute", "deberg", "hybrid"] {
        let out = fouropt(&[
            "solve",
            "--instance",
            "random-matrix:12,seed=0",
            "--engine",
            engine,
        ]);
        assert!(out.status.success());
        let text = stdout_of(&out);
        let line = text
            .lines()
            .find(|l| l.starts_with("final length"))
            .unwrap();
        finals.push(line.to_owned());
    }
    assert_eq!(finals[0], finals[1]);
    assert_eq!(finals[0], finals[2]);
}

#[test]
fn solve_reads_a_tsplib_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.tsp");
    std::fs::write(
        &path,
        "NAME: ring\nTYPE: TSP\nDIMENSION: 10\nEDGE_WEIGHT_TYPE: EUC_2D\n\
         NODE_COORD_SECTION\n\
         1 0 0\n2 10 3\n3 20 0\n4 25 10\n5 20 20\n6 10 26\n7 0 20\n8 -5 10\n9 8 12\n10 14 9\n\
         EOF\n",
    )
    .unwrap();
    let out = fouropt(&["solve", "--instance", path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("instance ring (n=10)"));
    assert!(text.contains("final length"));
}

#[test]
fn verify_passes_cleanly() {
    let out = fouropt(&["verify"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let passes = text
        .lines()
        .filter(|l| l.starts_with("check ") && l.contains("PASS"))
        .count();
    assert_eq!(passes, 6);
    assert!(text.contains("all 6 checks passed"));
}

#[test]
fn verify_fails_under_each_injected_fault() {
    for fault in ["c-tilde-sign", "glover-branch", "label-map"] {
        let out = fouropt(&["verify", "--corrupt", fault]);
        assert_eq!(
            out.status.code(),
            Some(1),
            "fault {fault} must make verify exit 1"
        );
        let text = stdout_of(&out);
        assert!(
            text.contains("FAIL"),
            "fault {fault} must fail at least one check"
        );
        assert!(text.contains("checks failed"));
    }
}

#[test]
fn unsupported_tsplib_input_exits_2_and_names_the_keyword() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("odd.tsp");
    std::fs::write(
        &path,
        "NAME: odd\nTYPE: TSP\nDIMENSION: 5\nEDGE_WEIGHT_TYPE: EUC_2D\n\
         DISPLAY_DATA_TYPE: COORD_DISPLAY\nEOF\n",
    )
    .unwrap();
    let out = fouropt(&["solve", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("DISPLAY_DATA_TYPE"));
}

#[test]
fn bad_generator_spec_exits_2() {
    let out = fouropt(&["solve", "--instance", "random-matrix:12,flavor=mild"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("flavor"));
}

#[test]
fn unknown_engine_is_rejected_by_the_parser() {
    let out = fouropt(&[
        "solve",
        "--instance",
        "random-matrix:12",
        "--engine",
        "anneal",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("unknown engine"));
}

#[test]
fn bench_reports_times_and_a_fitted_slope() {
    let out = fouropt(&["bench", "--engine", "glover", "--sizes", "50,100"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("engine glover"));
    assert!(text.contains("fitted log-log slope:"));
}

#[test]
fn bench_refuses_oversized_brute_force() {
    let out = fouropt(&["bench", "--engine", "brute", "--sizes", "500"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("impractical"));
}
