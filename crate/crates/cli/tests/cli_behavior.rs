//! Behavioral contract of the binary: exit codes, output formats, and
//! determinism across runs and thread counts.

use std::process::{Command, Output};

fn nihoperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nihoperm"))
        .args(args)
        .env_remove("NIHOPERM_FIELD_SPECS")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn verify_passes_in_the_proved_regime() {
    let out = nihoperm(&["verify", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("bruteforce: permutation confirmed over 64 points"));
    assert!(text.contains("lemma1: permutation confirmed over 9 points"));
    // the header spells out the x^r·h(x^s) split, with h in deg:coeff form
    assert!(
        text.contains("decomposition: x^1·h(x^7) with h = 5:1,2:1,0:1, subgroup order 9"),
        "header: {text}"
    );
}

#[test]
fn verify_reports_the_not_invertible_regime_distinctly() {
    let out = nihoperm(&["verify", "--m", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_of(&out).is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("11 divides 2^5+1 = 33"), "stderr: {err}");

    // 11 | 2^15 + 1 as well, and the regime outranks the size cap
    let out = nihoperm(&["verify", "--m", "15"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_emits_parseable_json_lines() {
    let out = nihoperm(&["verify", "--m", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in lines {
        let value: serde_json::Value = serde_json::from_str(line).expect("valid JSON");
        assert_eq!(value["verdict"], serde_json::Value::Bool(true));
        assert!(value["method"] == "bruteforce" || value["method"] == "lemma1");
        assert!(value["witness"].is_null());
    }
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["sweep", "--m-max", "0"] as &[&str],
        &["verify", "--m", "0"],
        &["verify", "--m", "16"],
        &["lemma", "2", "--m", "9"],
        &["lemma", "4", "--ext", "7"],
        &["verify", "--m", "3", "--parallelism", "0"],
        // past one word of field degree: must be a clean config error, not
        // an arithmetic panic inside the exponent computation
        &["verify", "--m", "99"],
    ] {
        let out = nihoperm(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        let err = String::from_utf8(out.stderr.clone()).unwrap();
        assert!(!err.contains("panicked"), "args: {args:?}, stderr: {err}");
    }
}

#[test]
fn a_closed_pipe_ends_the_run_quietly() {
    use std::io::Read;
    use std::process::Stdio;

    // 5110 rows at m=10 overflow the pipe buffer, so the writer hits EPIPE
    // once the reader hangs up after the first line
    let mut child = Command::new(env!("CARGO_BIN_EXE_nihoperm"))
        .args(["lemma", "5", "--m", "10"])
        .env_remove("NIHOPERM_FIELD_SPECS")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut first = [0u8; 8];
    child
        .stdout
        .take()
        .expect("piped stdout")
        .read_exact(&mut first)
        .expect("first bytes arrive");
    // dropping the handle closed the read end; the writer must wind down
    // without a panic or an abort signal
    let status = child.wait().expect("child exits");
    assert!(status.success(), "status: {status:?}");
    let mut err = String::new();
    child
        .stderr
        .take()
        .expect("piped stderr")
        .read_to_string(&mut err)
        .expect("utf-8 stderr");
    assert!(!err.contains("panicked"), "stderr: {err}");
}

#[test]
fn json_and_csv_runs_are_byte_identical_without_timing() {
    for args in [
        &["verify", "--m", "4", "--format", "json", "--no-timing"] as &[&str],
        &["sweep", "--m-max", "6", "--format", "csv", "--no-timing"],
        &["lemma", "5", "--m", "5", "--format", "json", "--no-timing"],
        &["lemma", "3", "--m", "6", "--format", "csv", "--no-timing"],
    ] {
        let first = nihoperm(args);
        let second = nihoperm(args);
        assert_eq!(first.status.code(), Some(0), "args: {args:?}");
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
    }
}

#[test]
fn parallel_runs_match_the_sequential_report_stream() {
    for parallelism in ["2", "3", "8"] {
        for base in [
            &["verify", "--m", "6", "--format", "json", "--no-timing"] as &[&str],
            &["sweep", "--m-max", "7", "--format", "csv", "--no-timing"],
            &["lemma", "5", "--m", "10", "--format", "csv", "--no-timing"],
        ] {
            let sequential = nihoperm(base);
            let mut args = base.to_vec();
            args.extend_from_slice(&["--parallelism", parallelism]);
            let parallel = nihoperm(&args);
            assert_eq!(sequential.status.code(), parallel.status.code());
            assert_eq!(sequential.stdout, parallel.stdout, "args: {args:?}");
        }
    }
}

#[test]
fn sweep_rows_carry_regimes_and_verdicts() {
    let out = nihoperm(&["sweep", "--m-max", "7", "--format", "json", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout_of(&out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON"))
        .collect();
    assert_eq!(rows.len(), 7);
    for row in &rows {
        let m = row["m"].as_u64().unwrap();
        if m == 5 {
            assert_eq!(row["regime"], "not_invertible");
            assert_eq!(row["eq4_max_count"], 11);
            assert!(row["bruteforce"].is_null());
            assert!(row["lemma1"].is_null());
        } else {
            assert_eq!(row["regime"], "proved", "m={m}");
            assert_eq!(row["eq4_max_count"], 1, "m={m}");
            assert_eq!(row["bruteforce"], true, "m={m}");
            assert_eq!(row["lemma1"], true, "m={m}");
        }
    }
}

#[test]
fn lemma2_csv_has_the_documented_schema() {
    let out = nihoperm(&["lemma", "2", "--m", "2", "--exhaustive", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "a,b,t,divides,cond1,cond2,cond3,circle_roots,relation_holds"
    );
    // 15 nonzero a · 15 nonzero b · 5 circle t values
    assert_eq!(lines.count(), 15 * 15 * 5);
    // none of them divide, so the filtered stream is empty
    let out = nihoperm(&["lemma", "2", "--m", "2", "--format", "csv"]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 1, "header only");
}

#[test]
fn lemma5_lists_solutions_exactly_when_5_divides_m() {
    let out = nihoperm(&["lemma", "5", "--m", "5", "--format", "json", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["solutions"], 150);
    assert_eq!(summary["expected_nonempty"], true);
    assert_eq!(summary["consistent"], true);
    assert_eq!(lines.len(), 151);

    let out = nihoperm(&["lemma", "5", "--m", "7", "--format", "json", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["solutions"], 0);
    assert_eq!(summary["expected_nonempty"], false);
    assert_eq!(summary["consistent"], true);
}

#[test]
fn lemma4_confirms_the_factorization_in_both_extensions() {
    for ext in ["5", "10"] {
        let out = nihoperm(&[
            "lemma",
            "4",
            "--ext",
            ext,
            "--format",
            "json",
            "--no-timing",
        ]);
        assert_eq!(out.status.code(), Some(0), "ext={ext}");
        let row: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
        assert_eq!(row["identity_holds"], true);
        assert_eq!(row["splitting_set"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn field_spec_table_overrides_the_reduction_polynomial() {
    let dir = std::env::temp_dir().join("nihoperm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();

    // 0x6d is an alternative degree-6 irreducible; the verdict is
    // representation-independent but the reported poly changes
    let good = dir.join("good-specs.txt");
    std::fs::write(&good, "# alternate bases\nk=6,poly=0x6d\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nihoperm"))
        .args(["verify", "--m", "3"])
        .env("NIHOPERM_FIELD_SPECS", &good)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("poly=0x6d"));

    let bad = dir.join("bad-specs.txt");
    std::fs::write(&bad, "k=6,poly=0x6c\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nihoperm"))
        .args(["verify", "--m", "3"])
        .env("NIHOPERM_FIELD_SPECS", &bad)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(2),
        "reducible override is a config error"
    );
}
