//! End-to-end tests of the `suspsplit` binary: output text, JSON shape,
//! exit codes, and byte stability.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_suspsplit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn write_doc(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("temp file");
    f.write_all(json.as_bytes()).expect("temp file writes");
    f
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

const N5_DOC: &str = r#"{"schema": 1, "n": 5, "l": 1, "d": 2, "torsion": [[3, 1]],
    "mode": "ops", "localize": true}"#;

const N2_DOC: &str = r#"{"schema": 1, "n": 2, "l": 1, "d": 1, "torsion": [[2, 1]],
    "sq2": {"A": [[0]], "B": [[0]]}, "mode": "ops",
    "profile": {"w2_nonzero": false, "theta": {"case": "trivial"}, "tertiary": false}}"#;

const ATTACH_DOC: &str = r#"{"schema": 1, "n": 2, "l": 1, "d": 0,
    "torsion": [[2, 1], [2, 2]], "sq2": {"c1": 0, "c2": 0, "chosen": []},
    "mode": "attach",
    "coeffs": {"x": [1, 1], "eps": [0, 0], "y": [0], "z": [0], "s": [0, 0], "t": []}}"#;

#[test]
fn tables_prints_stored_groups() {
    let out = run(&["tables", "--pi", "6", "--space", "C^5_eta"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_text(&out), "Z/6<i3*nu'>\n");

    let out = run(&["tables", "--pi", "6", "--space", "P^4(Z/2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_text(&out), "Z/4<j*lambda> + Z/2<teta_1*eta>\n");
}

#[test]
fn tables_refuses_rows_outside_the_stored_range() {
    let out = run(&["tables", "--pi", "11", "--space", "S^7"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_text(&out).contains("outside the stored tables"));
}

#[test]
fn decompose_prints_the_wedge() {
    let f = write_doc(N5_DOC);
    let out = run(&["decompose", "--n", "5", "-f", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    assert_eq!(
        stdout_text(&out),
        "SigmaM ~(1/2) S^6 + S^7 + S^7 + S^8 + S^13 + P^7(Z/3) + P^8(Z/3)\n"
    );
}

#[test]
fn decompose_reads_stdin_by_default() {
    let out = run_with_stdin(&["decompose"], N2_DOC);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    assert_eq!(
        stdout_text(&out),
        "SigmaM ~ S^3 + S^4 + S^5 + S^7 + P^4(Z/2) + P^5(Z/2)\n"
    );
}

#[test]
fn decompose_output_is_byte_stable() {
    let first = run_with_stdin(&["decompose"], N2_DOC);
    let second = run_with_stdin(&["decompose"], N2_DOC);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let first = run_with_stdin(&["decompose", "--json"], N5_DOC);
    let second = run_with_stdin(&["decompose", "--json"], N5_DOC);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn decompose_json_mirrors_the_wedge() {
    let out = run_with_stdin(&["decompose", "--json"], N2_DOC);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_text(&out)).expect("valid JSON");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["localized"], false);
    assert_eq!(v["c1"], 0);
    assert_eq!(v["c2"], 0);
    let cands = v["candidates"].as_array().expect("candidates array");
    assert_eq!(cands.len(), 1);
    assert_eq!(
        cands[0]["text"],
        "SigmaM ~ S^3 + S^4 + S^5 + S^7 + P^4(Z/2) + P^5(Z/2)"
    );
    assert_eq!(cands[0]["wedge"].as_array().expect("wedge array").len(), 6);
}

#[test]
fn decompose_requires_localization_for_odd_n() {
    let doc = r#"{"schema": 1, "n": 3, "l": 0, "d": 0, "torsion": [[3, 2]],
        "mode": "ops", "profile": {"p1": {"case": "trivial"}}, "localize": false}"#;
    let out = run_with_stdin(&["decompose"], doc);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr_text(&out).contains("away from 2"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn decompose_rejects_malformed_documents_as_schema_errors() {
    for doc in [
        "not json at all",
        r#"{"schema": 1, "n": 2}"#,
        r#"{"schema": 1, "n": 2, "l": 0, "d": 0, "mode": "ops", "bogus": 1}"#,
        r#"{"schema": 7, "n": 5, "l": 0, "d": 0, "mode": "ops", "localize": true}"#,
    ] {
        let out = run_with_stdin(&["decompose"], doc);
        assert_eq!(out.status.code(), Some(2), "doc: {doc}");
    }
}

#[test]
fn decompose_rejects_a_mismatched_n_flag() {
    let out = run_with_stdin(&["decompose", "--n", "4"], N5_DOC);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_text(&out).contains("--n 4 does not match n = 5"));
}

#[test]
fn normalize_prints_vector_moves_and_cofiber() {
    let out = run_with_stdin(&["normalize"], ATTACH_DOC);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    assert_eq!(
        stdout_text(&out),
        "vector: teta_1@0 + teta_2@1\n\
         move: TetaAbsorbsTeta: teta_1@0 kills teta_2@1\n\
         normal form: teta_1@0\n\
         cofiber: S^3 + S^5 + P^4(Z/2) + P^4(Z/4) + P^5(Z/4) + (P^5(Z/2) u_{teta_1} e^7)\n"
    );
}

#[test]
fn normalize_refuses_operations_mode_documents() {
    let out = run_with_stdin(&["normalize"], N2_DOC);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_streams_exact_counts() {
    // Bounds chosen small enough to count by hand: each shape contributes
    // 2^(number of coefficients) documents.
    let out = run(&["enumerate", "--bounds", "1,0,1,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    assert_eq!(text.lines().count(), 140);

    // All-zero bounds: the single empty input.
    let out = run(&["enumerate", "--bounds", "0,0,0,0", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_text(&out).lines().count(), 1);

    // n = 5 inputs carry no attaching coefficients.
    let out = run(&["enumerate", "--bounds", "1,1,1,1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout_text(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid JSON line");
        assert_eq!(v["mode"], "ops");
        assert!(v.get("coeffs").is_none(), "unexpected coeffs in {line}");
    }
}

#[test]
fn enumerate_lines_feed_back_into_decompose() {
    let out = run(&["enumerate", "--bounds", "1,0,1,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    let mut lines = text.lines();
    // Spot-check the first, a middle, and the last line.
    let picks: Vec<&str> = {
        let all: Vec<&str> = lines.by_ref().collect();
        vec![all[0], all[all.len() / 2], all[all.len() - 1]]
    };
    for line in picks {
        let out = run_with_stdin(&["decompose"], line);
        assert_eq!(out.status.code(), Some(0), "line: {line}");
        assert!(stdout_text(&out).starts_with("SigmaM ~"));
    }
}

#[test]
fn enumerate_respects_the_cap_override() {
    let out = bin()
        .args(["enumerate", "--bounds", "1,0,1,1", "--n", "2"])
        .env("SUSPSPLIT_CAP", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_text(&out).contains("cap exceeded"));
}

#[test]
fn enumerate_rejects_malformed_bounds() {
    let out = run(&["enumerate", "--bounds", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_text(&out).contains("--bounds"));
}

#[test]
fn verify_reports_one_line_per_check() {
    let out = run(&["verify", "--bounds", "0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    let text = stdout_text(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 10, "got {} lines", lines.len());
    for line in &lines {
        assert!(line.contains(": pass ("), "unexpected line {line:?}");
    }
}

#[test]
fn unknown_arguments_exit_with_the_schema_code() {
    let out = run(&["decompose", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn streaming_output_survives_a_closed_pipe() {
    // `head` closes the pipe after one line.  The enumerate stream is far
    // larger than any pipe buffer, so the broken pipe is guaranteed there;
    // either command must report the failed write through its exit code
    // rather than panic with a backtrace.
    let exe = env!("CARGO_BIN_EXE_suspsplit");
    for (args, pipe_always_breaks) in [
        ("enumerate --bounds 1,1,1,2", true),
        ("verify --bounds 0,0,0,0", false),
    ] {
        let out = Command::new("sh")
            .args(["-c", &format!("'{exe}' {args} | head -n 1")])
            .output()
            .expect("shell runs");
        let err = String::from_utf8_lossy(&out.stderr).into_owned();
        assert!(!err.contains("panicked"), "{args} panicked: {err}");
        if pipe_always_breaks {
            assert!(err.contains("writing output"), "{args} stderr: {err:?}");
        } else {
            assert!(
                err.is_empty() || err.contains("writing output"),
                "{args} stderr: {err:?}"
            );
        }
    }
}
