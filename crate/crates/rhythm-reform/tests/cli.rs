//! End-to-end tests of the command-line binary: real process spawns, real
//! exit codes, byte-level output checks.

use std::path::PathBuf;
use std::process::Command;

use rhythm_reform::text;

const BIN: &str = env!("CARGO_BIN_EXE_rhythm-reform");

/// Run the binary and capture (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(BIN)
        .args(args)
        .output()
        .expect("binary spawns");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("stdout is utf-8"),
        String::from_utf8(output.stderr).expect("stderr is utf-8"),
    )
}

#[test]
fn smooth_reports_the_worked_example() {
    let (code, stdout, _) = run(&["smooth", "N=8", "n=3", "a=0,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "steps=2 rhythm=N=8 n=3 a=5,7,2\n");
}

#[test]
fn smooth_trace_walks_the_measure_staircase() {
    let (code, stdout, _) = run(&["smooth", "N=8 n=3 a=0,1,2", "--trace"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "trace step=0 mu=6 state=N=8 n=3 k=0 a=0,1,2\n\
         trace step=1 mu=12 state=N=8 n=3 k=1 a=5,1,2\n\
         trace step=2 mu=18 state=N=8 n=3 k=2 a=5,7,2\n\
         steps=2 rhythm=N=8 n=3 a=5,7,2\n"
    );
}

#[test]
fn smooth_json_lines_round_trips_through_the_parser() {
    let (code, stdout, _) = run(&[
        "smooth",
        "N=8 n=3 a=0,1,2",
        "--trace",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["steps"], 2);
    let rhythm = text::parse_rhythm(value["rhythm"].as_str().unwrap()).unwrap();
    assert_eq!(rhythm.entries(), &[5, 7, 2]);
    assert_eq!(value["trace"].as_array().unwrap().len(), 3);
    assert_eq!(value["trace"][0]["mu"], "6");
    assert_eq!(value["trace"][2]["state"], "N=8 n=3 k=2 a=5,7,2");
}

#[test]
fn smooth_honors_an_explicit_marker() {
    // Starting at marker 1 reworks entry 1 first; the walk still smooths.
    let (code, stdout, _) = run(&["smooth", "N=8 n=3 a=0,1,2", "--marker", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("steps="));
    let rhythm = text::parse_rhythm(stdout.trim().split_once("rhythm=").unwrap().1).unwrap();
    assert!(rhythm_reform::measure::is_smooth(&rhythm));
}

#[test]
fn invalid_states_exit_1_with_a_diagnostic() {
    // Entries out of cyclic order: a validation error, not a crash.
    let (code, stdout, stderr) = run(&["smooth", "N=8 n=3 a=0,2,1"]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.contains("error:"), "{stderr}");

    let (code, _, stderr) = run(&["orbit", "N=8 n=3 k=9 a=0,1,2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("marker"), "{stderr}");
}

#[test]
fn usage_errors_exit_1_but_help_exits_0() {
    let (code, _, _) = run(&["smooth"]);
    assert_eq!(code, 1, "missing argument is a usage error");
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 1);
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("smooth"));
    assert!(stdout.contains("verify"));
}

#[test]
fn orbit_def_traces_the_six_cycle_with_constant_content() {
    let (code, stdout, _) = run(&["orbit", "N=8 n=3 k=0 d=3,3,2", "--system", "def"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    // Six cycle states, the closing repeat, and the summary.
    assert_eq!(lines.len(), 8);
    for line in &lines[..7] {
        assert!(line.contains("mu=18"), "{line}");
        assert!(line.contains("content=2:1,3:2"), "{line}");
        assert!(line.contains("smooth=true"), "{line}");
    }
    assert_eq!(lines[7], "transient=0 period=6 smooth_index=0");
    // The orbit closes where it started.
    assert!(lines[6].ends_with("state=N=8 n=3 k=0 d=3,3,2"), "{}", lines[6]);
}

#[test]
fn orbit_ref_summary_matches_the_known_numbers() {
    let (code, stdout, _) = run(&[
        "orbit",
        "N=8 n=3 k=0 a=0,1,2",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let last: serde_json::Value =
        serde_json::from_str(stdout.lines().last().unwrap()).unwrap();
    assert_eq!(last["transient"], 2);
    assert_eq!(last["period"], 48);
    assert_eq!(last["smooth_index"], 2);
    // transient + period + closing repeat + summary line
    assert_eq!(stdout.lines().count(), 2 + 48 + 1 + 1);
    let first: serde_json::Value =
        serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(first["mu"], "6");
    assert_eq!(first["state"], "N=8 n=3 k=0 a=0,1,2");
}

#[test]
fn orbit_cap_exceeded_exits_3() {
    let (code, _, stderr) = run(&["orbit", "N=8 n=3 k=0 a=0,1,2", "--max-steps", "10"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("10"), "{stderr}");
}

#[test]
fn verify_passes_and_is_byte_stable() {
    let (code_a, stdout_a, _) = run(&["verify", "N=8 n=3"]);
    let (code_b, stdout_b, _) = run(&["verify", "N=8", "n=3"]);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(stdout_a, stdout_b, "two runs must print identical reports");
    assert!(stdout_a.contains("all passed: true"));
    assert!(stdout_a.contains("Prop1.1   checked=504      pass"));
}

#[test]
fn verify_json_lines_is_one_record_per_claim() {
    let (code, stdout, _) = run(&["verify", "N=8 n=3", "--format", "json-lines"]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // Header, 18 claims, summary.
    assert_eq!(lines.len(), 20);
    assert_eq!(lines[0]["marked_rhythm_states"], 504);
    assert_eq!(lines[1]["id"], "Prop1.1");
    for claim in &lines[1..19] {
        assert_eq!(claim["passed"], true, "{claim}");
        assert_eq!(claim["counterexamples"].as_array().unwrap().len(), 0);
    }
    assert_eq!(lines[19]["all_passed"], true);
    assert_eq!(lines[19]["observed_def_periods"][0], 6);
}

#[test]
fn verify_budget_exceeded_exits_3_and_names_skipped_claims() {
    let (code, stdout, stderr) = run(&["verify", "N=8 n=3", "--budget", "100"]);
    assert_eq!(code, 3);
    assert!(stdout.is_empty());
    assert!(stderr.contains("budget exceeded"), "{stderr}");
    assert!(stderr.contains("skipped claims: Prop1.1"), "{stderr}");
    assert!(stderr.contains("Validity"), "{stderr}");
}

#[test]
fn verify_single_claim_filter() {
    let (code, stdout, _) = run(&["verify", "N=12 n=5", "--claim", "Prop1.1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Prop1.1   checked=19800"), "{stdout}");
    assert!(!stdout.contains("Thm4.2"));
}

#[test]
fn enumerate_counts_match_the_formulas() {
    let (code, stdout, _) = run(&["enumerate", "N=8 n=3", "--space", "marked-differences", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "count=63\n");
    let (_, stdout, _) = run(&["enumerate", "N=8 n=3", "--space", "marked-rhythms", "--count"]);
    assert_eq!(stdout, "count=504\n");
    let (_, stdout, _) = run(&["enumerate", "N=8 n=3", "--space", "compositions", "--count"]);
    assert_eq!(stdout, "count=21\n");
    let (_, stdout, _) = run(&[
        "enumerate", "N=8 n=3", "--space", "rhythms", "--count", "--format", "json-lines",
    ]);
    assert_eq!(stdout, "{\"count\":168}\n");
}

#[test]
fn enumerate_periodic_agrees_with_the_quasi_smooth_filter() {
    let (code, periodic, _) = run(&[
        "enumerate", "N=10 n=4", "--space", "marked-differences", "--filter", "periodic",
    ]);
    assert_eq!(code, 0);
    let (_, quasi, _) = run(&[
        "enumerate", "N=10 n=4", "--space", "marked-differences", "--filter", "quasi-smooth",
    ]);
    assert!(!periodic.is_empty());
    assert_eq!(periodic, quasi, "brute force and criterion must list the same states");
}

#[test]
fn enumerate_rejects_periodic_on_unmarked_spaces() {
    let (code, _, stderr) = run(&["enumerate", "N=8 n=3", "--space", "rhythms", "--filter", "periodic"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("marked"), "{stderr}");
}

#[test]
fn enumerate_budget_guard_exits_3() {
    let (code, _, stderr) = run(&[
        "enumerate", "N=8 n=3", "--space", "marked-rhythms", "--budget", "10",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("budget"), "{stderr}");
}

#[test]
fn enumerated_states_reparse_to_equal_values() {
    let (code, stdout, _) = run(&["enumerate", "N=9 n=4", "--space", "marked-rhythms"]);
    assert_eq!(code, 0);
    let mut count = 0;
    for line in stdout.lines() {
        let state = text::parse_marked_rhythm(line).unwrap();
        assert_eq!(state.to_string(), line);
        count += 1;
    }
    assert_eq!(count, 4 * 9 * 56); // n * N * C(8,3)
}

#[test]
fn render_writes_svg_to_a_file_or_stdout() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("figure.svg");
    let (code, stdout, _) = run(&[
        "render",
        "N=8 n=3 k=1 a=5,1,2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let file = std::fs::read_to_string(&path).unwrap();
    assert!(file.starts_with("<?xml"));
    assert_eq!(file.matches("class=\"onset\"").count(), 3);
    assert_eq!(file.matches("class=\"beat-label\"").count(), 8);
    assert_eq!(file.matches("class=\"marker-ring\"").count(), 1);

    let (code, stdout, _) = run(&["render", "N=8 n=3 k=1 a=5,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, file, "stdout and --out must produce identical documents");
}

#[test]
fn render_rejects_degenerate_styles() {
    let (code, _, stderr) = run(&["render", "N=8 n=3 k=0 a=0,1,2", "--ring-radius", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("ring"), "{stderr}");
}
