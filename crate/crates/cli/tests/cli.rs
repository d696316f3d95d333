//! End-to-end tests of the binary: exit codes, report contents, and the
//! machine-format round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kernelstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(file: &str, subcommand: &str, extra: &[&str]) -> Output {
    let path = scenario_dir().join(file);
    let mut args = vec![subcommand, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn verdict_on_complete_pair() {
    let output = run_on("complete_line_bundle.toml", "verdict", &[]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("verdict: StronglyUnstable"));
    assert!(text.contains("instability bounds: w1 <= 2/5, w2 <= 2/5"));
    assert!(text.contains("4/5 < 1"));
    assert!(text.contains("Corollary 2.7"));
}

#[test]
fn verdict_machine_format_round_trips() {
    let output = run_on(
        "complete_line_bundle.toml",
        "verdict",
        &["--format", "json"],
    );
    assert!(output.status.success());
    let parsed: kernelstab_core::Verdict = serde_json::from_str(&stdout(&output)).unwrap();

    let curve = kernelstab_core::CurveData::new(2, 2).unwrap();
    let pair = kernelstab_core::PairNumerics::new(1, 4, 4, 5, None, None).unwrap();
    let facts: kernelstab_core::HypothesisSet = [
        kernelstab_core::Fact::PairIsComplete,
        kernelstab_core::Fact::E1Semistable,
        kernelstab_core::Fact::E2Semistable,
        kernelstab_core::Fact::E1Nontrivial,
        kernelstab_core::Fact::E2Nontrivial,
    ]
    .into_iter()
    .collect();
    let direct = kernelstab_core::classify(&pair, &curve, &facts).unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn verdict_output_is_deterministic() {
    let first = run_on("grassmannian_pair.toml", "verdict", &["--format", "json"]);
    let second = run_on("grassmannian_pair.toml", "verdict", &["--format", "json"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verdict_exit_codes() {
    // Missing file: I/O error.
    let output = run(&["verdict", "no_such_file.toml"]);
    assert_eq!(output.status.code(), Some(1));

    // Genus below 2: invariant violation with the invariant in the message.
    let dir = tempfile::tempdir().unwrap();
    let bad_genus = dir.path().join("bad_genus.toml");
    std::fs::write(
        &bad_genus,
        "[curve]\ng1 = 1\ng2 = 2\n\n[pair]\nr = 1\nd1 = 4\nd2 = 4\nk = 3\n",
    )
    .unwrap();
    let output = run(&["verdict", bad_genus.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("at least 2"));

    // Unknown fact: schema violation with a suggestion.
    let typo = dir.path().join("typo.toml");
    std::fs::write(
        &typo,
        "[curve]\ng1 = 2\ng2 = 2\n\n[pair]\nr = 1\nd1 = 4\nd2 = 4\nk = 3\n\n[hypotheses]\nfacts = [\"E1_semistble\"]\n",
    )
    .unwrap();
    let output = run(&["verdict", typo.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("did you mean `E1_semistable`?"));

    // Facts contradicting the numerics.
    let contradiction = dir.path().join("contradiction.toml");
    std::fs::write(
        &contradiction,
        "[curve]\ng1 = 2\ng2 = 2\n\n[pair]\nr = 1\nd1 = 4\nd2 = 4\nk = 3\ns1 = 1\n\n[hypotheses]\nfacts = [\"star_condition\"]\n",
    )
    .unwrap();
    let output = run(&["verdict", contradiction.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr(&output).contains("s1"));
}

#[test]
fn inconclusive_still_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let plain = dir.path().join("plain.toml");
    std::fs::write(
        &plain,
        "[curve]\ng1 = 2\ng2 = 2\n\n[pair]\nr = 1\nd1 = 4\nd2 = 4\nk = 3\n",
    )
    .unwrap();
    let output = run(&["verdict", plain.to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("verdict: Inconclusive"));
    assert!(text.contains("nearest rule: grassmannian_semistable"));
    assert!(text.contains("missing facts: pair_general_in_grassmannian"));
}

#[test]
fn verdict_on_star_scenario() {
    let output = run_on("star_window.toml", "verdict", &[]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("verdict: WSemistable"));
    assert!(text.contains("window: [3/7, 4/7]"));
    assert!(text.contains("Theorem 3.4"));
}

#[test]
fn window_reports() {
    let output = run_on("star_window.toml", "window", &[]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("a1 = 3/7"));
    assert!(text.contains("b1 = 4/7"));
    assert!(text.contains("open interior: (3/7, 4/7)"));
    assert!(text.contains("sample w1 (mediant): 1/2"));

    let output = run_on("grassmannian_pair.toml", "window", &[]);
    let text = stdout(&output);
    assert!(text.contains("a1 = 8/23"));
    assert!(text.contains("b1 = 11/23"));
    assert!(text.contains("sample w1 (mediant): 19/46"));
}

#[test]
fn window_rejects_degenerate_pair() {
    let dir = tempfile::tempdir().unwrap();
    let degenerate = dir.path().join("degenerate.toml");
    std::fs::write(
        &degenerate,
        "[curve]\ng1 = 2\ng2 = 2\n\n[pair]\nr = 1\nd1 = 4\nd2 = 4\nk = 1\n",
    )
    .unwrap();
    let output = run(&["window", degenerate.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("r + 1"));
}

#[test]
fn one_sided_scenario_reports_restriction_instability() {
    let output = run_on("one_sided.toml", "verdict", &[]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("verdict: RestrictionUnstable"));
    assert!(text.contains("instability bound: w2 <= 2/7"));
    assert!(text.contains("missing facts: s2_positive"));
}

#[test]
fn petri_scenario_is_w_stable() {
    let output = run_on("petri_stable.toml", "verdict", &[]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("verdict: WStable"));
    assert!(text.contains("window: [7/15, 8/15]"));
}

#[test]
fn sweep_complete_template() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let output = run(&[
        "sweep",
        "--template",
        "complete",
        "--g1",
        "2..3",
        "--g2",
        "2..3",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "g1,g2,r,d1,d2,k,s1,s2,verdict,window_lo,window_hi,rule_id"
    );
    let mut rows = 0;
    for line in lines {
        rows += 1;
        assert!(line.contains(",StronglyUnstable,"), "row: {line}");
    }
    assert!(rows > 0);
    assert!(stdout(&output).contains(&format!("StronglyUnstable: {rows}")));
}

#[test]
fn sweep_claim_template() {
    let output = run(&[
        "sweep",
        "--template",
        "claim",
        "--r",
        "1..2",
        "--g1",
        "2..4",
        "--g2",
        "2..4",
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("0 counterexamples"));
}

#[test]
fn sweep_empty_range_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("empty.csv");
    let output = run(&[
        "sweep",
        "--template",
        "complete",
        "--g1",
        "3..2",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(
        csv,
        "g1,g2,r,d1,d2,k,s1,s2,verdict,window_lo,window_hi,rule_id\n"
    );
    assert!(stdout(&output).contains("0 rows"));
}

#[test]
fn sweep_rejects_unknown_template() {
    let output = run(&["sweep", "--template", "nonsense"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("unknown template"));
}

#[test]
fn oracle_scan_agrees_with_closed_forms() {
    let output = run_on("one_sided.toml", "oracle-scan", &["--grid", "97"]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("grid: N = 97"));
    assert!(text.contains("grid scan matches window: yes"));
    assert!(text.contains("grid scan matches region: yes"));

    // Without section counts the destabilizer scan is skipped.
    let output = run_on("grassmannian_pair.toml", "oracle-scan", &["--grid", "46"]);
    let text = stdout(&output);
    assert!(text.contains("destabilizer scan: skipped"));
    assert!(text.contains("grid scan matches window: yes"));
}
