//! End-to-end tests of the installed binary: flag handling, file input,
//! output formats, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bayes-recipient"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn labeled_value(line: &str) -> f64 {
    line.rsplit(' ').next().unwrap().parse().unwrap()
}

#[test]
fn lr_a_neutral_report() {
    let out = run(&["lr-a", "--report-loglr", "0", "--prior-odds", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(labeled_value(lines[0]), 1.0);
    assert_eq!(labeled_value(lines[1]), 1.0);
    assert_eq!(labeled_value(lines[2]), 1.0);
}

#[test]
fn lr_a_strong_report_contrasts_recipient_and_hybrid() {
    let out = run(&["lr-a", "--report-loglr", "15"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!((labeled_value(lines[0]) - 2.0).abs() < 1e-9);
    assert!((labeled_value(lines[1]) - 2.0).abs() < 1e-9);
    let hybrid = labeled_value(lines[2]);
    assert!((hybrid - 15f64.exp()).abs() < 1e-6 * hybrid);
    // At least 12 significant digits in every printed number
    for line in &lines {
        let digits: usize = line
            .rsplit(' ')
            .next()
            .unwrap()
            .chars()
            .filter(char::is_ascii_digit)
            .count();
        assert!(digits >= 12, "too few digits in {line:?}");
    }
}

#[test]
fn lr_a_linear_scale_flag_converts() {
    let log_form = stdout(&run(&["lr-a", "--report-loglr", "4.605170185988091"]));
    let linear_form = stdout(&run(&["lr-a", "--report-lr", "100"]));
    assert_eq!(log_form, linear_form);
}

#[test]
fn lr_a_categorical_conclusion() {
    let out = run(&["lr-a", "--conclusion", "identified", "--prior-odds", "0.1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "no hybrid line without an expert LR");
    assert!((labeled_value(lines[0]) - 2.0).abs() < 1e-9);
    assert!((labeled_value(lines[1]) - 0.2).abs() < 1e-9);

    let not = run(&["lr-a", "--conclusion", "not_identified"]);
    assert!(not.status.success());
    let first = stdout(&not).lines().next().unwrap().to_string();
    assert!((labeled_value(&first) - 0.5).abs() < 1e-9);
}

#[test]
fn lr_a_reads_validation_file() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("bayes_recipient_cli_validation.csv");
    std::fs::write(&path, "hypothesis,outcome\nH1,3.0\nH1,13.0\nH2,-12.5\n").unwrap();
    let out = run(&[
        "lr-a",
        "--report-loglr",
        "8",
        "--validation",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let no_data = run(&["lr-a", "--report-loglr", "8"]);
    // Two supportive H1 results raise LR_A for a report near their mean.
    let with = labeled_value(stdout(&out).lines().next().unwrap());
    let without = labeled_value(stdout(&no_data).lines().next().unwrap());
    assert!(with > without);
    std::fs::remove_file(&path).ok();
}

#[test]
fn lr_a_rejects_bad_validation_file() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("bayes_recipient_cli_bad_validation.csv");
    std::fs::write(&path, "hypothesis,outcome\nH1,perhaps\n").unwrap();
    let out = run(&[
        "lr-a",
        "--report-loglr",
        "8",
        "--validation",
        path.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(stdout(&out).is_empty());
    assert!(!out.stderr.is_empty());
    std::fs::remove_file(&path).ok();
}

#[test]
fn fig2_default_shape_and_anchors() {
    let out = run(&["fig2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,pdf_h1,pdf_h2,lr_a");
    assert_eq!(lines.len(), 162);
    assert!(text.ends_with('\n'));
    assert!(!text.contains(",\n"), "no trailing delimiters");
}

#[test]
fn fig2_log10_column() {
    let out = run(&[
        "fig2", "--log10", "--x-min", "15", "--x-max", "15", "--step", "1",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,pdf_h1,pdf_h2,lr_a,lr_a_log10");
    let fields: Vec<&str> = lines[1].split(',').collect();
    let lr: f64 = fields[3].parse().unwrap();
    let log10: f64 = fields[4].parse().unwrap();
    assert!((log10 - lr.log10()).abs() < 1e-9);
}

#[test]
fn fig3_covers_n_list_and_matches_fig2_at_zero() {
    let fig3 = stdout(&run(&["fig3", "--n-list", "0,10"]));
    let fig2 = stdout(&run(&["fig2"]));
    let n0_rows: Vec<String> = fig3
        .lines()
        .skip(1)
        .filter(|l| l.starts_with("0,"))
        .map(|l| l.split_once(',').unwrap().1.to_string())
        .collect();
    let fig2_rows: Vec<&str> = fig2.lines().skip(1).collect();
    assert_eq!(n0_rows.len(), fig2_rows.len());
    for (a, b) in n0_rows.iter().zip(fig2_rows) {
        assert_eq!(a, b);
    }
}

#[test]
fn fig4_shape_and_corner() {
    let out = run(&["fig4", "--n-list", "0,10,20"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n1,n2,lr");
    assert_eq!(lines.len(), 1 + 9);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!((first[0], first[1]), ("0", "0"));
    assert!((first[2].parse::<f64>().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn fig4_default_grid_far_corner_nears_rate_ratio() {
    let text = stdout(&run(&["fig4"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 64, "8x8 grid plus header");
    let last: Vec<&str> = lines[64].split(',').collect();
    assert_eq!((last[0], last[1]), ("1000", "1000"));
    let lr: f64 = last[2].parse().unwrap();
    assert!(lr > 18.0 && lr < 19.5, "lr = {lr}");
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("bayes_recipient_cli_fig2.csv");
    let to_stdout = stdout(&run(&["fig2", "--step", "5"]));
    let piped = run(&["fig2", "--step", "5", "--out", path.to_str().unwrap()]);
    assert!(piped.status.success());
    assert!(stdout(&piped).is_empty());
    let from_file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(to_stdout, from_file);
    std::fs::remove_file(&path).ok();
}

#[test]
fn coin_models_match_worked_values() {
    for (args, want) in [
        (
            vec!["coin", "--model", "fair", "--seq", "HHHHHTTT"],
            "P(next flip heads) = 0.5\n",
        ),
        (
            vec!["coin", "--model", "beta", "--seq", "HHHHHTTT"],
            "P(next flip heads) = 0.6\n",
        ),
        (
            vec!["coin", "--model", "markov", "--seq", "HHHHHTTT"],
            "P(next flip heads) = 0.325\n",
        ),
        (
            vec![
                "coin",
                "--model",
                "markov",
                "--seq",
                "HHHHHTTT",
                "--rational",
            ],
            "P(next flip heads) = 13/40\n",
        ),
        (
            vec![
                "coin",
                "--model",
                "markov",
                "--seq",
                "HHHHHTTT",
                "--weighting",
                "posterior",
                "--rational",
            ],
            "P(next flip heads) = 13/45\n",
        ),
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out), want, "{args:?}");
    }
}

#[test]
fn coin_rejects_bad_sequences() {
    let out = run(&["coin", "--model", "fair", "--seq", "HHxT"]);
    assert!(!out.status.success());
    assert!(stdout(&out).is_empty());
}

#[test]
fn counterexample_is_deterministic_and_exact() {
    let first = run(&["counterexample"]);
    let second = run(&["counterexample"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("P(A | B, C) = 1\n"));
    assert!(text.contains("P(A | C) = 0.5\n"));
    assert!(text.contains("independent(A, B) = true"));

    let rational = stdout(&run(&["counterexample", "--rational"]));
    assert!(rational.contains("P(A | B, C) = 1\n"));
    assert!(rational.contains("P(A | C) = 1/2\n"));
}

#[test]
fn usage_errors_exit_nonzero_without_table_output() {
    let no_report = run(&["lr-a"]);
    assert!(!no_report.status.success());

    let two_reports = run(&["lr-a", "--report-loglr", "1", "--conclusion", "identified"]);
    assert!(!two_reports.status.success());

    let bad_step = run(&["fig2", "--step", "0"]);
    assert!(!bad_step.status.success());
    assert!(stdout(&bad_step).is_empty(), "no partial table on errors");

    let bad_range = run(&["fig2", "--x-min", "10", "--x-max", "-10"]);
    assert!(!bad_range.status.success());

    let bad_prior = run(&["lr-a", "--report-loglr", "1", "--tau1", "-3"]);
    assert!(!bad_prior.status.success());

    let bad_odds = run(&["lr-a", "--report-loglr", "1", "--prior-odds", "0"]);
    assert!(!bad_odds.status.success());
}
