//! Smoke tests for the CLI surface: argument handling and output shapes.

use std::path::Path;
use std::process::Command;

const EXAMPLE_CODE: &str = "n=3 m=2\n1+D D 1+D\nD 1 1\n";
const MONOMIAL_CODE: &str = "n=3 m=2\n1 D D^3\nD^3 D^2 1\n";
const FIXTURE_ERRORS: &str = "000\n100\n000\n100\n000\n";

fn etrellis(dir: &Path, args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_etrellis"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap();
    (
        out.status.success(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn workspace(files: &[(&str, &str)]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, content) in files {
        std::fs::write(dir.path().join(name), content).unwrap();
    }
    dir
}

#[test]
fn modules_branch_dump() {
    let dir = workspace(&[("ex.code", EXAMPLE_CODE)]);
    let (ok, stdout, _) = etrellis(
        dir.path(),
        &["modules", "--code", "ex.code", "--out", "mods.txt"],
    );
    assert!(ok);
    assert!(stdout.contains("wrote 4 modules (4 states each)"));
    let dump = std::fs::read_to_string(dir.path().join("mods.txt")).unwrap();
    // 4 modules x 4 states x 2 branches
    let lines: Vec<&str> = dump.lines().filter(|l| l.starts_with("t=")).collect();
    assert_eq!(lines.len(), 32);
    assert!(lines
        .iter()
        .all(|l| l.contains("zeta=") && l.contains("from=") && l.contains("e=") && l.contains("to=")));
}

#[test]
fn modules_row_subset_and_graph_format() {
    let dir = workspace(&[("ex.code", EXAMPLE_CODE)]);
    let (ok, stdout, _) = etrellis(
        dir.path(),
        &[
            "modules",
            "--code",
            "ex.code",
            "--rows",
            "2",
            "--format",
            "graph",
            "--out",
            "mods.dot",
        ],
    );
    assert!(ok);
    assert!(stdout.contains("wrote 2 modules (2 states each)"));
    let dump = std::fs::read_to_string(dir.path().join("mods.dot")).unwrap();
    assert!(dump.contains("digraph"));
}

#[test]
fn decode_all_three_decoders() {
    let dir = workspace(&[("ex.code", EXAMPLE_CODE), ("e.txt", FIXTURE_ERRORS)]);
    let base = ["decode", "--code", "ex.code", "--errors", "e.txt"];

    let (ok, stdout, _) = etrellis(dir.path(), &[&base[..], &["--decoder", "ml"]].concat());
    assert!(ok);
    assert!(stdout.contains("decoded path: 000 100 000 100 000"));
    assert!(stdout.contains("weight: 2"));
    assert!(stdout.contains("stats: survivors="));

    let (ok, stdout, _) = etrellis(
        dir.path(),
        &[&base[..], &["--decoder", "degenerate", "--rows", "1"]].concat(),
    );
    assert!(ok);
    assert!(stdout.contains("decoded path: 000 100 000 100 000"));

    let (ok, stdout, _) = etrellis(
        dir.path(),
        &[&base[..], &["--decoder", "one-state", "--row", "2", "--m", "4"]].concat(),
    );
    assert!(ok);
    assert!(stdout.contains("shifted path: 000 000 100 000 100 000"));
    assert!(stdout.contains("decoded path: 000 100 000 100 000"));
}

#[test]
fn decode_rejects_zero_based_row() {
    let dir = workspace(&[("ex.code", EXAMPLE_CODE), ("e.txt", FIXTURE_ERRORS)]);
    let (ok, _, stderr) = etrellis(
        dir.path(),
        &[
            "decode",
            "--code",
            "ex.code",
            "--errors",
            "e.txt",
            "--decoder",
            "one-state",
            "--row",
            "0",
        ],
    );
    assert!(!ok);
    assert!(stderr.contains("1-based"));
}

#[test]
fn analyze_concentration_csv() {
    let dir = workspace(&[("mono.code", MONOMIAL_CODE)]);
    let (ok, _, _) = etrellis(
        dir.path(),
        &[
            "analyze",
            "--code",
            "mono.code",
            "--row",
            "1",
            "--epsilons",
            "0.1,0.01,0.001",
            "--out",
            "conc.csv",
        ],
    );
    assert!(ok);
    let csv = std::fs::read_to_string(dir.path().join("conc.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "epsilon,q0,q1to4,q5to6,sum");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3], "0.001,0.990049,0.001982,0.000991,0.999959");
}

#[test]
fn simulate_csv_shape() {
    let dir = workspace(&[("ex.code", EXAMPLE_CODE)]);
    let (ok, _, _) = etrellis(
        dir.path(),
        &[
            "simulate",
            "--code",
            "ex.code",
            "--decoder",
            "ml",
            "--epsilon",
            "0.01,0.05",
            "--length",
            "6",
            "--trials",
            "20",
            "--seed",
            "7",
            "--out",
            "sim.csv",
        ],
    );
    assert!(ok);
    let csv = std::fs::read_to_string(dir.path().join("sim.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3, "header plus one row per epsilon");
    assert_eq!(
        lines[0],
        "epsilon,trials,decode_failures,bit_errors_after_decode,avg_decoded_weight,avg_true_weight,ml_match_rate"
    );
    assert!(lines[1].starts_with("0.01,20,"));
    assert!(lines[2].starts_with("0.05,20,"));
}
