//! End-to-end CLI tests: exit-code contract, file schemas, determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_rabi-spectra")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .expect("binary runs")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rabi_spectra_cli_{tag}_{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn spectrum_decoupled_matches_closed_form() {
    let dir = tmp_dir("spectrum");
    let out = run_in(
        &dir,
        &[
            "spectrum",
            "--model",
            "2qrm",
            "--g",
            "0",
            "--delta",
            "0.7",
            "--epsilon",
            "0",
            "--N",
            "6",
            "--sector",
            "full",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = read(&dir, "spectrum.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "index,eigenvalue,certified");
    let got: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let mut expected: Vec<f64> = (0..6)
        .flat_map(|n| [n as f64 + 0.5 - 0.7, n as f64 + 0.5 + 0.7])
        .collect();
    expected.sort_by(f64::total_cmp);
    assert_eq!(got, expected, "CSV floats round-trip the exact spectrum");

    // JSON carries the envelope fields in stable order
    let json = read(&dir, "spectrum.json");
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in ["command", "config", "results", "certificates"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert!(dir.join("run_meta.json").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let d1 = tmp_dir("det1");
    let d2 = tmp_dir("det2");
    let args = [
        "spectrum",
        "--model",
        "ncho",
        "--alpha",
        "3",
        "--beta",
        "2",
        "--eta",
        "0.5",
        "--N",
        "40",
        "--sector",
        "even",
        "--certify",
    ];
    assert!(run_in(&d1, &args).status.success());
    assert!(run_in(&d2, &args).status.success());
    assert_eq!(read(&d1, "spectrum.csv"), read(&d2, "spectrum.csv"));
    assert_eq!(read(&d1, "spectrum.json"), read(&d2, "spectrum.json"));
}

#[test]
fn verify_exit_codes() {
    let dir = tmp_dir("verify");
    // a sound forward check passes
    let out = run_in(
        &dir,
        &[
            "verify",
            "--check",
            "ncho-to-2qrm",
            "--alpha",
            "2",
            "--beta",
            "2",
            "--levels",
            "3",
            "--N",
            "80",
            "--sector",
            "even",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(&dir, "verify.csv");
    assert!(csv.lines().count() >= 4);
    assert!(csv.contains("matched"));

    // the collapse regime runs but refuses to assert a pass
    let out = run_in(
        &dir,
        &[
            "verify",
            "--check",
            "2qrm-to-ncho",
            "--g",
            "0.5",
            "--delta",
            "0",
            "--levels",
            "3",
            "--N",
            "40",
            "--sector",
            "even",
        ],
    );
    assert_eq!(out.status.code(), Some(1), "collapse regime must refuse");
    let doc: serde_json::Value = serde_json::from_str(&read(&dir, "verify.json")).unwrap();
    assert_eq!(
        doc["certificates"]["unreliable"],
        serde_json::Value::Bool(true)
    );

    // config errors exit 2
    let out = run_in(&dir, &["verify", "--check", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(&dir, &["verify", "--check", "ncho-to-2qrm", "--beta", "2"]);
    assert_eq!(out.status.code(), Some(2), "missing --alpha");
}

#[test]
fn dictionary_check_passes_exactly() {
    let dir = tmp_dir("dict");
    let out = run_in(
        &dir,
        &["verify", "--check", "basis-dictionary", "--N", "200"],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = read(&dir, "verify.csv");
    for line in csv.lines().skip(1) {
        assert!(line.ends_with(",0"), "nonzero deviation in {line}");
    }
}

#[test]
fn config_file_defaults_and_flag_precedence() {
    let dir = tmp_dir("config");
    let cfg = dir.join("defaults.toml");
    fs::write(&cfg, "truncation = 4\nlevels = 2\n").unwrap();

    // file value applies when no flag is given: N = 4 gives 8 eigenvalues
    let out = Command::new(bin())
        .args(["spectrum", "--model", "1qrm", "--gp", "0.2"])
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "--out-dir",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(read(&dir, "spectrum.csv").lines().count(), 1 + 8);

    // flag overrides the file: N = 6 gives 12 eigenvalues
    let out = Command::new(bin())
        .args(["spectrum", "--model", "1qrm", "--gp", "0.2", "--N", "6"])
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "--out-dir",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(read(&dir, "spectrum.csv").lines().count(), 1 + 12);

    // malformed config exits 2
    fs::write(&cfg, "truncation = \"many\"\n").unwrap();
    let out = Command::new(bin())
        .args(["spectrum", "--model", "1qrm", "--gp", "0.2"])
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "--out-dir",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_dump_schema() {
    let dir = tmp_dir("dump");
    let out = run_in(
        &dir,
        &[
            "dump-matrix",
            "--model",
            "disk",
            "--nu",
            "1.5",
            "--g",
            "0.2",
            "--delta",
            "0.3",
            "--N",
            "4",
        ],
    );
    assert!(out.status.success());
    let dump = read(&dir, "matrix.txt");
    let mut lines = dump.lines();
    let header = lines.next().unwrap();
    assert!(
        header.starts_with("8 bergman:nu=1.5 disk "),
        "header was {header}"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    for row in rows {
        // 8 entries as re/imag pairs
        assert_eq!(row.split_whitespace().count(), 16);
    }
}

#[test]
fn negative_parameters_are_accepted() {
    let dir = tmp_dir("neg");
    let out = run_in(
        &dir,
        &[
            "verify",
            "--check",
            "parity-disk",
            "--g",
            "-0.3",
            "--delta",
            "-1.2",
            "--epsilon",
            "-0.6",
            "--N",
            "50",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = run_in(
        &dir,
        &[
            "spectrum", "--model", "2qrm", "--g", "-0.2", "--delta", "-0.5", "--N", "20",
        ],
    );
    assert!(out.status.success());
}

#[test]
fn degeneracy_empty_sweep() {
    let dir = tmp_dir("deg");
    let out = run_in(
        &dir,
        &[
            "degeneracy",
            "--model",
            "1qrm",
            "--gp",
            "0.1",
            "--dp",
            "2.0",
            "--ep",
            "0",
            "--sweep",
            "g",
            "--from",
            "0.08",
            "--to",
            "0.12",
            "--grid",
            "9",
            "--levels",
            "3",
            "--N",
            "60",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = read(&dir, "crossings.csv");
    assert_eq!(csv.lines().count(), 1, "only the header for a quiet window");
}

#[test]
fn sequential_and_parallel_agree() {
    let d1 = tmp_dir("jobs1");
    let d2 = tmp_dir("jobsN");
    let args = [
        "verify",
        "--check",
        "ncho-to-2qrm",
        "--alpha",
        "3",
        "--beta",
        "2",
        "--levels",
        "3",
        "--N",
        "60",
        "--sector",
        "both",
    ];
    let run = |dir: &Path, jobs: &str| {
        Command::new(bin())
            .args(args)
            .args(["--jobs", jobs, "--out-dir", dir.to_str().unwrap()])
            .output()
            .unwrap()
    };
    let o1 = run(&d1, "1");
    assert!(
        o1.status.success(),
        "jobs=1: {}",
        String::from_utf8_lossy(&o1.stderr)
    );
    let o2 = run(&d2, "0");
    assert!(
        o2.status.success(),
        "jobs=0: {}",
        String::from_utf8_lossy(&o2.stderr)
    );
    assert_eq!(read(&d1, "verify.csv"), read(&d2, "verify.csv"));
    // the JSON config echoes the dispatch mode; the data must agree bitwise
    let j1: serde_json::Value = serde_json::from_str(&read(&d1, "verify.json")).unwrap();
    let j2: serde_json::Value = serde_json::from_str(&read(&d2, "verify.json")).unwrap();
    assert_eq!(j1["results"], j2["results"]);
    assert_eq!(j1["certificates"], j2["certificates"]);
}
