#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary from the fixture directory.
pub fn apspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apspectra"))
        .args(args)
        .current_dir(fixtures())
        .env_clear()
        .output()
        .expect("binary runs")
}

/// One golden case per subcommand and output mode.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    (
        "mean",
        &["mean", "--signal", "shifted.json", "--offset", "3"],
    ),
    (
        "coeff",
        &[
            "coeff",
            "--signal",
            "planted.json",
            "--lambda",
            "1.4142135623730951",
            "--tol",
            "1e-4",
        ],
    ),
    ("coeff_config", &["coeff", "--config", "coeff_config.json"]),
    (
        "scan",
        &[
            "scan",
            "--signal",
            "planted.json",
            "--range",
            "0",
            "3",
            "--step",
            "0.01",
            "--threshold",
            "0.5",
        ],
    ),
    (
        "scan_zero",
        &[
            "scan",
            "--signal",
            "zero.json",
            "--range",
            "0",
            "3",
            "--step",
            "0.01",
            "--threshold",
            "0.5",
        ],
    ),
    (
        "scan_csv",
        &[
            "scan",
            "--signal",
            "planted.json",
            "--range",
            "0.9",
            "1.1",
            "--step",
            "0.01",
            "--threshold",
            "0.5",
            "--format",
            "csv",
        ],
    ),
    (
        "periods",
        &[
            "periods",
            "--signal",
            "ap.json",
            "--epsilon",
            "0.2",
            "--range",
            "0",
            "300",
            "--step",
            "0.01",
        ],
    ),
    (
        "periods_csv",
        &[
            "periods",
            "--signal",
            "ap.json",
            "--epsilon",
            "0.2",
            "--range",
            "0",
            "100",
            "--step",
            "0.01",
            "--format",
            "csv",
        ],
    ),
    (
        "variation_interval",
        &[
            "variation",
            "--signal",
            "sine.json",
            "--range",
            "0",
            "6.283185307179586",
        ],
    ),
    ("variation_average", &["variation", "--signal", "sine.json"]),
    (
        "bound_check",
        &["bound-check", "--signal", "planted.json", "--n", "1"],
    ),
    (
        "bound_check_csv",
        &[
            "bound-check",
            "--signal",
            "planted.json",
            "--lambda",
            "1",
            "--lambda",
            "-2",
            "--format",
            "csv",
        ],
    ),
    (
        "taibleson",
        &["taibleson", "--signal", "sine_periodic.json"],
    ),
    (
        "zeta_bound",
        &[
            "zeta", "--x", "0.5", "--N", "3", "--J", "0", "--mode", "bound",
        ],
    ),
    (
        "zeta_eval_csv",
        &[
            "zeta", "--x", "0.5", "--N", "3", "--mode", "eval", "--range", "0", "5", "--format",
            "csv",
        ],
    ),
    (
        "zeta_spectrum",
        &[
            "zeta",
            "--x",
            "0.5",
            "--N",
            "3",
            "--mode",
            "spectrum",
            "--threshold",
            "0.3",
        ],
    ),
    (
        "zeta_signal_variation",
        &["variation", "--zeta-x", "0.5", "--zeta-N", "2", "--J", "1"],
    ),
];

pub struct GoldenOutcome {
    pub name: &'static str,
    pub deterministic: bool,
    /// `None` when the golden file did not exist and was written.
    pub matches_golden: Option<bool>,
    pub exit: Option<i32>,
}

/// Runs a case twice and compares stdout with its golden file, writing the
/// golden file on first use.
pub fn check_golden(name: &'static str, args: &[&str]) -> GoldenOutcome {
    let first = apspectra(args);
    let second = apspectra(args);
    let deterministic =
        first.stdout == second.stdout && first.status.code() == second.status.code();
    let path = golden_dir().join(format!("{name}.out"));
    let matches_golden = match std::fs::read(&path) {
        Ok(golden) => Some(golden == first.stdout),
        Err(_) => {
            std::fs::write(&path, &first.stdout).expect("golden file written");
            None
        }
    };
    GoldenOutcome {
        name,
        deterministic,
        matches_golden,
        exit: first.status.code(),
    }
}
