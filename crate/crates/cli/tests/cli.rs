use bose_zeta::specfun::SeriesAccuracy;
use bose_zeta::thermo::{critical_density, density_subcritical};
use serde_json::Value;
use std::process::{Command, Output};

const ZETA3: f64 = 1.202_056_903_159_594_3;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bose-zeta"));
    for (key, _) in std::env::vars() {
        if key.starts_with("BOSEZETA_") {
            cmd.env_remove(key);
        }
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&run(args))).unwrap()
}

/// Data rows of a CSV document keyed by header, comment lines skipped.
fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let headers = reader.headers().unwrap().clone();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            headers
                .iter()
                .map(String::from)
                .zip(r.iter().map(String::from))
                .collect()
        })
        .collect()
}

fn field(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap()
}

#[test]
fn demo_geometric_rows() {
    let text = stdout(&run(&["demo-geometric", "--kappa-grid", "1,0.1"]));
    assert_eq!(text.lines().next(), Some("# bose-zeta v0.1.0"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2);
    assert!((field(&rows[0], "exact") - 1.0 / (std::f64::consts::E - 1.0)).abs() < 1e-15);
    assert!((field(&rows[1], "error") - 0.008332).abs() < 1e-6);
    assert!((field(&rows[1], "residual_numeric") - field(&rows[1], "error")).abs() < 1e-8);
}

#[test]
fn demo_geometric_rejects_bad_lists() {
    assert_eq!(run(&["demo-geometric"]).status.code(), Some(2));
    assert_eq!(
        run(&["demo-geometric", "--kappa-grid", ""]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["demo-geometric", "--kappa-grid", "0.5,-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn expand_subcritical_v2() {
    let args = ["expand", "--v", "2", "--beta", "1", "--mu", "-1"];
    let doc = json(&args);
    assert_eq!(doc["version"], "0.1.0");
    assert_eq!(doc["expansion"]["regime"], "subcritical");
    assert_eq!(doc["expansion"]["coeffs"].as_array().unwrap().len(), 3);
    assert_eq!(doc["expansion"]["log_coeff"].as_f64(), Some(0.0));
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn expand_density_in_one_dimension_is_rejected() {
    let out = run(&["expand", "--v", "1", "--rho", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no condensation in v=1"));
}

#[test]
fn expand_solves_mu_below_critical() {
    let acc = SeriesAccuracy::default();
    let rho = 0.1 * critical_density(3, 2.0, &acc).unwrap();
    let doc = json(&["expand", "--v", "3", "--beta", "2", "--rho", &rho.to_string()]);
    assert_eq!(doc["phase"]["phase"], "subcritical");
    assert_eq!(doc["expansion"]["regime"], "subcritical");
    let mu = doc["mu"].as_f64().unwrap();
    assert!(mu < 0.0);
    assert!((density_subcritical(3, 2.0, mu, &acc).unwrap() - rho).abs() < 1e-9);
}

#[test]
fn expand_above_critical_gives_renormalized_limit() {
    let doc = json(&["expand", "--v", "3", "--rho", "0.3"]);
    assert_eq!(doc["phase"]["phase"], "condensed");
    assert_eq!(doc["expansion"]["regime"], "condensed");
}

#[test]
fn sweep_subcritical_error_is_linear_in_kappa() {
    let text = stdout(&run(&[
        "sweep",
        "--v",
        "3",
        "--mu",
        "-1",
        "--kappa-grid",
        "0.1,0.05,0.025,0.0125",
    ]));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    let errs: Vec<f64> = rows.iter().map(|r| field(r, "abs_error")).collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.8..2.2).contains(&ratio), "{errs:?}");
    }
    for r in &rows {
        assert_eq!(r["status"], "ok");
        let gap = (field(r, "omega_oracle") - field(r, "omega_expansion")).abs();
        assert_eq!(gap, field(r, "abs_error"));
    }
}

#[test]
fn sweep_condensed_ground_state_density() {
    let text = stdout(&run(&[
        "sweep",
        "--v",
        "3",
        "--rho",
        "0.3",
        "--kappa-grid",
        "0.04,0.02,0.01,0.005,0.0025",
    ]));
    let rows = csv_rows(&text);
    let last = rows.last().unwrap();
    assert!((field(last, "ground_state_density") - (0.3 - ZETA3 / 8.0)).abs() < 1e-5);
    assert!((field(last, "ground_state_density") - 0.1497).abs() < 1e-4);
    assert!(text
        .lines()
        .any(|l| l.starts_with("# remainder_fit: empirical_order=")));
}

#[test]
fn sweep_records_point_failures_in_row() {
    let out = run(&["sweep", "--v", "3", "--rho", "0.3", "--kappa-grid", "2,0.5,0.1"]);
    let rows = csv_rows(&stdout(&out));
    assert!(rows[0]["status"].starts_with("error:"));
    assert!(rows[0]["omega_oracle"].is_empty());
    assert_eq!(rows[1]["status"], "ok");
    assert_eq!(rows[2]["status"], "ok");
}

#[test]
fn ascending_grid_is_a_config_error() {
    let out = run(&[
        "sweep",
        "--v",
        "3",
        "--mu",
        "-1",
        "--kappa-grid",
        "0.01,0.02,0.04",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("descending"));
}

#[test]
fn output_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (format, ext) in [("csv", "csv"), ("json", "json")] {
        let mut files = Vec::new();
        for workers in ["1", "3", "8"] {
            let path = dir.path().join(format!("w{workers}.{ext}"));
            let out = run(&[
                "sweep",
                "--v",
                "2",
                "--rho",
                "0.6",
                "--format",
                format,
                "--workers",
                workers,
                "--kappa-grid",
                "0.2,0.1,0.08,0.05,0.04,0.025,0.02,0.0125",
                "--out",
                path.to_str().unwrap(),
            ]);
            assert!(out.status.success());
            files.push(std::fs::read(&path).unwrap());
        }
        assert!(
            files.windows(2).all(|w| w[0] == w[1]),
            "{format} output depends on workers"
        );
    }
}

#[test]
fn sweep_json_carries_version_and_records() {
    let doc = json(&["sweep", "--v", "2", "--mu", "0", "--format", "json"]);
    assert_eq!(doc["version"], "0.1.0");
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 5);
    assert_eq!(records[0]["kappa"].as_f64(), Some(0.2));
    assert!(doc["summary"]["fit"]["fitted_log_coeff"].as_f64().is_some());
}

#[test]
fn compare_prints_summary_only() {
    let text = stdout(&run(&["compare", "--v", "2", "--mu", "0"]));
    assert!(!text.contains("omega_oracle"));
    let metrics: Vec<String> = csv_rows(&text).iter().map(|r| r["metric"].clone()).collect();
    assert!(metrics.contains(&"max_abs_error".to_string()));
    assert!(metrics.contains(&"fitted_log_coeff".to_string()));
    let doc = json(&["compare", "--v", "2", "--mu", "0", "--format", "json"]);
    assert!(doc.get("records").is_none());
    assert_eq!(doc["summary"]["points"], 5);
}

#[test]
fn phase_condensed() {
    let doc = json(&[
        "phase", "--v", "3", "--beta", "1", "--rho", "0.3", "--format", "json",
    ]);
    assert_eq!(doc["phase"], "condensed");
    assert!((doc["critical_density"].as_f64().unwrap() - 0.150257).abs() < 1e-6);
    assert!((doc["condensate_density"].as_f64().unwrap() - 0.149743).abs() < 1e-6);
    assert_eq!(doc["renormalized_mu"]["v"], 3);
    let text = stdout(&run(&["phase", "--v", "3", "--rho", "0.3"]));
    assert!(text.starts_with("phase: condensed\n"));
}

#[test]
fn phase_subcritical_solves_mu() {
    let doc = json(&["phase", "--v", "2", "--rho", "0.2", "--format", "json"]);
    assert_eq!(doc["phase"], "subcritical");
    let mu = doc["mu"].as_f64().unwrap();
    let acc = SeriesAccuracy::default();
    assert!((density_subcritical(2, 1.0, mu, &acc).unwrap() - 0.2).abs() < 1e-9);
}

#[test]
fn phase_one_dimension_notes_infinite_critical_density() {
    let text = stdout(&run(&["phase", "--v", "1", "--rho", "5"]));
    assert!(text.starts_with("phase: subcritical\n"));
    assert!(text.contains("critical_density: infinite"));
    assert!(text.contains("critical density infinite"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["phase", "--v", "0", "--rho", "1"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--v", "3", "--mu", "0.5"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--v", "3", "--mu", "-1", "--rho", "0.1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["sweep", "--v", "3", "--mu", "-1", "--workers", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["expand", "--v", "3", "--beta", "-1", "--mu", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["expand", "--v", "3", "--rho", "0.01", "--max-terms", "2"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["phase", "--v", "3", "--rho", "0.01", "--max-terms", "2"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn environment_supplies_defaults() {
    let out = bin()
        .args(["expand"])
        .env("BOSEZETA_V", "2")
        .env("BOSEZETA_MU", "-1")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["v"], 2);
    let flag = json(&["expand", "--v", "2", "--mu", "-1"]);
    assert_eq!(doc, flag);
}
