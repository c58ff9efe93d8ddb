use crate::run::{SweepPoint, SweepSummary};
use crate::CliError;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn version_line() -> String {
    format!("# bose-zeta v{VERSION}")
}

/// Shortest round-trip decimal; exponent form outside [1e-4, 1e15).
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Comment lines, then an RFC 4180 table.
pub fn csv_table(
    comments: &[String],
    header: &[&str],
    rows: &[Vec<String>],
    footer: &[String],
) -> Result<String, CliError> {
    let mut body = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    body.write_record(header).map_err(io)?;
    for row in rows {
        body.write_record(row).map_err(io)?;
    }
    let body = body.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    let mut s = String::new();
    for c in comments {
        s.push_str(c);
        s.push('\n');
    }
    s.push_str(&String::from_utf8_lossy(&body));
    for c in footer {
        s.push_str(c);
        s.push('\n');
    }
    Ok(s)
}

pub const SWEEP_COLUMNS: [&str; 8] = [
    "kappa",
    "omega_oracle",
    "omega_expansion",
    "abs_error",
    "particle_density",
    "ground_state_density",
    "energy_density",
    "status",
];

pub fn sweep_rows(points: &[SweepPoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| match &p.outcome {
            Ok((r, _)) => vec![
                num(r.kappa),
                num(r.omega_oracle),
                num(r.omega_expansion),
                num(r.abs_error),
                num(r.particle_density),
                num(r.ground_state_density),
                num(r.energy_density),
                "ok".into(),
            ],
            Err(msg) => {
                let mut row = vec![num(p.kappa)];
                row.extend(std::iter::repeat_n(String::new(), 6));
                row.push(format!("error: {msg}"));
                row
            }
        })
        .collect()
}

pub fn summary_lines(s: &SweepSummary) -> Vec<String> {
    let mut lines = vec![
        format!("# points: {} ({} failed)", s.points, s.failed),
        format!("# max_abs_error: {}", opt_num(s.max_abs_error)),
    ];
    let ratios: Vec<String> = s.error_ratios.iter().map(|r| num(*r)).collect();
    lines.push(format!("# error_ratios: {}", ratios.join(" ")));
    match (&s.fit, &s.fit_unavailable) {
        (Some(f), _) => lines.push(format!(
            "# remainder_fit: empirical_order={} fitted_log_coeff={} fitted_const={} fitted_linear={} max_misfit={}",
            num(f.empirical_order),
            num(f.fitted_log_coeff),
            num(f.fitted_const),
            num(f.fitted_linear),
            num(f.max_misfit)
        )),
        (None, Some(reason)) => lines.push(format!("# remainder_fit: unavailable: {reason}")),
        (None, None) => lines.push("# remainder_fit: unavailable".into()),
    }
    lines
}

#[derive(Serialize)]
pub struct JsonRow<'a> {
    pub kappa: f64,
    pub omega_oracle: Option<f64>,
    pub omega_expansion: Option<f64>,
    pub abs_error: Option<f64>,
    pub particle_density: Option<f64>,
    pub ground_state_density: Option<f64>,
    pub energy_density: Option<f64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<&'a str>,
}

pub fn json_rows(points: &[SweepPoint]) -> Vec<JsonRow<'_>> {
    points
        .iter()
        .map(|p| {
            let r = p.record();
            JsonRow {
                kappa: p.kappa,
                omega_oracle: r.map(|r| r.omega_oracle),
                omega_expansion: r.map(|r| r.omega_expansion),
                abs_error: r.map(|r| r.abs_error),
                particle_density: r.map(|r| r.particle_density),
                ground_state_density: r.map(|r| r.ground_state_density),
                energy_density: r.map(|r| r.energy_density),
                status: if r.is_some() { "ok" } else { "error" },
                error: p.outcome.as_ref().err().map(String::as_str),
            }
        })
        .collect()
}
