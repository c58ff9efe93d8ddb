//! `bose-zeta`: small-trap expansions of the trapped ideal Bose gas, checked
//! against the exact level sum.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 when a numerical kernel
//! fails, 1 for I/O errors.

mod config;
mod output;
mod run;

use bose_zeta::expansion::{geometric_demo, AsymptoticExpansion, Regime};
use bose_zeta::thermo::{condensate_density, PhaseReport, StateSpec};
use clap::{Parser, Subcommand};
use config::{AccuracyArgs, Format, GridArgs, OutputArgs, RunConfig, State, StateArgs};
use output::{num, opt_num, VERSION};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<bose_zeta::Error> for CliError {
    fn from(e: bose_zeta::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "bose-zeta",
    version,
    about = "Small-trap asymptotics of the trapped ideal Bose gas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mellin-Barnes expansion of 1/(e^κ - 1) next to the exact value.
    DemoGeometric {
        /// Values of κ, comma separated.
        #[arg(long, env = "BOSEZETA_KAPPA_GRID", value_delimiter = ',', required = true)]
        kappa_grid: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coefficients of the small-κ expansion of the grand potential, as JSON.
    Expand {
        #[command(flatten)]
        state: StateArgs,
        /// Write to this file instead of stdout.
        #[arg(long, env = "BOSEZETA_OUT")]
        out: Option<PathBuf>,
    },
    /// Oracle against expansion over a κ grid, one row per κ.
    Sweep {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Like `sweep` but prints only the error summary.
    Compare {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Phase of the gas at a given density.
    Phase {
        #[arg(long = "v", env = "BOSEZETA_V")]
        v: u32,
        #[arg(long, env = "BOSEZETA_BETA", default_value_t = 1.0)]
        beta: f64,
        #[arg(long, env = "BOSEZETA_RHO", allow_negative_numbers = true)]
        rho: f64,
        #[command(flatten)]
        accuracy: AccuracyArgs,
        /// Plain text unless a format is given.
        #[arg(long, value_enum, env = "BOSEZETA_FORMAT")]
        format: Option<Format>,
        #[arg(long, env = "BOSEZETA_OUT")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::DemoGeometric { kappa_grid, output } => cmd_demo_geometric(&kappa_grid, &output),
        Command::Expand { state, out } => cmd_expand(&state, out.as_deref()),
        Command::Sweep { state, grid, output } => cmd_sweep(&state, &grid, &output, false),
        Command::Compare { state, grid, output } => cmd_sweep(&state, &grid, &output, true),
        Command::Phase {
            v,
            beta,
            rho,
            accuracy,
            format,
            out,
        } => cmd_phase(v, beta, rho, &accuracy, format, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bose-zeta: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_demo_geometric(kappas: &[f64], output: &OutputArgs) -> Result<(), CliError> {
    if kappas.is_empty() {
        return Err(CliError::Config("--kappa-grid is empty".into()));
    }
    if let Some(k) = kappas.iter().find(|k| !(**k > 0.0) || !k.is_finite()) {
        return Err(CliError::Config(format!(
            "kappa must be positive and finite, got {k}"
        )));
    }
    let rows = kappas
        .iter()
        .map(|&k| geometric_demo(k))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a, T> {
                version: &'a str,
                rows: &'a [T],
            }
            output::json(&Doc {
                version: VERSION,
                rows: &rows,
            })?
        }
        Format::Csv => output::csv_table(
            &[output::version_line()],
            &["kappa", "exact", "asymptotic", "residual_numeric", "error"],
            &rows
                .iter()
                .map(|d| {
                    vec![
                        num(d.kappa),
                        num(d.exact),
                        num(d.asymptotic),
                        num(d.residual_numeric),
                        num(d.error),
                    ]
                })
                .collect::<Vec<_>>(),
            &[],
        )?,
    };
    output::emit(&text, output.out.as_deref())
}

#[derive(Serialize)]
struct ExpandDoc<'a> {
    version: &'a str,
    v: u32,
    beta: f64,
    state: State,
    abs_tol: f64,
    #[serde(flatten)]
    phase: &'a PhaseReport,
    expansion: &'a AsymptoticExpansion,
}

fn cmd_expand(state: &StateArgs, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let cfg = RunConfig::from_args(state, None)?;
    let report = run::classify(&cfg)?;
    let expansion = run::limit_expansion(&cfg, &report)?;
    let doc = ExpandDoc {
        version: VERSION,
        v: cfg.v,
        beta: cfg.beta,
        state: cfg.state,
        abs_tol: cfg.accuracy.abs_tol,
        phase: &report,
        expansion: &expansion,
    };
    output::emit(&output::json(&doc)?, out)
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Subcritical => "subcritical",
        Regime::Critical => "critical",
        Regime::Condensed => "condensed",
    }
}

fn cmd_sweep(
    state: &StateArgs,
    grid: &GridArgs,
    out: &OutputArgs,
    summary_only: bool,
) -> Result<(), CliError> {
    let cfg = RunConfig::from_args(state, Some(grid))?;
    let report = run::classify(&cfg)?;
    let plan = run::plan(&cfg, &report)?;
    let points = run::sweep(&cfg, &plan)?;
    let summary = run::summarize(&points);
    let command = if summary_only { "compare" } else { "sweep" };
    let text = match out.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                version: &'a str,
                command: &'a str,
                config: config::ConfigEcho<'a>,
                #[serde(flatten)]
                phase: &'a PhaseReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                records: Option<Vec<output::JsonRow<'a>>>,
                summary: &'a run::SweepSummary,
            }
            output::json(&Doc {
                version: VERSION,
                command,
                config: cfg.echo(),
                phase: &report,
                records: (!summary_only).then(|| output::json_rows(&points)),
                summary: &summary,
            })?
        }
        Format::Csv => {
            let state_desc = match cfg.state {
                State::Mu(mu) => format!("mu={}", num(mu)),
                State::Rho(rho) => format!("rho={}", num(rho)),
            };
            let comments = vec![
                output::version_line(),
                format!(
                    "# {command} v={} beta={} {state_desc} regime={} abs_tol={} max_terms={}",
                    cfg.v,
                    num(cfg.beta),
                    regime_name(report.phase.regime()),
                    num(cfg.accuracy.abs_tol),
                    cfg.accuracy.max_terms
                ),
            ];
            if summary_only {
                let s = &summary;
                let mut rows = vec![
                    vec!["points".into(), s.points.to_string()],
                    vec!["failed".into(), s.failed.to_string()],
                    vec!["max_abs_error".into(), opt_num(s.max_abs_error)],
                ];
                if let Some(f) = &s.fit {
                    rows.push(vec!["empirical_order".into(), num(f.empirical_order)]);
                    rows.push(vec!["fitted_log_coeff".into(), num(f.fitted_log_coeff)]);
                    rows.push(vec!["fitted_const".into(), num(f.fitted_const)]);
                    rows.push(vec!["fitted_linear".into(), num(f.fitted_linear)]);
                    rows.push(vec!["max_misfit".into(), num(f.max_misfit)]);
                }
                let footer = s
                    .fit_unavailable
                    .iter()
                    .map(|r| format!("# remainder_fit: unavailable: {r}"))
                    .collect::<Vec<_>>();
                output::csv_table(&comments, &["metric", "value"], &rows, &footer)?
            } else {
                output::csv_table(
                    &comments,
                    &output::SWEEP_COLUMNS,
                    &output::sweep_rows(&points),
                    &output::summary_lines(&summary),
                )?
            }
        }
    };
    output::emit(&text, out.out.as_deref())
}

#[derive(Serialize)]
struct Renormalized {
    formula: &'static str,
    v: u32,
    beta: f64,
    excess_density: f64,
}

#[derive(Serialize)]
struct PhaseDoc<'a> {
    version: &'a str,
    v: u32,
    beta: f64,
    rho: f64,
    phase: &'static str,
    critical_density: Option<f64>,
    condensate_density: Option<f64>,
    mu: Option<f64>,
    renormalized_mu: Option<Renormalized>,
    note: Option<&'static str>,
}

const MU_FORMULA: &str = "mu(kappa) = v*kappa - kappa^v / (beta * excess_density)";

fn cmd_phase(
    v: u32,
    beta: f64,
    rho: f64,
    accuracy: &AccuracyArgs,
    format: Option<Format>,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let v = config::check_dimension(v)?;
    let beta = config::check_beta(beta)?;
    let rho = config::check_density(rho)?;
    let acc = config::accuracy(accuracy)?;
    let report = bose_zeta::thermo::classify_phase(v, beta, StateSpec::Density(rho), &acc)?;
    let regime = report.phase.regime();
    let condensate = match regime {
        Regime::Condensed => Some(condensate_density(v, beta, rho, &acc)?),
        _ => None,
    };
    let doc = PhaseDoc {
        version: VERSION,
        v,
        beta,
        rho,
        phase: regime_name(regime),
        critical_density: report.critical_density,
        condensate_density: condensate,
        mu: report.mu,
        renormalized_mu: condensate.map(|excess| Renormalized {
            formula: MU_FORMULA,
            v,
            beta,
            excess_density: excess,
        }),
        note: (v == 1).then_some("critical density infinite for v=1; every density is subcritical"),
    };
    let text = match format {
        Some(Format::Json) => output::json(&doc)?,
        Some(Format::Csv) => {
            let rows: Vec<Vec<String>> = phase_lines(&doc)
                .into_iter()
                .map(|(k, val)| vec![k.to_string(), val])
                .collect();
            output::csv_table(&[output::version_line()], &["key", "value"], &rows, &[])?
        }
        None => phase_lines(&doc)
            .into_iter()
            .map(|(k, val)| format!("{k}: {val}\n"))
            .collect(),
    };
    output::emit(&text, out)
}

fn phase_lines(doc: &PhaseDoc) -> Vec<(&'static str, String)> {
    let mut lines = vec![("phase", doc.phase.to_string())];
    lines.push((
        "critical_density",
        doc.critical_density.map(num).unwrap_or_else(|| "infinite".into()),
    ));
    if let Some(c) = doc.condensate_density {
        lines.push(("condensate_density", num(c)));
    }
    match (&doc.renormalized_mu, doc.mu) {
        (Some(r), _) => {
            lines.push(("renormalized_mu", r.formula.to_string()));
            lines.push((
                "renormalized_mu_parameters",
                format!(
                    "v={} beta={} excess_density={}",
                    r.v,
                    num(r.beta),
                    num(r.excess_density)
                ),
            ));
        }
        (None, Some(mu)) => lines.push(("mu", num(mu))),
        (None, None) => lines.push(("mu", "below f64 resolution of 0".into())),
    }
    if let Some(note) = doc.note {
        lines.push(("note", note.to_string()));
    }
    lines
}
