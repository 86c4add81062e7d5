use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acphase_cli::{verify_algebra, verify_phase, RunOptions, RunReport, Scenario};
use clap::{Parser, Subcommand, ValueEnum};

/// Directory for `last_report.json`; defaults to `./acphase-reports`.
const REPORT_DIR_ENV: &str = "ACPHASE_REPORT_DIR";
const LAST_REPORT: &str = "last_report.json";

#[derive(Parser)]
#[command(name = "acphase", version, about = "Exact and numerical checks of the Aharonov-Casher phase for spin 1/2 and spin 1")]
struct Cli {
    /// Quadrature tolerance for loop integrals and chi.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the randomly sampled exact checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Coarse finite-difference step for the residual checks.
    #[arg(long = "grid-h", global = true)]
    grid_h: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every exact identity suite on the Dirac and Kemmer algebras.
    VerifyAlgebra {
        #[arg(long, hide = true)]
        perturb_beta: bool,
    },
    /// Run the phase verification described by a scenario file.
    VerifyPhase { scenario: PathBuf },
    /// Write the last (or a given) report as JSON or text.
    Report {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Output file; `-` for standard output.
        #[arg(long)]
        out: PathBuf,
        /// Report to convert; defaults to the last saved report.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn report_dir() -> PathBuf {
    std::env::var_os(REPORT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("acphase-reports"))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
    }
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn finish(report: RunReport) -> Result<ExitCode, String> {
    print!("{}", report.to_text());
    write(&report_dir().join(LAST_REPORT), &report.to_json())?;
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    for (flag, v) in [("--tol", cli.tol), ("--grid-h", cli.grid_h)] {
        if let Some(v) = v {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{flag} must be positive and finite, got {v}"));
            }
        }
    }
    let opts = RunOptions { tol: cli.tol, seed: cli.seed, grid_h: cli.grid_h, perturb_beta: false };
    match cli.command {
        Command::VerifyAlgebra { perturb_beta } => finish(verify_algebra(&RunOptions { perturb_beta, ..opts })),
        Command::VerifyPhase { scenario } => {
            let sc = Scenario::load(&scenario).map_err(|e| format!("{}: {e}", scenario.display()))?;
            finish(verify_phase(&sc, &opts))
        }
        Command::Report { format, out, input } => {
            let input = input.unwrap_or_else(|| report_dir().join(LAST_REPORT));
            let text = std::fs::read_to_string(&input).map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let report = RunReport::from_json(&text).map_err(|e| format!("{}: not a run report: {e}", input.display()))?;
            let rendered = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            write(&out, &rendered)?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
