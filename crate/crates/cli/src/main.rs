use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curvkit_cli::commands::{run, CliError, Command};
use curvkit_cli::config::{Overrides, RunConfig, YamabeMode};
use curvkit_cli::report::{Report, Status};

#[derive(Parser)]
#[command(name = "curvkit", version, about = "Curvature pinching checks on discretized Riemannian metrics")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Curvature statistics and oracle comparison across the resolution ladder.
    Analyze(Opts),
    /// Pinching hypotheses and integral conditions at the finest resolution.
    Check(Opts),
    /// Discrete identities and inequalities with convergence orders.
    Verify(Opts),
    /// Randomized algebraic estimates.
    Sample(Opts),
    /// Constant table for n = 4..8.
    Constants(Opts),
}

#[derive(Args)]
struct Opts {
    /// Geometry spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Resolution ladder, e.g. 8,12,16.
    #[arg(long, value_delimiter = ',')]
    resolution: Option<Vec<usize>>,
    #[arg(long)]
    stencil_order: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// exact, trial or user:VALUE.
    #[arg(long)]
    yamabe: Option<YamabeMode>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn execute(cmd: Command, o: &Opts) -> Result<Report, CliError> {
    let text = match &o.spec {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })?),
        None => None,
    };
    let path = o.spec.as_ref().map(|p| p.display().to_string());
    let spec = path.as_deref().zip(text.as_deref());
    let overrides = Overrides {
        resolutions: o.resolution.clone(),
        stencil_order: o.stencil_order,
        tolerance: o.tolerance,
        margin: o.margin,
        samples: o.samples,
        seed: o.seed,
        yamabe: o.yamabe,
    };
    let cfg = RunConfig::load(spec, &overrides)?;
    run(cmd, &cfg)
}

fn summarize(report: &Report) {
    for r in &report.records {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A ",
            Status::Info => "INFO",
        };
        let detail = match (r.lhs, r.rhs) {
            (Some(l), Some(rhs)) => format!("  lhs={l:.6e} rhs={rhs:.6e}"),
            _ => String::new(),
        };
        let note = r.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
        eprintln!("{status} {}{detail}{note}", r.name);
    }
    let s = &report.summary;
    eprintln!(
        "{} passed, {} failed, {} not applicable, {} informational",
        s.passed, s.failed, s.not_applicable, s.informational
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, opts) = match &cli.command {
        Sub::Analyze(o) => (Command::Analyze, o),
        Sub::Check(o) => (Command::Check, o),
        Sub::Verify(o) => (Command::Verify, o),
        Sub::Sample(o) => (Command::Sample, o),
        Sub::Constants(o) => (Command::Constants, o),
    };
    let report = match execute(cmd, opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let json = report.to_json();
    match &opts.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    summarize(&report);
    ExitCode::from(if report.has_failures() { 1 } else { 0 })
}
