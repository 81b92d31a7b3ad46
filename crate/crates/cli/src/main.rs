mod commands;
mod config;
mod output;
mod reproduce;

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use config::{Cli, CommandConfig, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(#[from] tfzero::Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}

/// Ok(true) when every claim passed.
fn execute(cfg: &RunConfig) -> Result<bool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build_global()
        .map_err(|e| CliError::Io(e.to_string()))?;
    match &cfg.command {
        CommandConfig::Eval { pair, params, grid, point, out } => {
            commands::eval(*pair, params.as_ref(), grid.as_ref(), *point, out.as_deref())?
        }
        CommandConfig::Scan { spec, pair, grid, zero_tol, out, heatmap } => {
            let target = match (spec, pair) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("--spec {}: {e}", path.display())))?;
                    commands::ScanTarget::from_json(&text)?
                }
                (None, Some(id)) => commands::ScanTarget::Kernel(tfzero::kernels::KernelPair::reference(*id)),
                (None, None) => return Err(CliError::Usage("scan needs --spec or --pair".into())),
            };
            commands::scan_cmd(&target, grid, *zero_tol, out.as_deref(), heatmap.as_deref())?
        }
        CommandConfig::Hurwitz { an, coeffs, out } => commands::hurwitz(*an, coeffs.as_deref(), out.as_deref())?,
        CommandConfig::Polyb { p, q, scan, grid, zero_tol, out } => {
            commands::polyb(p, q, *scan, grid.as_ref(), *zero_tol, out.as_deref())?
        }
        CommandConfig::Stepfn { mode, alpha, grid, zero_tol, out, heatmap } => {
            commands::stepfn(*mode, alpha, grid, *zero_tol, out.as_deref(), heatmap.as_deref())?
        }
        CommandConfig::Reproduce { example_id, out_dir } => {
            let verdict = reproduce::reproduce(example_id, out_dir)?;
            for c in &verdict.claims {
                println!("[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            println!("{}: {}", verdict.example, if verdict.pass { "pass" } else { "fail" });
            return Ok(verdict.pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let print_config = cli.print_config;
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        if print_config {
            print!("{}", output::to_json(&cfg)?);
            return Ok(true);
        }
        execute(&cfg)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("tfzero: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
