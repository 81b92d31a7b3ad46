//! Command-line surface and the serializable run configuration it maps to.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use tfzero::kernels::FormulaId;
use tfzero::phase_space::GridSpec;
use tfzero::step::StepMode;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "tfzero", version, about = "Zero sets of ambiguity functions, Wigner distributions and STFTs")]
pub struct Cli {
    /// Worker threads for grid scans.
    #[arg(long, global = true, env = "TFZERO_THREADS")]
    pub threads: Option<usize>,

    /// Print the resolved run configuration as JSON and exit.
    #[arg(long, global = true)]
    pub print_config: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a closed-form kernel on a grid or at one point; CSV output.
    Eval(EvalArgs),
    /// Zero scan of a kernel or of an oracle-evaluated transform.
    Scan(ScanArgs),
    /// Routh–Hurwitz report for A_n or for explicit integer coefficients.
    Hurwitz(HurwitzArgs),
    /// Polyanalytic Bargmann polynomial of a Hermite window/function pair.
    Polyb(PolybArgs),
    /// Scan of the box-window STFT of an α-step function.
    Stepfn(StepfnArgs),
    /// Run one reproduction pipeline and write its verdict.
    Reproduce(ReproduceArgs),
    /// Execute a run configuration saved with --print-config.
    Run {
        config: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Kernel identifier, e.g. gauss, one_sided, sym_exp.
    #[arg(long, value_parser = parse_formula)]
    pub pair: FormulaId,
    /// Kernel parameters as a JSON object; defaults to the reference choice.
    #[arg(long)]
    pub params: Option<String>,
    /// x0,x1,nx,xi0,xi1,nxi
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, conflicts_with = "point")]
    pub grid: Option<GridSpec>,
    /// Single point x,xi.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub point: Option<(f64, f64)>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// JSON file holding either a kernel ({"formula": ...}) or an oracle
    /// target ({"transform": ..., "f": ..., "g": ...}).
    #[arg(long, required_unless_present = "pair", conflicts_with = "pair")]
    pub spec: Option<PathBuf>,
    /// Reference kernel by identifier, instead of --spec.
    #[arg(long, value_parser = parse_formula)]
    pub pair: Option<FormulaId>,
    /// x0,x1,nx,xi0,xi1,nxi
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-4,4,201,-4,4,201")]
    pub grid: GridSpec,
    /// Modulus below which a refined point counts as a zero.
    #[arg(long, default_value_t = 1e-8)]
    pub zero_tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Binary PGM of log |value|.
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct HurwitzSource {
    /// Degree n of A_n.
    #[arg(long = "An")]
    pub an: Option<u32>,
    /// Integer coefficients a0,a1,... highest degree first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct HurwitzArgs {
    #[command(flatten)]
    pub source: HurwitzSource,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PolybArgs {
    /// Window polynomial coefficients, constant term first; entries like 1, -2i, 0.5+1.5i.
    #[arg(long = "P", value_parser = parse_complex, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub p: Vec<Complex64>,
    /// Function polynomial coefficients, constant term first.
    #[arg(long = "Q", value_parser = parse_complex, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub q: Vec<Complex64>,
    /// Also search for zeros.
    #[arg(long)]
    pub scan: bool,
    /// Search box x0,x1,nx,xi0,xi1,nxi; defaults to a radius derived from the coefficients.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// Modulus below which a refined point counts as a zero.
    #[arg(long, default_value_t = 1e-10)]
    pub zero_tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Monotone,
    Lp,
}

impl From<ModeArg> for StepMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Monotone => StepMode::Monotone,
            ModeArg::Lp => StepMode::Lp,
        }
    }
}

#[derive(Debug, Args)]
pub struct StepfnArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Irrational α in (0,1): sqrt2/2, (sqrt5-1)/2, 0.7071067811865476, ...
    #[arg(long, default_value = "sqrt2/2")]
    pub alpha: String,
    /// x0,x1,nx,xi0,xi1,nxi
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "0,3,201,-5,5,201")]
    pub grid: GridSpec,
    /// Modulus below which a refined point counts as a zero.
    #[arg(long, default_value_t = 1e-8)]
    pub zero_tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Binary PGM of log |value|.
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// One of ex3_1 … ex3_6, sec4_hurwitz, sec5_signs, sec6_degree1, sec7_monotone, sec7_lp.
    pub example_id: String,
    /// Directory receiving <id>.json, heatmaps and the sidecar log.
    #[arg(long, default_value = "artifacts")]
    pub out_dir: PathBuf,
}

/// Fully resolved invocation. Serializes losslessly so that a run can be
/// saved with `--print-config` and replayed with `tfzero run`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub parallelism: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CommandConfig {
    Eval {
        pair: FormulaId,
        params: Option<serde_json::Value>,
        grid: Option<GridSpec>,
        point: Option<(f64, f64)>,
        out: Option<PathBuf>,
    },
    Scan {
        spec: Option<PathBuf>,
        pair: Option<FormulaId>,
        grid: GridSpec,
        zero_tol: f64,
        out: Option<PathBuf>,
        heatmap: Option<PathBuf>,
    },
    Hurwitz {
        an: Option<u32>,
        coeffs: Option<Vec<i64>>,
        out: Option<PathBuf>,
    },
    Polyb {
        p: Vec<Complex64>,
        q: Vec<Complex64>,
        scan: bool,
        grid: Option<GridSpec>,
        zero_tol: f64,
        out: Option<PathBuf>,
    },
    Stepfn {
        mode: StepMode,
        alpha: String,
        grid: GridSpec,
        zero_tol: f64,
        out: Option<PathBuf>,
        heatmap: Option<PathBuf>,
    },
    Reproduce {
        example_id: String,
        out_dir: PathBuf,
    },
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let parallelism = cli
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        let command = match cli.command {
            Command::Eval(a) => {
                let params = match a.params {
                    Some(text) => Some(
                        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--params: {e}")))?,
                    ),
                    None => None,
                };
                if a.grid.is_none() && a.point.is_none() {
                    return Err(CliError::Usage("eval needs --grid or --point".into()));
                }
                CommandConfig::Eval { pair: a.pair, params, grid: a.grid, point: a.point, out: a.out }
            }
            Command::Scan(a) => CommandConfig::Scan {
                spec: a.spec,
                pair: a.pair,
                grid: a.grid,
                zero_tol: a.zero_tol,
                out: a.out,
                heatmap: a.heatmap,
            },
            Command::Hurwitz(a) => CommandConfig::Hurwitz { an: a.source.an, coeffs: a.source.coeffs, out: a.out },
            Command::Polyb(a) => {
                CommandConfig::Polyb { p: a.p, q: a.q, scan: a.scan, grid: a.grid, zero_tol: a.zero_tol, out: a.out }
            }
            Command::Stepfn(a) => CommandConfig::Stepfn {
                mode: a.mode.into(),
                alpha: a.alpha,
                grid: a.grid,
                zero_tol: a.zero_tol,
                out: a.out,
                heatmap: a.heatmap,
            },
            Command::Reproduce(a) => CommandConfig::Reproduce { example_id: a.example_id, out_dir: a.out_dir },
            Command::Run { config } => {
                let text = std::fs::read_to_string(&config)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
                let mut cfg: RunConfig =
                    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
                if let Some(t) = cli.threads {
                    cfg.parallelism = t;
                }
                cfg.validate()?;
                return Ok(cfg);
            }
        };
        let cfg = RunConfig { command, parallelism };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.parallelism == 0 {
            return Err(CliError::Usage("--threads / TFZERO_THREADS must be at least 1".into()));
        }
        let tol = match &self.command {
            CommandConfig::Scan { zero_tol, .. }
            | CommandConfig::Polyb { zero_tol, .. }
            | CommandConfig::Stepfn { zero_tol, .. } => Some(*zero_tol),
            _ => None,
        };
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("--zero-tol must be positive, got {t}")));
            }
        }
        Ok(())
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("'{s}' is not a number"))
}

pub fn parse_formula(s: &str) -> Result<FormulaId, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|_| {
        "expected one of gauss, one_sided, conv_same_sign, conv_mixed_sign, t_eta_cross, gumbel, monomial_self, sym_exp"
            .to_string()
    })
}

/// x0,x1,nx,xi0,xi1,nxi
pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(format!("expected x0,x1,nx,xi0,xi1,nxi (6 fields), got {}", parts.len()));
    }
    let count = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("'{t}' is not a point count"));
    let grid = GridSpec::new(
        (parse_f64(parts[0])?, parse_f64(parts[1])?),
        (parse_f64(parts[3])?, parse_f64(parts[4])?),
        count(parts[2])?,
        count(parts[5])?,
    );
    grid.map_err(|e| e.to_string())
}

pub fn parse_point(s: &str) -> Result<(f64, f64), String> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [x, xi] => Ok((parse_f64(x)?, parse_f64(xi)?)),
        _ => Err("expected x,xi".into()),
    }
}

/// One complex entry: `a`, `bi`, `a+bi`, `a-bi` (also `j` for the unit).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("'{s}' is not a complex number");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return parse_f64(&t).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |u: &str| match u {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => u.parse::<f64>().map_err(|_| bad()),
    };
    match split {
        Some(k) => Ok(Complex64::new(body[..k].parse::<f64>().map_err(|_| bad())?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_entries() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("0.5+1.5i").unwrap(), c(0.5, 1.5));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex("-1-i").unwrap(), c(-1.0, -1.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("-3,3,21,-2,2,11").unwrap();
        assert_eq!((g.nx, g.nxi), (21, 11));
        assert!(parse_grid("0,1,2").is_err());
        assert!(parse_grid("0,1,x,0,1,2").is_err());
        assert!(parse_grid("1,0,3,0,1,3").is_err());
    }
}

#[cfg(test)]
mod round_trip {
    use super::*;

    #[test]
    fn eval_config_survives_json() {
        let cli = Cli::try_parse_from([
            "tfzero", "--threads", "2", "eval", "--pair", "gauss", "--params", r#"{"a":[1,1],"b":[1,0]}"#, "--grid",
            "-1,1,3,-1,1,3",
        ])
        .unwrap();
        let cfg = RunConfig::from_cli(cli).unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(cfg.parallelism, 2);
    }

    #[test]
    fn tolerances_and_threads_are_checked() {
        let cli = Cli::try_parse_from(["tfzero", "--threads", "0", "hurwitz", "--An", "3"]).unwrap();
        assert!(matches!(RunConfig::from_cli(cli), Err(CliError::Usage(_))));
        let cli = Cli::try_parse_from(["tfzero", "scan", "--pair", "gauss", "--zero-tol", "0"]).unwrap();
        assert!(matches!(RunConfig::from_cli(cli), Err(CliError::Usage(_))));
    }
}
