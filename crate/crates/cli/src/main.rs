use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use fuzzpair_cli::emit::{emit, format_float, OutputFormat};
use fuzzpair_cli::grid::parse_grid;
use fuzzpair_cli::sweep::{run_sweep, AmplitudePreset, SweepModel, SweepSpec};
use fuzzpair_cli::threshold::{find_threshold, ThresholdModel};
use fuzzpair_cli::verify::{verify, Suite, VerifyOptions};
use fuzzpair_cli::CliError;
use fuzzpair_core::specfun::QuadratureConfig;

/// Two-particle entanglement under ideal and fuzzy detectors: sweeps,
/// thresholds and oracle verification.
#[derive(Parser)]
#[command(name = "fuzzpair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the Fermi gas with ideal point detectors (defaults: p_f=1, d=0:5:100)
    #[command(name = "fermi-ideal")]
    FermiIdeal(FermiArgs),
    /// Sweep the Fermi gas with Gaussian detectors (defaults reproduce the
    /// three-curve dataset: p_f=1, sigma=1,2,4, d=0:10:400)
    #[command(name = "fermi-fuzzy")]
    FermiFuzzy(FermiArgs),
    /// Sweep the two-photon interferometer (defaults: sigma=1, tau=0:3:300)
    Boson(BosonArgs),
    /// Bisect the entanglement boundary in the separation d
    Threshold(ThresholdArgs),
    /// Run an oracle verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Output path (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Quadrature tolerance (sets both absolute and relative)
    #[arg(long)]
    tol: Option<f64>,
    /// JSON config file with the same keys as the flags; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FermiArgs {
    /// Fermi momentum grid (min:max:steps or comma list)
    #[arg(long)]
    pf: Option<String>,
    /// Detector spread grid (Gaussian model only)
    #[arg(long)]
    sigma: Option<String>,
    /// Detector separation grid
    #[arg(long)]
    d: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BosonArgs {
    /// Detector frequency spread grid
    #[arg(long)]
    sigma: Option<String>,
    /// Interferometer delay grid
    #[arg(long)]
    tau: Option<String>,
    /// Spectral amplitude preset ("constant" or "gaussian-correlated");
    /// selects the general quadrature model instead of the closed form
    #[arg(long)]
    amplitude: Option<String>,
    /// Pump envelope width for gaussian-correlated amplitudes
    #[arg(long = "pump-width")]
    pump_width: Option<f64>,
    /// Single-photon envelope width for gaussian-correlated amplitudes
    #[arg(long = "photon-width")]
    photon_width: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Model: fermi-ideal or fermi-fuzzy
    #[arg(long)]
    model: Option<String>,
    /// Fermi momentum
    #[arg(long)]
    pf: Option<f64>,
    /// Detector spread (fermi-fuzzy)
    #[arg(long)]
    sigma: Option<f64>,
    /// Upper end of the bracketing scan
    #[arg(long = "d-max")]
    d_max: Option<f64>,
    /// Quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// JSON config file; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: wick, fock, boson, cancellation, negativity or crossing
    #[arg(long)]
    suite: Option<String>,
    /// Momentum modes for the discretized sea
    #[arg(long)]
    modes: Option<usize>,
    /// Frequency bins for the binned interferometer
    #[arg(long)]
    bins: Option<usize>,
    /// Tolerance override for the suite
    #[arg(long)]
    tol: Option<f64>,
    /// JSON config file; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Optional JSON file holding defaults for the flag values.
struct ConfigFile(serde_json::Map<String, serde_json::Value>);

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self(serde_json::Map::new()));
        };
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::InvalidSpec(format!("config {path:?}: {e}")))?;
        match value {
            serde_json::Value::Object(map) => Ok(Self(map)),
            _ => Err(CliError::InvalidSpec(format!(
                "config {path:?}: expected a JSON object"
            ))),
        }
    }

    /// Grid-valued key: accepts a JSON string or a bare number.
    fn grid(&self, key: &str) -> Option<String> {
        match self.0.get(key)? {
            serde_json::Value::String(s) => Some(s.clone()),
            serde_json::Value::Number(n) => Some(n.to_string()),
            _ => None,
        }
    }

    fn string(&self, key: &str) -> Option<String> {
        self.0.get(key).and_then(|v| v.as_str()).map(str::to_string)
    }

    fn number(&self, key: &str) -> Option<f64> {
        self.0.get(key).and_then(|v| v.as_f64())
    }

    fn integer(&self, key: &str) -> Option<usize> {
        self.0.get(key).and_then(|v| v.as_u64()).map(|v| v as usize)
    }
}

fn quad_config(tol: Option<f64>) -> QuadratureConfig {
    match tol {
        Some(t) => QuadratureConfig {
            abs_tol: t,
            rel_tol: t,
            ..QuadratureConfig::default()
        },
        None => QuadratureConfig::default(),
    }
}

fn resolve_grid(
    flag: &Option<String>,
    cfg: &ConfigFile,
    key: &str,
    default: &str,
) -> Result<Vec<f64>, CliError> {
    let spec = flag
        .clone()
        .or_else(|| cfg.grid(key))
        .unwrap_or_else(|| default.to_string());
    parse_grid(&spec)
}

fn parse_format(flag: &Option<String>, cfg: &ConfigFile) -> Result<OutputFormat, CliError> {
    let name = flag
        .clone()
        .or_else(|| cfg.string("format"))
        .unwrap_or_else(|| "csv".to_string());
    name.parse().map_err(CliError::InvalidSpec)
}

fn write_rows(
    rows: &[fuzzpair_cli::sweep::SweepRow],
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let io_err = |path: &Path, source: io::Error| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_err(path, e))?;
            let mut w = BufWriter::new(file);
            emit(rows, format, &mut w).map_err(|e| io_err(path, e))?;
            w.flush().map_err(|e| io_err(path, e))?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            emit(rows, format, &mut w).map_err(|e| io_err(Path::new("<stdout>"), e))?;
        }
    }
    Ok(())
}

fn run_sweep_command(
    spec: SweepSpec,
    output: &OutputArgs,
    cfg: &ConfigFile,
) -> Result<u8, CliError> {
    let format = parse_format(&output.format, cfg)?;
    let out_path = output
        .out
        .clone()
        .or_else(|| cfg.string("out").map(PathBuf::from));
    let outcome = run_sweep(&spec)?;
    write_rows(&outcome.rows, format, out_path.as_deref())?;
    if outcome.errors.is_empty() {
        Ok(0)
    } else {
        for e in &outcome.errors {
            eprintln!("fuzzpair: {e}");
        }
        Ok(3)
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::FermiIdeal(args) => {
            let cfg = ConfigFile::load(args.output.config.as_deref())?;
            let tol = args.output.tol.or_else(|| cfg.number("tol"));
            let spec = SweepSpec {
                model: SweepModel::FermiIdeal,
                pf: resolve_grid(&args.pf, &cfg, "pf", "1")?,
                sigma: vec![0.0],
                d: resolve_grid(&args.d, &cfg, "d", "0:5:100")?,
                tau: vec![0.0],
                quad: quad_config(tol),
            };
            run_sweep_command(spec, &args.output, &cfg)
        }
        Command::FermiFuzzy(args) => {
            let cfg = ConfigFile::load(args.output.config.as_deref())?;
            let tol = args.output.tol.or_else(|| cfg.number("tol"));
            let spec = SweepSpec {
                model: SweepModel::FermiFuzzy,
                pf: resolve_grid(&args.pf, &cfg, "pf", "1")?,
                sigma: resolve_grid(&args.sigma, &cfg, "sigma", "1,2,4")?,
                d: resolve_grid(&args.d, &cfg, "d", "0:10:400")?,
                tau: vec![0.0],
                quad: quad_config(tol),
            };
            run_sweep_command(spec, &args.output, &cfg)
        }
        Command::Boson(args) => {
            let cfg = ConfigFile::load(args.output.config.as_deref())?;
            let tol = args.output.tol.or_else(|| cfg.number("tol"));
            let amplitude = args.amplitude.clone().or_else(|| cfg.string("amplitude"));
            let model = match amplitude.as_deref() {
                None => SweepModel::BosonHom,
                Some("constant") => SweepModel::BosonGeneral(AmplitudePreset::Constant),
                Some("gaussian-correlated") => {
                    SweepModel::BosonGeneral(AmplitudePreset::GaussianCorrelated {
                        pump_width: args
                            .pump_width
                            .or_else(|| cfg.number("pump-width"))
                            .unwrap_or(2.0),
                        photon_width: args
                            .photon_width
                            .or_else(|| cfg.number("photon-width"))
                            .unwrap_or(4.0),
                    })
                }
                Some(other) => return Err(CliError::InvalidSpec(format!(
                    "unknown amplitude preset {other:?}, expected constant or gaussian-correlated"
                ))),
            };
            let spec = SweepSpec {
                model,
                pf: vec![0.0],
                sigma: resolve_grid(&args.sigma, &cfg, "sigma", "1")?,
                d: vec![0.0],
                tau: resolve_grid(&args.tau, &cfg, "tau", "0:3:300")?,
                quad: quad_config(tol),
            };
            run_sweep_command(spec, &args.output, &cfg)
        }
        Command::Threshold(args) => {
            let cfg = ConfigFile::load(args.config.as_deref())?;
            let model_name = args
                .model
                .or_else(|| cfg.string("model"))
                .unwrap_or_else(|| "fermi-ideal".to_string());
            let model = match model_name.as_str() {
                "fermi-ideal" => ThresholdModel::FermiIdeal,
                "fermi-fuzzy" => ThresholdModel::FermiFuzzy,
                other => {
                    return Err(CliError::InvalidSpec(format!(
                        "unknown threshold model {other:?}, expected fermi-ideal or fermi-fuzzy"
                    )))
                }
            };
            let pf = args.pf.or_else(|| cfg.number("pf")).unwrap_or(1.0);
            let sigma = args.sigma.or_else(|| cfg.number("sigma")).unwrap_or(1.0);
            let d_max = args.d_max.or_else(|| cfg.number("d-max")).unwrap_or(10.0);
            let quad = quad_config(args.tol.or_else(|| cfg.number("tol")));
            let d_star = find_threshold(model, pf, sigma, d_max, &quad)?;
            println!("{}", format_float(d_star));
            eprintln!(
                "fuzzpair: entanglement boundary for {model_name} at p_f = {pf}: d* = {d_star:.9}"
            );
            Ok(0)
        }
        Command::Verify(args) => {
            let cfg = ConfigFile::load(args.config.as_deref())?;
            let suite_name = args
                .suite
                .or_else(|| cfg.string("suite"))
                .ok_or_else(|| CliError::InvalidSpec("verify requires --suite".into()))?;
            let suite: Suite = suite_name.parse().map_err(CliError::InvalidSpec)?;
            let opts = VerifyOptions {
                modes: args
                    .modes
                    .or_else(|| cfg.integer("modes"))
                    .unwrap_or(if suite == Suite::Fock { 3 } else { 512 }),
                bins: args.bins.or_else(|| cfg.integer("bins")).unwrap_or(128),
                tolerance: args.tol.or_else(|| cfg.number("tol")),
                quad: QuadratureConfig::default(),
            };
            let report = verify(suite, &opts)?;
            println!("{report}");
            Ok(if report.pass { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version exit 0; bad usage exits 1
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fuzzpair: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
