//! `slitprop` — slit-diffraction patterns in space and time.
//!
//! Computes matter-wave diffraction patterns behind single and double slits
//! with several propagator methods (exact quadrature, stationary phase,
//! truncation approximation, 4th-order correction, uniform gravity), writes
//! them as CSV plus a JSON diagnostics sidecar, and compares methods against
//! each other via fringe extraction.
//!
//! Exit codes: 0 success, 2 configuration/validation error, 3 quadrature
//! convergence failure (partial results are written and flagged), 4 I/O
//! error.

mod config;
mod presets;
mod runner;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Config, Resolved};
use runner::PatternOutput;

/// Environment variable giving the default worker-thread count; the
/// `--threads` flag overrides it.
const THREADS_ENV: &str = "SLITPROP_THREADS";

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Convergence(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Convergence(m) | CliError::Io(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "slitprop",
    version,
    about = "Quantum slit-diffraction patterns in space and time"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a pattern and write pattern.csv + diagnostics.json.
    Run {
        /// TOML configuration file (mutually exclusive with --preset).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Built-in configuration name (see `presets --list`).
        #[arg(long)]
        preset: Option<String>,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Computation method, overriding the config default.
        #[arg(long)]
        method: Option<String>,
        /// Worker threads (default: SLITPROP_THREADS or all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Compute the same pattern with several methods and compare fringes.
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Comma-separated method list; the last one is the reference.
        #[arg(long)]
        methods: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List or show the built-in configurations.
    Presets {
        /// List the preset names (default action).
        #[arg(long)]
        list: bool,
        /// Print the TOML of one preset.
        #[arg(long)]
        show: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, preset, out, method, threads } => {
            let threads = setup_threads(threads)?;
            let resolved = load(config.as_deref(), preset.as_deref())?;
            let method = resolved.method_or(method.as_deref())?;
            let pattern = runner::compute_pattern(&resolved, method)?;
            std::fs::create_dir_all(&out)?;
            write_csv(&out.join("pattern.csv"), &pattern)?;
            let diag = runner::diagnostics_json(&resolved, &pattern, threads)?;
            write_json(&out.join("diagnostics.json"), &diag)?;
            finish(&[pattern])
        }
        Command::Compare { config, preset, methods, out, threads } => {
            let threads = setup_threads(threads)?;
            let resolved = load(config.as_deref(), preset.as_deref())?;
            let methods: Vec<_> = methods
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(config::MethodKind::parse)
                .collect::<Result<_, _>>()?;
            if methods.len() < 2 {
                return Err(CliError::Validation(
                    "compare requires at least two methods".into(),
                ));
            }
            for m in &methods {
                if m.needs_gravity() && resolved.g.is_none() {
                    return Err(CliError::Validation(format!(
                        "method '{}' requires a [gravity] table with g",
                        m.name()
                    )));
                }
            }
            let outputs: Vec<PatternOutput> = methods
                .iter()
                .map(|&m| runner::compute_pattern(&resolved, m))
                .collect::<Result<_, _>>()?;
            std::fs::create_dir_all(&out)?;
            for pattern in &outputs {
                let file = format!("pattern-{}.csv", pattern.method.name());
                write_csv(&out.join(file), pattern)?;
                let diag = runner::diagnostics_json(&resolved, pattern, threads)?;
                let file = format!("diagnostics-{}.json", pattern.method.name());
                write_json(&out.join(file), &diag)?;
            }
            let report = runner::compare_json(&resolved, &outputs)?;
            write_json(&out.join("compare.json"), &report)?;
            finish(&outputs)
        }
        Command::Presets { list: _, show } => {
            if let Some(name) = show {
                print!("{}", presets::find(&name)?.toml);
            } else {
                for p in presets::PRESETS {
                    println!("{:<22} {}", p.name, p.summary);
                }
            }
            Ok(())
        }
    }
}

/// Flags a run as partial (exit 3) when any point kept only a quadrature
/// estimate; the files are already on disk at this point.
fn finish(outputs: &[PatternOutput]) -> Result<(), CliError> {
    let failures: usize = outputs.iter().map(|o| o.convergence_failures).sum();
    if failures > 0 {
        return Err(CliError::Convergence(format!(
            "{failures} grid point(s) kept a non-converged quadrature estimate; \
             outputs are written and flagged \"partial\""
        )));
    }
    Ok(())
}

fn setup_threads(flag: Option<usize>) -> Result<usize, CliError> {
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(s) => Some(s.parse::<usize>().map_err(|_| {
            CliError::Validation(format!("{THREADS_ENV} must be a non-negative integer, got '{s}'"))
        })?),
        Err(_) => None,
    };
    // 0 (or unset) means the rayon default.
    let n = flag.or(from_env).unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Validation(format!("thread pool setup failed: {e}")))?;
    Ok(rayon::current_num_threads())
}

fn load(config: Option<&Path>, preset: Option<&str>) -> Result<Resolved, CliError> {
    let text = match (config, preset) {
        (Some(path), None) => std::fs::read_to_string(path)?,
        (None, Some(name)) => presets::find(name)?.toml.to_string(),
        _ => {
            return Err(CliError::Validation(
                "exactly one of --config and --preset is required".into(),
            ))
        }
    };
    Config::from_toml(&text)?.resolve()
}

/// Writes the pattern as CSV, rows y-major, all floats with 17 significant
/// digits so re-runs are byte-identical.
fn write_csv(path: &Path, out: &PatternOutput) -> Result<(), CliError> {
    let mut text = String::from("y,z,re_amplitude,im_amplitude,intensity,probability_density\n");
    for (iy, &y) in out.y_values.iter().enumerate() {
        for (iz, &z) in out.z_values.iter().enumerate() {
            let a = out.amplitudes[iy][iz];
            writeln!(
                text,
                "{y:.16e},{z:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                a.re,
                a.im,
                out.intensities[iy][iz],
                out.probability_density(iy, iz)
            )
            .expect("writing to String cannot fail");
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
