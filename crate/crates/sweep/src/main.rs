use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lipkin_sweep::config::parse_methods;
use lipkin_sweep::output::{emit, write_table};
use lipkin_sweep::rows::evaluate_point;
use lipkin_sweep::verify::{run_verify, Level};
use lipkin_sweep::{figure_preset, run_sweep, PartialConfig, Result, SweepConfig};

#[derive(Parser)]
#[command(
    name = "lipkin",
    version,
    about = "Ground-state entanglement in the Lipkin model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point and print a CSV row per method.
    Solve {
        #[arg(long, default_value_t = 50)]
        omega: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        chi: f64,
        /// Coupling in units of ε.
        #[arg(long)]
        vx: f64,
        /// Comma-separated list: exact, mf, pmf, pmfv, rpa, prpa.
        #[arg(long, default_value = "exact")]
        methods: String,
    },
    /// Sweep v_x/ε over a grid; flags override the TOML file.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: SweepFlags,
    },
    /// Reproduce one of the preset figures (fig1, fig3, fig4, fig5, fig6).
    Figure {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        emit: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the acceptance checks; exits nonzero if any fails.
    Verify {
        #[arg(long, default_value = "quick")]
        level: Level,
    },
}

#[derive(clap::Args)]
struct SweepFlags {
    #[arg(long)]
    omega: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    /// Comma-separated anisotropies.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    chi: Option<Vec<f64>>,
    #[arg(long)]
    vx_min: Option<f64>,
    #[arg(long)]
    vx_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    methods: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `table` or `plotscript`.
    #[arg(long)]
    emit: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
}

impl From<SweepFlags> for PartialConfig {
    fn from(f: SweepFlags) -> Self {
        PartialConfig {
            omega: f.omega,
            eps: f.eps,
            chi: f.chi,
            vx_min: f.vx_min,
            vx_max: f.vx_max,
            steps: f.steps,
            methods: f.methods.map(|m| vec![m]),
            out: f.out,
            emit: f.emit,
            jobs: f.jobs,
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Solve {
            omega,
            eps,
            chi,
            vx,
            methods,
        } => {
            let methods = parse_methods(&[methods])?;
            let rows = methods
                .into_iter()
                .map(|m| evaluate_point(m, omega, eps, chi, vx))
                .collect::<Result<Vec<_>>>()?;
            write_table(&rows, std::io::stdout().lock())?;
        }
        Command::Sweep { config, flags } => {
            let file = match config {
                Some(path) => PartialConfig::load(&path)?,
                None => PartialConfig::default(),
            };
            let cfg = file
                .overlay(flags.into())
                .apply_to(SweepConfig::default())?;
            emit(&cfg, &run_sweep(&cfg)?)?;
        }
        Command::Figure {
            name,
            out,
            emit: mode,
            jobs,
        } => {
            let overrides = PartialConfig {
                out,
                emit: mode,
                jobs,
                ..PartialConfig::default()
            };
            let cfg = overrides.apply_to(figure_preset(&name)?)?;
            emit(&cfg, &run_sweep(&cfg)?)?;
        }
        Command::Verify { level } => {
            let report = run_verify(level);
            for line in report.lines() {
                println!("{line}");
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
