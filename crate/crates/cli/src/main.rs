use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ciq_cli::config::{DEFAULT_TOLERANCE, DEFAULT_TRIALS};
use ciq_cli::{run_basis_check, run_decompose, run_verify, CliError, RunConfig, Scenario, VerificationReport};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Equal-time bracket verification for lattice Klein-Gordon and Coulomb-gauge Maxwell fields.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage errors.
#[derive(Parser)]
#[command(name = "ciq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the brackets of a scenario and check them against the analytic kernel.
    Verify(VerifyArgs),
    /// Split a 3-component CIQF field into transverse and longitudinal parts.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_transverse: PathBuf,
        #[arg(long)]
        out_longitudinal: PathBuf,
    },
    /// Check closure and parity of the polarization basis.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Kg,
    Maxwell,
}

#[derive(Args)]
struct VerifyArgs {
    scenario: ScenarioArg,
    /// Lattice points per axis (odd).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    spacing: f64,
    /// Field mass (kg only, default 1).
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Evolution times for the covariance and energy checks.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 1.0])]
    times: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl VerifyArgs {
    fn into_config(self) -> RunConfig {
        let scenario = match self.scenario {
            ScenarioArg::Kg => Scenario::Kg,
            ScenarioArg::Maxwell => Scenario::Maxwell,
        };
        RunConfig {
            mass: self.mass,
            tolerance: self.tol,
            covariance_times: self.times,
            trials: self.trials,
            seed: self.seed,
            output_path: self.out,
            ..RunConfig::new(scenario, self.n, self.spacing)
        }
    }
}

fn emit(report: &VerificationReport, to_stdout: bool) -> Result<ExitCode, CliError> {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if to_stdout {
        // a closed pipe (e.g. `| head`) is not worth a panic
        let _ = writeln!(io::stdout(), "{}", report.to_json()?);
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if report.pass {
        eprintln!("{}: pass ({} ms)", report.command, report.runtime_ms);
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{}: FAIL {:?}", report.command, report.failures());
        Ok(ExitCode::from(1))
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify(args) => {
            let cfg = args.into_config();
            let report = run_verify(&cfg)?;
            emit(&report, cfg.output_path.is_none())
        }
        Command::Decompose { input, out_transverse, out_longitudinal } => {
            run_decompose(&input, &out_transverse, &out_longitudinal)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis { n, out } => {
            let report = run_basis_check(n, out.as_deref())?;
            emit(&report, out.is_none())
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
