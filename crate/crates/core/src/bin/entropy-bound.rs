use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use entropy_bound::golden::{format_table, run_golden};
use entropy_bound::scenario::{
    emit, exit_code, run_scenario, OutputFormat, ScenarioConfig, ScenarioError,
};

#[derive(Parser)]
#[command(
    name = "entropy-bound",
    version,
    about = "Check model systems against S <= 2 pi E R"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario config and write its report rows.
    ///
    /// Exit status: 0 if every row satisfies the bound, 2 if any row violates
    /// it, 1 for config errors, model errors or strong coupling.
    Run {
        /// Scenario file: `[scenario]` key = value lines, or a `.json` object.
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override a config key, e.g. `--set amplitude=0.5`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Run the reference-value regression suite and print a pass/fail table.
    Golden,
}

fn run(
    config: PathBuf,
    format: Format,
    out: Option<PathBuf>,
    overrides: &[String],
) -> Result<i32, ScenarioError> {
    let mut cfg = ScenarioConfig::load(&config)?;
    for o in overrides {
        cfg.apply_override(o)?;
    }
    cfg.validate()?;
    let rows = run_scenario(&cfg)?;
    let format = match format {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    };
    emit(&rows, format, out.as_deref())?;
    Ok(exit_code(&rows))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests go to stdout and are not errors
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match cli.command {
        Command::Run {
            config,
            format,
            out,
            overrides,
        } => match run(config, format, out, &overrides) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Golden => {
            let outcomes = run_golden();
            print!("{}", format_table(&outcomes));
            if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
