use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dayconv_cli::{parse_spec, run_command, CliError, Command, Flags, Report};
use dayconv_core::cocomplete::FinSet;

#[derive(Parser)]
#[command(name = "dayconv", version, about = "Day convolution on finite functor categories")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Declarations to load.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,

    /// Largest arity of the pointed skeleton.
    #[arg(long, global = true, default_value_t = 2)]
    max_n: usize,

    /// Largest value set of an enumerated carrier.
    #[arg(long, global = true, default_value_t = 2)]
    carrier_bound: usize,

    /// Largest finite set any computation may build; DAYCONV_CEILING wins.
    #[arg(long, global = true)]
    ceiling: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate every declaration (or the bundled corpus).
    Validate,
    /// Pointwise table of the Day convolution of two functors.
    DayTensor { f: String, g: String },
    /// Enumerate commutative Day monoids and lax monoidal functors.
    Enumerate,
    /// Run the certification suite.
    VerifyTheorems,
    /// Re-render a machine-readable report.
    Report {
        /// Report file; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn ceiling(flag: Option<usize>) -> Result<usize, CliError> {
    match std::env::var("DAYCONV_CEILING") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("DAYCONV_CEILING must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(flag.unwrap_or(dayconv_core::cocomplete::finset::DEFAULT_CEILING)),
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let flags = Flags {
        max_n: cli.max_n,
        carrier_bound: cli.carrier_bound,
        ceiling: ceiling(cli.ceiling)?,
    };
    let cmd = match cli.command {
        Cmd::Validate => Command::Validate,
        Cmd::DayTensor { f, g } => Command::DayTensor { f, g },
        Cmd::Enumerate => Command::Enumerate,
        Cmd::VerifyTheorems => Command::VerifyTheorems,
        Cmd::Report { input } => {
            let text = match input {
                Some(p) => read(&p)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                        path: "<stdin>".into(),
                        source,
                    })?;
                    s
                }
            };
            return Report::parse_machine(&text);
        }
    };
    let ws = match &cli.spec {
        Some(p) => {
            let text = read(p)?;
            let (_, ws) = parse_spec(&text, &FinSet::with_ceiling(flags.ceiling))?;
            Some(ws)
        }
        None => None,
    };
    run_command(ws.as_ref(), &cmd, &flags)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let spec = cli.spec.clone();
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Human => print!("{}", report.to_human()),
                Format::Machine => print!("{}", report.to_machine()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let located = matches!(e, CliError::Syntax { .. } | CliError::Unresolved { .. } | CliError::Validation { .. });
            match spec.filter(|_| located) {
                Some(p) => eprintln!("dayconv: error[{}]: {}:{e}", e.code(), p.display()),
                None => eprintln!("dayconv: error[{}]: {e}", e.code()),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
