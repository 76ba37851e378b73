use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hexbubble_cli::commands::{self, effective_seed, Format, SEED_ENV};
use hexbubble_cli::verify::{Hooks, Suite};
use hexbubble_cli::{exit_code, CliError};

/// Least-perimeter double bubbles under the hexagonal norm.
#[derive(Parser)]
#[command(name = "hexbubble", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for volumes 1 and alpha.
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Solve on an evenly spaced grid of alpha values and write CSV.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        /// Number of grid points, both ends included.
        #[arg(long)]
        steps: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-test suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        suite: SuiteArg,
        /// Overridden by HEXBUBBLE_SEED.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw the optimal configuration as SVG.
    Render {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// The single-bubble optimum for one volume.
    Iso {
        #[arg(long, allow_negative_numbers = true)]
        volume: f64,
        /// Also draw the hexagon.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Solve { alpha, format } => {
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            };
            commands::cmd_solve(alpha, format, &mut out)
        }
        Command::Sweep { from, to, steps, out: path } => commands::cmd_sweep(from, to, steps, path.as_deref(), &mut out),
        Command::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Full => Suite::Full,
            };
            let env = std::env::var(SEED_ENV).ok();
            let seed = effective_seed(seed, env.as_deref())?;
            commands::cmd_verify(suite, seed, &Hooks::default(), &mut out, &mut io::stderr())
        }
        Command::Render { alpha, out: path } => commands::cmd_render(alpha, &path),
        Command::Iso { volume, svg } => commands::cmd_iso(volume, svg.as_deref(), &mut out),
    };
    let _ = out.flush();
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    if let Err(e) = &result {
        eprintln!("{e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
