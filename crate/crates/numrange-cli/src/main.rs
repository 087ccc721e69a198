use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use numrange_cli::commands::{run_check, run_curve, run_probe, run_range, Format, KSelect};
use numrange_cli::figures::render_all;
use numrange_cli::input::MatrixInput;
use numrange_cli::CliError;

/// Rank-k numerical ranges and Kippenhahn curves of complex matrices.
///
/// Matrix inputs are JSON files with one of the variants `dense`,
/// `tridiag2p`, `reciprocal` or `normal`; complex scalars are [re, im]
/// pairs. NR_THREADS caps compute parallelism.
#[derive(Parser)]
#[command(name = "numrange", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the matrix input JSON.
    #[arg(long)]
    input: PathBuf,
    /// Angle grid size (at least 8).
    #[arg(long, default_value_t = 1024)]
    samples: usize,
    /// Relative classification tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Spectrum backend: auto, dense, two-periodic, reciprocal or normal.
    #[arg(long, default_value = "auto")]
    method: String,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Rank-k numerical range(s) as JSON, CSV or SVG.
    Range {
        #[command(flatten)]
        common: CommonArgs,
        /// Component index, or "all".
        #[arg(long, default_value = "all")]
        k: KSelect,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Kippenhahn curve components as CSV, JSON or SVG.
    Curve {
        #[command(flatten)]
        common: CommonArgs,
        /// Component index up to ceil(n/2), or "all".
        #[arg(long, default_value = "all")]
        k: KSelect,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Overlay dotted best-fit ellipses in SVG output.
        #[arg(long)]
        ellipses: bool,
    },
    /// Cross-validate closed forms, symmetry and shape predictions.
    Check {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Regenerate the built-in figure gallery.
    Figures {
        /// Output directory.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
    },
    /// Ellipse-fit residuals probing the even-n reciprocal conjecture.
    ProbeConjecture {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn load_input(path: &PathBuf) -> Result<MatrixInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    MatrixInput::parse(&text)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Range { common, k, format } => {
            let input = load_input(&common.input)?;
            let text = run_range(&input, k, common.samples, common.tol, &common.method, format)?;
            emit(&common.out, &text)
        }
        Command::Curve { common, k, format, ellipses } => {
            let input = load_input(&common.input)?;
            let text = run_curve(&input, k, common.samples, format, ellipses)?;
            emit(&common.out, &text)
        }
        Command::Check { common } => {
            let input = load_input(&common.input)?;
            let text = run_check(&input, common.samples, common.tol, &common.method)?;
            emit(&common.out, &text)
        }
        Command::Figures { out, samples } => {
            let written = render_all(&out, samples)?;
            for path in written {
                println!("{path}");
            }
            Ok(())
        }
        Command::ProbeConjecture { common } => {
            let input = load_input(&common.input)?;
            let text = run_probe(&input, common.samples)?;
            emit(&common.out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
