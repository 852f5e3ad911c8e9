//! Command-line front end: parses arguments, delegates to the library's
//! command implementations, and maps outcomes to exit codes.
//!
//! Machine-readable output goes to stdout, diagnostics to stderr.
//! Exit codes: 0 success (equiv: equivalent; unique: unique),
//! 1 negative verdict (inequivalent / not unique), 2 input error,
//! 3 not permutation symmetric, 4 inconclusive uniqueness.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use stellar::cli::{
    cmd_analyze, cmd_demo, cmd_equiv, cmd_stars, cmd_unique, render_analyze_text,
    resolve_cluster_tol, CliError, StarFormat, UniqueArgs,
};
use stellar::marginals::UniquenessVerdict;

#[derive(Parser)]
#[command(
    name = "stellar",
    version,
    about = "Majorana stars, SLOCC families, and marginal analyses of symmetric qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stars, degeneracy family, and entanglement measures of a state file
    Analyze {
        file: PathBuf,
        /// Chordal clustering tolerance (overrides STELLAR_TOL)
        #[arg(long)]
        tol: Option<f64>,
        /// Emit the canonical JSON report instead of text
        #[arg(long)]
        json: bool,
    },
    /// Decide SLOCC interconvertibility of two states
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        /// Chordal clustering tolerance (overrides STELLAR_TOL)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Decide whether a 3-qubit state is pinned by its two-party marginals
    Unique {
        file: PathBuf,
        /// Multi-start budget for the witness search
        #[arg(long, default_value_t = 64)]
        starts: usize,
        /// Seed for the witness search
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Constrain all three pair marginals instead of ρ12 and ρ13
        #[arg(long)]
        use_all_pairs: bool,
    },
    /// Emit star coordinates for external plotting
    Stars {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Write a named demo state file (ghz | w | wbar | eta | d21 | product)
    Demo {
        name: String,
        /// |000⟩ amplitude for d21 (default √3/2)
        #[arg(long)]
        a: Option<f64>,
        /// W amplitude divided by √3 for d21 (default 1/√12)
        #[arg(long)]
        b: Option<f64>,
        /// Output path
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("stellar: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze { file, tol, json } => {
            let report = cmd_analyze(&file, resolve_cluster_tol(tol))?;
            if json {
                print!("{}", report.to_canonical_json());
            } else {
                print!("{}", render_analyze_text(&report));
            }
            Ok(0)
        }
        Command::Equiv { file1, file2, tol } => {
            let report = cmd_equiv(&file1, &file2, resolve_cluster_tol(tol))?;
            let equivalent = report.equivalent.unwrap_or(false);
            print!("{}", report.to_canonical_json());
            Ok(if equivalent { 0 } else { 1 })
        }
        Command::Unique { file, starts, seed, use_all_pairs } => {
            let (report, verdict) = cmd_unique(&file, UniqueArgs { starts, seed, use_all_pairs })?;
            print!("{}", report.to_canonical_json());
            Ok(match verdict {
                UniquenessVerdict::Unique { .. } => 0,
                UniquenessVerdict::NotUnique { .. } => 1,
                UniquenessVerdict::Inconclusive { .. } => 4,
            })
        }
        Command::Stars { file, format } => {
            let format = match format {
                FormatArg::Json => StarFormat::Json,
                FormatArg::Csv => StarFormat::Csv,
            };
            print!("{}", cmd_stars(&file, format)?);
            Ok(0)
        }
        Command::Demo { name, a, b, output } => {
            let content = cmd_demo(&name, a, b)?;
            std::fs::write(&output, &content)
                .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", output.display())))?;
            eprintln!("stellar: wrote {} state to {}", name, output.display());
            Ok(0)
        }
    }
}
