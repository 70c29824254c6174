use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qchroma_cli::commands::{self, Options, Output, ReportFormat};
use qchroma_cli::CliError;

/// Quantum graphs on finite-dimensional C*-algebras: axioms, spectra,
/// chromatic bounds and coloring certificates.
#[derive(Parser)]
#[command(name = "qchroma", version)]
struct Cli {
    /// Absolute residual tolerance for every check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quantum-graph axioms; exits 0 iff the required ones hold.
    Validate {
        file: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Eigenvalues of A, L and Q, and the inertia of A.
    Spectrum { file: String },
    /// The five spectral lower bounds on the quantum chromatic number.
    Bounds { file: String },
    /// Convert between the adjacency and operator-space descriptions.
    Translate { file: String },
    /// Convert a DIMACS edge list to a quantum-graph file.
    ImportDimacs { file: String },
    /// Emit the complete quantum graph on the given blocks.
    Complete {
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        #[arg(long)]
        reflexive: bool,
    },
    /// Verify a coloring certificate; exits 0 iff it is valid.
    CheckColoring {
        graph: String,
        cert: String,
        /// Also report pinching and twirling residuals.
        #[arg(long)]
        lemmas: bool,
    },
    /// Exact chromatic number of a classical graph.
    Chromatic { file: String },
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    Ok(text)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let opts = Options {
        tolerance: cli.tolerance,
        seed: cli.seed,
    };
    match cli.command {
        Command::Validate { file, format } => commands::validate(&read_input(&file)?, format, opts),
        Command::Spectrum { file } => commands::spectrum(&read_input(&file)?, opts),
        Command::Bounds { file } => commands::bounds(&read_input(&file)?, opts),
        Command::Translate { file } => commands::translate(&read_input(&file)?, opts),
        Command::ImportDimacs { file } => {
            let name = (file != "-")
                .then(|| Path::new(&file).file_stem().map(|s| s.to_string_lossy().into_owned()))
                .flatten();
            commands::import_dimacs(&read_input(&file)?, name)
        }
        Command::Complete { blocks, reflexive } => commands::complete(&blocks, reflexive),
        Command::CheckColoring { graph, cert, lemmas } => {
            commands::check_coloring(&read_input(&graph)?, &read_input(&cert)?, lemmas, opts)
        }
        Command::Chromatic { file } => commands::chromatic(&read_input(&file)?, opts),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
