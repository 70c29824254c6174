//! Library half of the `qchroma` command-line tool: file formats and the
//! subcommands, each turning input text into report text plus an exit code.

pub mod commands;
pub mod format;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{section}: expected {expected} numbers, found {found}")]
    EntryCount {
        section: String,
        expected: usize,
        found: usize,
    },

    #[error("malformed DIMACS header (line {line}); expected `p edge <n> <m>` before any edge")]
    MalformedHeader { line: usize },

    #[error("line {line}: vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("line {line}: self-loop at vertex {vertex}; graphs must be irreflexive")]
    SelfLoop { line: usize, vertex: usize },

    #[error("adjacency entry ({row}, {col}) is not 0 or 1; not a classical graph")]
    NotZeroOne { row: usize, col: usize },

    #[error(transparent)]
    Core(#[from] qchroma::Error),
}

impl CliError {
    pub(crate) fn duplicate(section: &str, line: usize) -> Self {
        CliError::Parse {
            line,
            message: format!("`{section}:` given twice or out of order"),
        }
    }
}
