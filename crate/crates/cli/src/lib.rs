//! Command-line front end for the grouping-and-VQE pipeline.
//!
//! Five subcommands cover the pipeline end to end: `model` writes a built-in
//! Hamiltonian, `group` partitions one into commuting groups, `qubo` exports
//! the graph-coloring QUBO behind that partitioning, `vqe` runs the full
//! shot-based optimization loop, and `survey` batches grouping jobs into
//! comparison tables. Every file output gets a `.manifest.json` sidecar
//! recording the resolved invocation, and every seeded command is
//! byte-reproducible.

pub mod commands;
pub mod manifest;
pub mod pipeline;
pub mod survey;

use clap::{Parser, Subcommand};
use thiserror::Error;

/// Command failure, carrying the process exit code policy: usage and input
/// problems exit 2, a solver legitimately finding no valid solution exits 3,
/// everything unexpected exits 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NoValidSolution(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NoValidSolution(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pauliq",
    version,
    about = "Group commuting Pauli terms and run shot-based VQE with fewer measurement runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a built-in model Hamiltonian as a text file.
    Model(commands::ModelArgs),
    /// Partition a Hamiltonian's terms into commuting groups.
    Group(commands::GroupArgs),
    /// Export the graph-coloring QUBO for a Hamiltonian.
    Qubo(commands::QuboArgs),
    /// Run the variational loop on the statevector simulator.
    Vqe(commands::VqeArgs),
    /// Run a batch of grouping jobs and tabulate the results.
    Survey(commands::SurveyArgs),
}

/// Dispatches a parsed invocation; `argv` is recorded in run manifests.
pub fn run(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    match &cli.command {
        Command::Model(args) => commands::cmd_model(args, argv),
        Command::Group(args) => commands::cmd_group(args, argv),
        Command::Qubo(args) => commands::cmd_qubo(args, argv),
        Command::Vqe(args) => commands::cmd_vqe(args, argv),
        Command::Survey(args) => commands::cmd_survey(args, argv),
    }
}
