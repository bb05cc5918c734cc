//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Format;

#[derive(Debug, Parser)]
#[command(name = "weyllab", version, about = "Modular reducibility of Weyl modules for affine Lie algebras")]
pub struct Cli {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format: json, csv or table.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan dominant weights for membership in Y⁺ and reducibility.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Build an integral Shapovalov element in affine sl₂.
    Shapovalov(ShapovalovArgs),
    /// Build and check a homomorphism certificate.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Search for a linkage chain between two weights.
    Linkage(LinkageArgs),
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    /// Affine sl₂.
    A1 {
        #[arg(long)]
        prime: Option<i64>,
        #[arg(long)]
        max_level: Option<i64>,
        /// Only list quasi-simple weights.
        #[arg(long)]
        quasi_simple: bool,
        /// Report the lowest level with a reducible Weyl module.
        #[arg(long)]
        lowest_level: bool,
    },
    /// Affine sl_{r+1}.
    Ar {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        prime: i64,
        #[arg(long)]
        max_level: i64,
        #[arg(long)]
        quasi_simple: bool,
    },
    /// Level-one fundamental weights in Y⁺.
    LevelOne {
        /// Affine type such as B3, C2, F4, G2.
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        prime: Option<i64>,
    },
}

#[derive(Debug, Args)]
pub struct ShapovalovArgs {
    /// Positive real root, e.g. `α0+δ` or `a0+2*delta`.
    #[arg(long)]
    pub gamma: String,
    #[arg(long = "d")]
    pub d: u32,
    /// Also build the h_η-avoiding element.
    #[arg(long)]
    pub eta: Option<usize>,
    /// Check singularity and the factor formula.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Reduction mod p of the map of Weyl modules.
    WeylHom(HomArgs),
    /// Reduction mod p of the map of Verma modules.
    VermaHom(HomArgs),
}

#[derive(Debug, Args)]
pub struct HomArgs {
    /// Highest weight, e.g. `2ϖ0+ϖ1` or `2,1`.
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub gamma: String,
    #[arg(long = "d")]
    pub d: i64,
    #[arg(long)]
    pub eta: usize,
    #[arg(long)]
    pub prime: i64,
}

#[derive(Debug, Args)]
pub struct LinkageArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long)]
    pub prime: i64,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long = "type", default_value = "A1")]
    pub kind: String,
}
