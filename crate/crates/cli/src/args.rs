use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diomon::DEFAULT_GUARD;

/// Structural invariants of the monoid of nonnegative solutions of
/// a1 x1 + ... + a(r-1) x(r-1) ≡ 0 (mod ar).
#[derive(Debug, Parser)]
#[command(name = "diomon", version)]
pub struct Cli {
    /// Coefficients a1,...,ar; the last one is the modulus.
    #[arg(long, global = true, value_delimiter = ',', value_name = "A1,...,AR")]
    pub eq: Option<Vec<u64>>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest box volume any enumeration may scan.
    #[arg(long, global = true, value_name = "VOLUME", default_value_t = DEFAULT_GUARD)]
    pub guard: u128,

    /// Emit `elapsed_ms: null` so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Box,
    Closed,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apéry set with respect to the extremal rays.
    Apery {
        #[arg(long, value_enum, default_value_t = Method::Box)]
        method: Method,
    },
    /// Hilbert basis: the rays and the minimal nonzero Apéry elements.
    Hilbert,
    /// Split a monoid element into its Apéry part and ray multiplicities.
    Decompose(PointArg),
    /// Elliott parametrization of the Apéry set, or of one element with --point.
    Elliott {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_name = "X1,...")]
        point: Option<Vec<i64>>,
    },
    /// Class group.
    Classgroup,
    /// Inner class group.
    Innerclass,
    /// Cross-check the invariants against closed forms and brute force.
    Verify {
        /// Also sweep every a, b in [1, c-1] for c in [2, N] (three coefficients).
        #[arg(long, value_name = "N")]
        sweep_c: Option<u64>,
    },
    /// Solution of the original equation projecting to a monoid element.
    Lift(PointArg),
    /// Carry monoid model.
    #[command(subcommand)]
    Carry(CarryCommand),
}

#[derive(Debug, Args)]
pub struct PointArg {
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true,
        value_name = "X1,..."
    )]
    pub point: Vec<i64>,
}

#[derive(Debug, Subcommand)]
pub enum CarryCommand {
    /// Print the canonical carry table as JSON.
    Export,
    /// Check the carry monoid axioms.
    Check {
        /// Depth bound for root closure; defaults to twice the group exponent.
        #[arg(long)]
        depth: Option<u64>,
        /// Coordinate bound for root closure.
        #[arg(long, default_value_t = diomon::carry_monoid::DEFAULT_COORD_BOUND)]
        bound: u64,
        /// Check a carry table read from this file instead of the canonical one.
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
    },
    /// Check that the canonical model is isomorphic to the monoid.
    Iso {
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
}
