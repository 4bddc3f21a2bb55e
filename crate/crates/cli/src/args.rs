use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use wpslab_core::polyseq::PolySequenceKind;
use wpslab_core::FamilyKind;

/// Hypersurfaces in weighted projective space: constructions, certificates
/// and small searches, as text or JSON.
#[derive(Debug, Parser)]
#[command(name = "wpslab", version)]
pub struct Cli {
    /// Print the JSON certificate document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the JSON document to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// Comma-separated positive integers of any size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightList(pub Vec<BigInt>);

fn positive_integer(s: &str) -> Result<BigInt, String> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a positive decimal integer"));
    }
    let v: BigInt = s.parse().map_err(|e| format!("{e}"))?;
    if v == BigInt::from(0) {
        return Err("values must be positive".into());
    }
    Ok(v)
}

pub fn parse_weights(s: &str) -> Result<WeightList, String> {
    s.split(',').map(positive_integer).collect::<Result<_, _>>().map(WeightList)
}

pub fn parse_degree(s: &str) -> Result<BigInt, String> {
    positive_integer(s)
}

fn parse_integer(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("{s:?} is not a decimal integer"))
}

fn parse_target(s: &str) -> Result<i32, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("canonical degree target must be +1 or -1, got {s:?}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    General,
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    MinVolume,
    MaxBottomWeight,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The first COUNT terms of Sylvester's sequence.
    Sylvester {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=20))]
        count: u32,
    },
    /// One polynomial of the f, e, b, z, d, dtilde sequences, optionally evaluated.
    #[command(allow_negative_numbers = true)]
    Poly {
        #[arg(value_parser = |s: &str| s.parse::<PolySequenceKind>().map_err(|e| e.to_string()))]
        kind: PolySequenceKind,
        #[arg(value_parser = clap::value_parser!(u32).range(0..=12))]
        index: u32,
        /// Evaluate at this integer.
        #[arg(long, value_parser = parse_integer)]
        at: Option<BigInt>,
    },
    /// Build a family member and print its full certificate.
    Construct {
        /// general, general_r3 or fano
        #[arg(long, value_parser = |s: &str| s.parse::<FamilyKind>().map_err(|e| e.to_string()))]
        family: FamilyKind,
        /// Cycle length: odd and at least 3.
        #[arg(short, long, default_value_t = 3)]
        r: usize,
        /// Dimension: at least r - 1.
        #[arg(short, long)]
        n: usize,
        /// Largest weight for the optional subset-criterion cross-check.
        #[arg(long, default_value_t = 10_000_000)]
        guard: u64,
    },
    /// Well-formedness, canonical degree and quasi-smoothness of X_d in P(weights).
    Verify {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightList,
        #[arg(long, value_parser = parse_degree)]
        degree: BigInt,
        #[arg(long, value_enum, default_value_t = MethodArg::General)]
        method: MethodArg,
        /// Cycle length for the cycle method, which reads the first r weights
        /// in the order given.
        #[arg(short, long)]
        r: Option<usize>,
        /// Largest smallest-generator for which semigroup membership is computed.
        #[arg(long, default_value_t = 10_000_000)]
        guard: u64,
    },
    /// Section counts h^0(O_X(m)) for m = 0..=max_m and the volume estimate.
    Hilbert {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightList,
        #[arg(long, value_parser = parse_degree)]
        degree: BigInt,
        #[arg(long)]
        max_m: u64,
    },
    /// Exhaustive search over weight multisets with max weight at most B.
    #[command(allow_negative_numbers = true)]
    Search {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        max_weight: u64,
        /// +1 (K_X = O_X(1)) or -1 (K_X = O_X(-1)).
        #[arg(long, value_parser = parse_target)]
        canonical: i32,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
        #[arg(long, default_value_t = 0)]
        shard_index: u32,
        #[arg(long, default_value_t = 1)]
        shard_count: u32,
        /// Split an unsharded run into this many hash shards on worker threads.
        #[arg(long, default_value_t = 1)]
        workers: u32,
        #[arg(long, default_value_t = 10_000_000)]
        guard: u64,
        /// Print rejection counts by reason.
        #[arg(short, long)]
        verbose: bool,
    },
    /// log vol(K_X) / log vol(K_Y + Delta) for the general-type member.
    Ratio {
        #[arg(short, long, default_value_t = 3)]
        r: usize,
        #[arg(short, long)]
        n: usize,
    },
    /// Check the polynomial identities at every index up to max_index.
    Identities {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(0..=12))]
        max_index: u32,
    },
}
