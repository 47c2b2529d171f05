use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "lfsm", version, about = "Linear finite state machines over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Random ring register with a primitive connection polynomial.
    GenHw(GenHwArgs),
    /// Random word register with a primitive connection polynomial.
    GenSw(GenSwArgs),
    /// Diffusion delay, hardware figures and primitivity of an automaton.
    Analyze(AnalyzeArgs),
    /// Clock an automaton and print its outputs or states.
    Simulate(SimulateArgs),
    /// Build a windmill and report its connection and interleaving.
    Windmill(WindmillArgs),
    /// Polynomial utilities.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
    /// Binary expansion of a rational automaton.
    Expand(ExpandArgs),
    /// Canonical JSON of any supported input format.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Naive,
    Cofactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// One vane per nonzero entry, rows first.
    PerCoefficient,
    /// One vane per nonzero entry, columns first.
    PerCoefficientCol,
    /// One Galois register per row over the row denominator.
    PerRow,
}

#[derive(Args, Debug)]
pub struct IoArgs {
    /// Input file; standard input when absent.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Indented JSON.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Random seed; a fresh one is drawn and reported when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_trials: u64,
    /// `builtin`, or a JSON factor file merged over the builtin table.
    #[arg(long, default_value = "builtin")]
    pub factors: String,
    /// Accept irreducible polynomials when no factorization of 2^n-1 is known.
    #[arg(long)]
    pub allow_irreducible: bool,
    /// Output file for the automaton; it is embedded in the report otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Args, Debug)]
pub struct GenHwArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub feedbacks: Option<usize>,
    #[arg(long, value_enum, default_value_t = Algo::Naive)]
    pub algo: Algo,
    /// Emit a CSV of mean trials against the estimate for `lo:hi` sizes,
    /// with `n/2` feedbacks.
    #[arg(long, value_name = "LO:HI", conflicts_with_all = ["n", "out"])]
    pub sweep: Option<String>,
    /// Seeds per size in a sweep.
    #[arg(long, default_value_t = 100, requires = "sweep")]
    pub runs: u64,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct GenSwArgs {
    #[arg(long)]
    pub n: usize,
    /// Word size in bits; must divide n.
    #[arg(long)]
    pub word: usize,
    #[arg(long)]
    pub feedbacks: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, default_value = "builtin")]
    pub factors: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report the correlation profile of flipping this state bit instead.
    #[arg(long)]
    pub avalanche: Option<usize>,
    /// Clocks for the avalanche profile.
    #[arg(long, default_value_t = 256)]
    pub horizon: usize,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Initial state in hex, bit i for cell i; carries start at zero.
    #[arg(long)]
    pub init: Option<String>,
    #[arg(long, default_value_t = 16)]
    pub steps: usize,
    /// Print every state, clock 0 included, one per line.
    #[arg(long)]
    pub dump: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct WindmillArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "1")]
    pub beta: String,
    /// Comma-separated shifts, one per vane.
    #[arg(long, value_delimiter = ',', required = true)]
    pub shifts: Vec<usize>,
    /// Initial cell bits in hex.
    #[arg(long, default_value = "0x1")]
    pub init: String,
    /// Interleaving horizon per vane; twice the connection degree when absent.
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Print `steps + 1` clock lines of bits and carries instead.
    #[arg(long)]
    pub dump: bool,
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum PolyCommand {
    /// Irreducibility, primitivity and the order of X.
    Check {
        /// `x^8+x^6+x^5+x^3+1` or `0x169`.
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "builtin")]
        factors: String,
    },
    /// Minimal polynomial of a bit string.
    Minpoly {
        #[arg(long)]
        bits: String,
    },
    /// Leading bits of num/den as a power series.
    Series {
        #[arg(long)]
        num: String,
        #[arg(long, default_value = "1")]
        den: String,
        #[arg(long, default_value_t = 32)]
        terms: usize,
    },
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, value_enum, default_value_t = Strategy::PerRow)]
    pub strategy: Strategy,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub io: IoArgs,
}
