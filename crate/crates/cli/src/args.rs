use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "equiquad",
    version,
    about = "End-corrected equispaced quadrature rules, computed exactly"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Exact, global = true)]
    pub format: Format,

    /// Significant digits for decimal output (17 = shortest round trip).
    #[arg(long, default_value_t = 17, global = true, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub digits: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Plain text with rationals as p/q.
    Exact,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the end corrections c_0..c_m for a terminal offset.
    Corrections(CorrectionsArgs),
    /// Print the full weight vector of a rule.
    Weights(WeightsArgs),
    /// Print a named classical rule; without a name, list the catalog.
    Catalog(CatalogArgs),
    /// Integrate a builtin integrand or a file of samples.
    Integrate(IntegrateArgs),
    /// Run a node-doubling convergence study.
    Order(OrderArgs),
}

#[derive(Debug, Args)]
pub struct CorrectionsArgs {
    /// Terminal offset in step-lengths (integer, p/q, or decimal).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub m: usize,
    /// Also print the difference coefficients b_0..b_m.
    #[arg(long)]
    pub with_b: bool,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Right terminal offset; defaults to alpha.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Correction depth at the left end (and the right, unless --m-right).
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub m_right: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// e.g. simpson38, nc-open:3, gregory:2:9, ab:3:bwd
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    /// Builtin integrand: poly:c0,c1,... | exp | sin
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    pub builtin: Option<String>,
    /// File with one ordinate per line (or CSV; see --column).
    #[arg(long)]
    pub samples: Option<PathBuf>,
    /// Zero-based CSV column holding the ordinates.
    #[arg(long, default_value_t = 0)]
    pub column: usize,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Index of the last unit-weight node (builtin integrands).
    #[arg(long)]
    pub n: Option<usize>,
    /// Integration limits as a,b.
    #[arg(long, allow_hyphen_values = true)]
    pub limits: Option<String>,
    /// Sample spacing, instead of --limits (sample files).
    #[arg(long)]
    pub h: Option<f64>,
    /// Also integrate with m + 1 corrections and report the difference.
    #[arg(long)]
    pub paired: bool,
    /// Evaluate exactly in rational arithmetic (poly builtins only).
    #[arg(long)]
    pub rational: bool,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long)]
    pub builtin: String,
    /// Exact value of the integral (integer, p/q, or decimal).
    #[arg(long, allow_hyphen_values = true)]
    pub exact: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub m: usize,
    /// First level uses n0 + 1 nodes.
    #[arg(long)]
    pub n0: usize,
    #[arg(long, default_value_t = 1)]
    pub doublings: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "0,1")]
    pub limits: String,
}
