use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Certified clamped-plate spectra and exact recursion certificates.
#[derive(Debug, Parser)]
#[command(name = "clamped-plate", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// key = value file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (1 = sequential, 0 = one per core)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Decimal places in tables
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Starting precision in bits
    #[arg(long, global = true)]
    pub prec: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    J,
    I,
    W,
}

#[derive(Debug, Args)]
pub struct ScanOpts {
    /// Upper end of the scan
    #[arg(long)]
    pub xmax: Option<String>,
    /// Enclosure width: decimal, p/q or 2^-k
    #[arg(long)]
    pub width: Option<String>,
    /// Grid step
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclosures of J_m, I_m, their derivatives, W_m and W_m' at x
    Eval {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        x: String,
        /// Scale the modified functions by e^-x
        #[arg(long)]
        scaled: bool,
        /// Absolute error target
        #[arg(long)]
        target: Option<String>,
    },
    /// Exact Taylor coefficients
    Series {
        #[arg(long)]
        m: String,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, value_enum, default_value = "w")]
        function: Function,
    },
    /// Certified zeros of W_m (or J_m with --membrane)
    Zeros {
        #[arg(long)]
        m: String,
        #[command(flatten)]
        scan: ScanOpts,
        #[arg(long)]
        membrane: bool,
    },
    /// Plate eigenvalues for all orders up to --max, sorted
    Spectrum {
        #[arg(long)]
        max: Option<u32>,
        #[command(flatten)]
        scan: ScanOpts,
    },
    /// Radial eigenfunction samples and boundary checks
    Profile {
        #[arg(long)]
        m: String,
        /// Only this zero index
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        samples: Option<u32>,
        /// Boundary checks only, no samples
        #[arg(long)]
        boundary: bool,
        /// Bound on the u'(1) enclosure radius, relative to w
        #[arg(long)]
        tol: Option<String>,
        #[command(flatten)]
        scan: ScanOpts,
    },
    /// Exact and numeric verification suites
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Disjointness of zeros across orders and the smallest gap
    ScanCollisions {
        #[arg(long)]
        max: Option<u32>,
        #[arg(long)]
        threshold: Option<String>,
        #[command(flatten)]
        scan: ScanOpts,
    },
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Cross-product formulas on truncated series
    Lemma {
        #[arg(long, default_value = "0..10")]
        m: String,
        #[arg(long)]
        order: Option<u32>,
        /// Skip checks needing order -1 at m = 0 instead of using the convention
        #[arg(long)]
        skip_negative: bool,
    },
    /// The recursion on truncated series
    Recursion {
        #[arg(long, default_value = "0..10")]
        m: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// The recursion as an identity over Q(z)
    RecursionSymbolic {
        #[arg(long, default_value = "0..10")]
        m: String,
    },
    /// Base rows W_0..W_3 and their determinant
    Basematrix,
    /// Leading-term certificates of the four-form
    Fourform {
        #[arg(long)]
        max: Option<u32>,
        /// A single form, e.g. 0,1,2,5
        #[arg(long, conflicts_with = "max")]
        tuple: Option<String>,
    },
    /// Random numeric residuals of the recursion and the Bessel equations
    Ode {
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Bound every residual enclosure must meet
        #[arg(long)]
        residual: Option<String>,
    },
}
