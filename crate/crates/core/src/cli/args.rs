use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "apspectra",
    version,
    about = "Bohr–Fourier analysis, average variation and coefficient bounds for almost periodic signals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bohr mean value M{f} over growing windows
    Mean(MeanArgs),
    /// Bohr–Fourier coefficient a(λ) = M{f(x) e^{-iλx}}
    Coeff(CoeffArgs),
    /// Scan a frequency range for Fourier exponents
    Scan(ScanArgs),
    /// Search ε-translation numbers on a τ grid
    Periods(PeriodsArgs),
    /// Total variation on an interval, or average total variation
    Variation(VariationArgs),
    /// Check |A_j| <= V̄(f^(n)) / |λ_j|^(n+1)
    #[command(name = "bound-check")]
    BoundCheck(BoundCheckArgs),
    /// Check |c_j| <= V_[0,1](f) / (2π|j|) for a 1-periodic signal
    Taibleson(TaiblesonArgs),
    /// Truncated zeta sums: evaluation, spectrum, variation lower bound
    Zeta(ZetaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZetaMode {
    Eval,
    Spectrum,
    Bound,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SignalArgs {
    /// Signal specification file (JSON, type "trig")
    #[arg(long, value_name = "PATH")]
    pub signal: Option<PathBuf>,
    /// Use the zeta truncation ζ_{x,N} as the signal: abscissa x
    #[arg(long = "zeta-x", value_name = "F", allow_negative_numbers = true)]
    pub zeta_x: Option<f64>,
    /// Zeta truncation length N (1..=10000)
    #[arg(long = "zeta-N", value_name = "I")]
    pub zeta_n: Option<u32>,
    /// Derivative order J of the zeta signal [default: 0]
    #[arg(long = "J", value_name = "I")]
    pub order: Option<u32>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct QuadArgs {
    /// Convergence tolerance |Δ| <= tol·(1+|value|) [default: 1e-4]
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// First averaging window [default: 64]
    #[arg(long = "t-initial", value_name = "F", allow_negative_numbers = true)]
    pub t_initial: Option<f64>,
    /// Window growth factor [default: 2]
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub growth: Option<f64>,
    /// Number of window enlargements [default: 16]
    #[arg(long = "max-doublings", value_name = "I")]
    pub max_doublings: Option<u32>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Output path [default: standard output]
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format [default: json]
    #[arg(long, value_enum, value_name = "json|csv")]
    pub format: Option<Format>,
    /// JSON file of parameter values (flag names in snake_case); flags take precedence
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeanArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Start of the averaging windows [default: 0]
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub offset: Option<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Frequency λ (required)
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Frequency range LO HI (required)
    #[arg(long, num_args = 2, value_names = ["F", "F"], allow_negative_numbers = true)]
    pub range: Option<Vec<f64>>,
    /// Grid step (required)
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub step: Option<f64>,
    /// Minimum coefficient magnitude (required)
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PeriodsArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Tolerance ε of the translation numbers (required, no default)
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    /// Shift range LO HI (required)
    #[arg(long, num_args = 2, value_names = ["F", "F"], allow_negative_numbers = true)]
    pub range: Option<Vec<f64>>,
    /// Shift grid step (required)
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub step: Option<f64>,
    /// Length of the probe window [0, W] [default: 100]
    #[arg(long = "probe-window", value_name = "F", allow_negative_numbers = true)]
    pub probe_window: Option<f64>,
    /// Probe grid step [default: π/(10·λ_max)]
    #[arg(long = "probe-step", value_name = "F", allow_negative_numbers = true)]
    pub probe_step: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VariationArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Interval A B for the total variation; omit for the average variation
    #[arg(long, num_args = 2, value_names = ["F", "F"], allow_negative_numbers = true)]
    pub range: Option<Vec<f64>>,
    /// Initial partition size for the partition cross-check [default: 64]
    #[arg(long = "initial-grid", value_name = "I")]
    pub initial_grid: Option<usize>,
    /// Partition doublings for the cross-check [default: 16]
    #[arg(long = "max-refinements", value_name = "I")]
    pub max_refinements: Option<u32>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundCheckArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Exponent to check; repeat for several [default: every nonzero frequency of the signal]
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub lambda: Vec<f64>,
    /// Derivative order n [default: 0]
    #[arg(long, value_name = "I")]
    pub n: Option<u32>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TaiblesonArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Largest harmonic |j| to check [default: 10]
    #[arg(long = "j-max", value_name = "I")]
    pub j_max: Option<u32>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Abscissa x (required)
    #[arg(
        long = "x",
        alias = "zeta-x",
        value_name = "F",
        allow_negative_numbers = true
    )]
    pub x: Option<f64>,
    /// Truncation length N, 1..=10000 (required)
    #[arg(long = "N", alias = "zeta-N", value_name = "I")]
    pub n_terms: Option<u32>,
    /// Derivative order J [default: 0]
    #[arg(long = "J", value_name = "I")]
    pub order: Option<u32>,
    /// eval: samples of ζ^(J)_{x,N}(y); spectrum: exponent scan; bound: V̄ against the lower bound [default: bound]
    #[arg(long, value_enum)]
    pub mode: Option<ZetaMode>,
    /// eval: y range [default: 0 50]; spectrum: λ range [default: -log(N)-0.5 0.5]
    #[arg(long, num_args = 2, value_names = ["F", "F"], allow_negative_numbers = true)]
    pub range: Option<Vec<f64>>,
    /// eval: y step [default: 0.1]; spectrum: λ grid step [default: 0.005]
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub step: Option<f64>,
    /// spectrum: minimum coefficient magnitude (required in spectrum mode)
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
