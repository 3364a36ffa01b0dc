use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dkq", version, about = "Spectra of the graphs D(k,q) and their point graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a spectrum and check the second-eigenvalue bound.
    Spectrum(SpectrumArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Tabulate lambda2, bounds and Cheeger intervals of D(5,q).
    Report(ReportArgs),
    /// Write the edge list of D(k,q).
    Export(ExportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Assemble from the representation blocks (k = 5 only).
    Repr,
    /// Dense eigensolver on the adjacency matrix.
    Brute,
    /// Both, with a comparison report.
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    /// The bipartite graph D(k,q).
    D,
    /// The point graph of D(5,q).
    Point,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = Method::Repr)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = GraphArg::D)]
    pub graph: GraphArg,
    /// Bucketing and comparison tolerance [default: 1e-6 * q].
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Lift the size limit on brute-force eigensolves.
    #[arg(long)]
    pub allow_large: bool,
    /// Where to write the comparison report for `--method both` [default: stderr].
    #[arg(long)]
    pub compare_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7])]
    pub q: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7, 9, 11, 13])]
    pub q: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Allow more than `EXPORT_EDGE_LIMIT` edges.
    #[arg(long)]
    pub allow_large: bool,
}
