use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use srg_core::Strategy;

#[derive(Debug, Parser)]
#[command(name = "srg", version, about = "Scaled relative graphs of real matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample points of the SRG and write them as `re,im` CSV.
    Sample(SampleArgs),
    /// Write the exact SRG region of a 2x2, symmetric or normal matrix.
    Exact(ExactArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Render regions and clouds to SVG.
    Render(RenderArgs),
    /// Print eigenvalues as `re,im`, one per line.
    Eigs(EigsArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, default_value_t = srg_core::sampling::DEFAULT_SAMPLE_COUNT)]
    pub count: usize,
    #[arg(long, default_value = "uniform-sphere", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: srg_core::SrgError| e.to_string())
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Geometry,
    Twocircles,
    Normal,
    Symmetric,
    Blockdiag,
    Spectrum,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Required by every suite except `geometry`.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for cloud-versus-region checks, relative to the region
    /// scale.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Region JSON (`.json`) and cloud CSV (`.csv`) files, in layer order.
    pub inputs: Vec<PathBuf>,
    /// Render settings (JSON); defaults apply when omitted.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Adds the matrix's eigenvalues as a marker layer.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EigsArgs {
    #[arg(long)]
    pub matrix: PathBuf,
}
