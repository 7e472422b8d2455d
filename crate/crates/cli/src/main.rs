//! `hibi`: class groups, conic and MCM classes, and NCCR certificates for
//! Hibi rings and toric rings with class group `Z` or `Z²`.

mod input;
mod report;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use input::{parse_box, parse_tree, BoxBounds, EdgeList, Loaded};

#[derive(Debug, Parser)]
#[command(name = "hibi", version, about = "Exact class-group, MCM and NCCR computations for Hibi rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Poset file (`elements:` / `cover:` lines) or cone file (`dim:` / `ray:` lines).
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class group, divisor relations, conic polytope and classification.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Spanning-tree edges, e.g. `e2,e3,e4,e5,e6,e7`.
        #[arg(long, value_parser = parse_tree)]
        tree: Option<EdgeList>,
    },
    /// Match a poset against the five rank-two families.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Lattice points of the conic polytope, one per line.
    Conic {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_tree)]
        tree: Option<EdgeList>,
    },
    /// MCM and conic classes over a box, as a grid.
    McmRegion {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_tree)]
        tree: Option<EdgeList>,
        /// Box `lo1,hi1,lo2,hi2` (or `lo,hi` in rank one).
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
        bounds: Option<BoxBounds>,
        /// Use the coordinates of the matched family instead of the tree basis.
        #[arg(long)]
        figure_basis: bool,
    },
    /// NCCR verification.
    Nccr {
        #[command(subcommand)]
        command: NccrCommand,
    },
    /// Emit the poset file of a family member.
    Generate {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Class group `Z`: β-invariant, windows, mutations, exchange graph.
    Z1 {
        #[command(subcommand)]
        command: Z1Command,
    },
}

#[derive(Debug, Subcommand)]
enum NccrCommand {
    /// Run the full pipeline on a poset.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Write the global-dimension certificate here, one JSON step per line.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check a certificate written by `verify` against the poset.
    Replay {
        #[command(flatten)]
        common: Common,
        certificate: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Z1Command {
    /// Weights, β, MCM interval, conic classes and the base window.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Exchange graph of windows as DOT (or JSON).
    ExchangeGraph {
        #[command(flatten)]
        common: Common,
        /// Only windows containing class 0 (the generator modules).
        #[arg(long)]
        generators_only: bool,
        /// Without `--generators-only`: windows with `|lo| <= radius`.
        #[arg(long, default_value_t = 3)]
        radius: i64,
    },
    /// Extremal mutation of a window of size β.
    Mutate {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        window_lo: i64,
        #[arg(long, value_enum)]
        end: EndArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EndArg {
    Low,
    High,
}

/// What a successful run produced; `negative` selects exit status 1.
pub struct Output {
    pub text: String,
    pub negative: bool,
}

fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Analyze { common, tree } => {
            let loaded = Loaded::read(&common.file, tree.as_ref().map(|t| t.0.as_slice()))?;
            report::analyze(&loaded, common.format)
        }
        Command::Classify { common } => {
            let loaded = Loaded::read(&common.file, None)?;
            report::classify(&loaded, common.format)
        }
        Command::Conic { common, tree } => {
            let loaded = Loaded::read(&common.file, tree.as_ref().map(|t| t.0.as_slice()))?;
            report::conic(&loaded, common.format)
        }
        Command::McmRegion { common, tree, bounds, figure_basis } => {
            let loaded = Loaded::read(&common.file, tree.as_ref().map(|t| t.0.as_slice()))?;
            report::mcm_region(&loaded, bounds.map(|b| b.0), figure_basis, common.format)
        }
        Command::Nccr { command: NccrCommand::Verify { common, certificate } } => {
            let loaded = Loaded::read(&common.file, None)?;
            let (out, cert) = report::nccr_verify(&loaded, common.format)?;
            if let Some(path) = certificate {
                let Some(cert) = cert else { bail!("no certificate was produced, so nothing written to {}", path.display()) };
                fs::write(&path, cert).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(out)
        }
        Command::Nccr { command: NccrCommand::Replay { common, certificate } } => {
            let loaded = Loaded::read(&common.file, None)?;
            let text = fs::read_to_string(&certificate).with_context(|| format!("reading {}", certificate.display()))?;
            report::nccr_replay(&loaded, &text, common.format)
        }
        Command::Generate { family, l, m, n } => report::generate(&family, l, m, n),
        Command::Z1 { command } => match command {
            Z1Command::Analyze { common } => {
                let loaded = Loaded::read(&common.file, None)?;
                report::z1_analyze(&loaded, common.format)
            }
            Z1Command::ExchangeGraph { common, generators_only, radius } => {
                let loaded = Loaded::read(&common.file, None)?;
                report::z1_exchange_graph(&loaded, generators_only, radius, common.format)
            }
            Z1Command::Mutate { common, window_lo, end } => {
                let loaded = Loaded::read(&common.file, None)?;
                let end = match end {
                    EndArg::Low => hibi_nccr::rank1::End::Low,
                    EndArg::High => hibi_nccr::rank1::End::High,
                };
                report::z1_mutate(&loaded, window_lo, end, common.format)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if out.negative { 1 } else { 0 })
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
