mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phylopart::systems::DEFAULT_BUDGET;

use report::{exit, Report};

#[derive(Parser, Debug)]
#[command(name = "phylopart", version, about = "Compatibility of partitions with phylogenetic trees")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Re-check every verdict with the brute-force oracle when the instance is small enough.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a tree and a partition are compatible.
    Check(CheckArgs),
    /// Print the partition induced by deleting edges of a tree.
    Cut(CutArgs),
    /// Find the splits of a tree or split system whose common refinement is a partition.
    Splits(SplitsArgs),
    /// Find a refinement of a tree compatible with every partition of a system.
    System(SystemArgs),
    /// Find an edge-colored tree explaining a symmetric Fitch map.
    Fitch(FitchArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Newick tree.
    tree: PathBuf,
    /// Partition, one line `a,b|c|d,e`.
    partition: PathBuf,
    /// Treat the tree as unrooted.
    #[arg(long)]
    unrooted: bool,
    /// Also print the refined tree when the input is already compatible.
    #[arg(long)]
    refine: bool,
    /// Which separating edge set to list for a compatible pair.
    #[arg(long, value_enum, default_value_t = EdgeSet::Canonical)]
    edges: EdgeSet,
}

#[derive(Args, Debug)]
pub struct CutArgs {
    /// Newick tree.
    tree: PathBuf,
    /// Edges to delete, each named by its lower vertex: a leaf label, an
    /// inner-vertex name, `v<id>`, or the cluster below it as `a,b,c`.
    edges: Vec<String>,
}

#[derive(Args, Debug)]
pub struct SplitsArgs {
    /// Newick tree (read as unrooted) or split file with lines `a,b|c,d,e`.
    input: PathBuf,
    /// Partition, one line.
    partition: PathBuf,
    /// Report whether the split system is pairwise compatible.
    #[arg(long)]
    check_treelike: bool,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// Partition system, one partition per line.
    system: PathBuf,
    /// Tree to refine; the star tree on the leaf set when omitted.
    #[arg(long)]
    tree: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct FitchArgs {
    /// Fitch map with lines `x,y: 1,2`.
    map: PathBuf,
    /// Only test this tree instead of searching all trees.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Treat the tree as unrooted.
    #[arg(long, requires = "tree")]
    unrooted: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Largest number of binary trees the search may visit.
    #[arg(long, env = "PHYLOPART_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSet {
    Canonical,
    Min,
    Max,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Check(_) => "check",
        Command::Cut(_) => "cut",
        Command::Splits(_) => "splits",
        Command::System(_) => "system",
        Command::Fitch(_) => "fitch",
    };
    let result = match &cli.command {
        Command::Check(a) => commands::check(a, cli.oracle),
        Command::Cut(a) => commands::cut(a, cli.oracle),
        Command::Splits(a) => commands::splits(a, cli.oracle),
        Command::System(a) => commands::system(a, cli.oracle),
        Command::Fitch(a) => commands::fitch(a, cli.oracle),
    };
    let report = result.unwrap_or_else(|e| {
        let mut r = Report::new(name, "error", exit::INPUT_ERROR);
        r.error = Some(e.to_string());
        r
    });
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text if report.exit_code == exit::INPUT_ERROR => {
            eprintln!("error: {}", report.error.as_deref().unwrap_or("invalid input"))
        }
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code as u8)
}
