use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "kgprof",
    version,
    about = "Profile knowledge graphs and estimate their overlap"
)]
pub struct Cli {
    /// Output directory, or "-" for standard output.
    #[arg(long, global = true, env = "KGPROF_OUT", default_value = "./kgprof-out")]
    pub out: String,

    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Abort on the first malformed N-Triples line instead of skipping it.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Predicate whose literal values are entity labels (repeatable).
    #[arg(long = "label-predicate", global = true, value_name = "IRI")]
    pub label_predicates: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph-level metrics of one dump.
    Profile {
        dump: PathBuf,
        /// Also write a binary index snapshot for faster reloads.
        #[arg(long)]
        snapshot: bool,
        /// Graph name used in the report (default: file stem).
        #[arg(long)]
        graph: Option<String>,
    },
    /// Detail statistics for mapped classes.
    Classes {
        dump: PathBuf,
        /// Class mapping JSON (default: the bundled ten prominent classes).
        #[arg(long)]
        mapping: Option<PathBuf>,
        /// Key of this graph in the mapping (default: file stem).
        #[arg(long)]
        graph: Option<String>,
        /// Fail when a mapped IRI is not a class of the graph.
        #[arg(long)]
        strict_mapping: bool,
    },
    /// Class-size hierarchy as JSON for sunburst plots.
    Sunburst {
        dump: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long = "top-k", default_value_t = 12)]
        top_k: usize,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Candidate links between two dumps for every heuristic of the grid.
    Link {
        dump_a: PathBuf,
        dump_b: PathBuf,
        /// Heuristic grid JSON (default: the 16-configuration grid).
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Compare all label pairs instead of token blocks.
        #[arg(long)]
        no_blocking: bool,
    },
    /// Overlap estimate for two dumps calibrated on existing links.
    Estimate {
        dump_a: PathBuf,
        dump_b: PathBuf,
        /// owl:sameAs N-Triples or two-column CSV link files.
        #[arg(long, required = true, num_args = 1..)]
        gold: Vec<PathBuf>,
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long)]
        no_blocking: bool,
    },
    /// Pairwise gain and completeness matrices for all graphs of a manifest.
    Matrix { manifest: PathBuf },
    /// Every report for all graphs of a manifest.
    Report { manifest: PathBuf },
}
