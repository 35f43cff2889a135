//! `curvegraph`: command-line experiments over the library.
//!
//! Results are written as compact JSON to standard output (or `--out`).
//! `--json` wraps them as `{"schema": 1, "command": "...", "result": ...}`.
//! Exit codes: 0 success, 2 invalid input (error JSON on stderr), 64 usage,
//! 70 internal failure.

mod cache;
mod run;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "curvegraph",
    version,
    about = "Arcs, curves and graphs on punctured disks; end spaces of infinite-type surfaces"
)]
pub struct Cli {
    /// Wrap the result in a versioned envelope
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the result to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// End spaces and the finite-invariance index
    #[command(subcommand)]
    Ends(Ends),
    /// Arc and curve arithmetic on a punctured disk
    #[command(subcommand)]
    Engine(Engine),
    /// Unicorn paths and the slim-triangle check
    #[command(subcommand)]
    Unicorn(Unicorn),
    /// Build, export and measure finite graph models
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Coarse-geometry checks on graph models
    #[command(subcommand)]
    Metric(Metric),
    /// Run every acceptance experiment and tabulate pass/fail
    PaperSuite {
        /// Only these criteria, e.g. 1,2,7
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
pub struct Surface {
    /// Descriptor, e.g. "genus=inf; ends=fin(3); ag=all"
    #[arg(long, conflicts_with = "name", required_unless_present = "name")]
    pub desc: Option<String>,
    /// Catalog name, e.g. tripod
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Subcommand)]
pub enum Ends {
    /// Successive Cantor–Bendixson derivatives of an end space
    Derive {
        /// End space term, e.g. "union(cantor, char(2, 3))"
        #[arg(long)]
        ends: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Characteristic system (α, n) of a countable end space
    Charsys {
        #[arg(long)]
        ends: String,
    },
    /// Finite-invariance index
    Fii {
        #[command(flatten)]
        surface: Surface,
        /// Also report the rule that fired and any certificate
        #[arg(long)]
        explain: bool,
    },
    /// Which zero-index type a surface is, if any
    Classify {
        #[command(flatten)]
        surface: Surface,
    },
}

#[derive(Args)]
pub struct Disk {
    /// Number of punctures
    #[arg(long)]
    pub n: usize,
    /// Marked punctures, e.g. 1,2,3 (default: all)
    #[arg(long, value_delimiter = ',', conflicts_with = "blocks")]
    pub marks: Option<Vec<u8>>,
    /// Partition of the punctures: `singletons` or e.g. "1,2;3,4"
    #[arg(long)]
    pub blocks: Option<String>,
}

#[derive(Subcommand)]
pub enum Engine {
    /// Geometric intersection number of two classes
    Intersect {
        #[arg(long)]
        n: usize,
        /// Class expression, e.g. "s1 S2 * arc(1,3)"
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Normal-coordinate fingerprint of a class
    Fingerprint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: String,
    },
    /// Apply a generator word to a class
    Apply {
        #[arg(long)]
        n: usize,
        /// Word such as "s1 S2", applied right to left
        #[arg(long)]
        word: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Subcommand)]
pub enum Unicorn {
    /// The unicorn path from a at alpha to b at beta
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        alpha: u8,
        #[arg(long)]
        beta: u8,
        /// Write the DOT rendering of A(a, b) (next to --out, else to stdout)
        #[arg(long)]
        dot: bool,
    },
    /// Whether A(a, b) lies in the 2-neighbourhood of A(a, d) ∪ A(d, b)
    Slim {
        #[command(flatten)]
        disk: Disk,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        d: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    A2,
    Sep2,
    Farey,
    Layers,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand)]
pub enum GraphCmd {
    /// Build a finite model
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Punctures (a2, sep2)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', conflicts_with = "blocks")]
        marks: Option<Vec<u8>>,
        #[arg(long)]
        blocks: Option<String>,
        /// Word-ball radius (a2, sep2)
        #[arg(long = "L", default_value_t = 2)]
        radius: usize,
        /// Seed class expressions (a2, sep2); repeatable
        #[arg(long = "from")]
        from: Vec<String>,
        /// Slope box radius (farey)
        #[arg(long, default_value_t = 5)]
        box_radius: i64,
        /// Layers and width (layers)
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        w: usize,
        /// Also write DOT (next to --out, else to stdout)
        #[arg(long)]
        dot: bool,
    },
    /// Re-emit a saved model as JSON, DOT or an edge-list CSV
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// CSV distance table of a saved model, or the exact d ≤ 2 decision for two classes
    Distance {
        #[arg(long, conflicts_with_all = ["kind", "a", "b"], required_unless_present_all = ["kind", "a", "b"])]
        graph: Option<PathBuf>,
        /// Only distances from this vertex
        #[arg(long, requires = "graph")]
        from: Option<usize>,
        #[arg(long, value_enum, requires_all = ["a", "b"])]
        kind: Option<Kind>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', conflicts_with = "blocks")]
        marks: Option<Vec<u8>>,
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum Metric {
    /// Four-point δ and triangle slimness of a saved model
    Delta {
        #[arg(long)]
        graph: PathBuf,
        /// Quadruples to sample when exhaustive scanning is too large
        #[arg(long, default_value_t = 20_000)]
        sample: usize,
    },
    /// The boundary-map inequalities on random arc pairs
    QiAudit {
        #[command(flatten)]
        disk: Disk,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        /// Longest random word
        #[arg(long, default_value_t = 4)]
        len: usize,
    },
    /// Closest-point projection onto a labelled part, checked as a quasi-retraction
    Retract {
        #[arg(long)]
        graph: PathBuf,
        /// Label of the target vertices
        #[arg(long)]
        onto: String,
    },
    /// Bounded-orbit certificate for a labelled orbit, with adjacency as the pair predicate
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        orbit: String,
    },
    /// Connectivity criterion from generator images and per-component witnesses
    Putman {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_delimiter = ',')]
        images: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        witnesses: Vec<usize>,
    },
    /// Farey distances along the orbit of a slope under a matrix
    Translation {
        /// Rows separated by `;`, e.g. "2,1;1,1"
        #[arg(long, default_value = "2,1;1,1")]
        matrix: String,
        #[arg(long, default_value = "1/0")]
        base: String,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
}

const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| run::run(&cli)));
    let (code, err) = match outcome {
        Ok(Ok(())) => return ExitCode::SUCCESS,
        Ok(Err(e)) => (if e.is_internal() { EXIT_INTERNAL } else { EXIT_INVALID }, e),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (EXIT_INTERNAL, run::Failure::Internal(msg))
        }
    };
    eprintln!("{}", err.to_json());
    ExitCode::from(code)
}
