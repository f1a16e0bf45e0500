use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod input;
mod plot;
mod run;

/// Exact PL staircases: boundaries, socles, primary and irreducible
/// decompositions of downsets, upsets and intervals in R^n.
#[derive(Parser, Debug)]
#[command(name = "staircase", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Abort when an intermediate PL set exceeds this many cells.
    #[arg(long, global = true)]
    pub cell_limit: Option<usize>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Faces {
    /// Face as a JSON list of 1-based coordinates, e.g. "[1,3]".
    #[arg(long)]
    pub tau: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Grid {
    /// Grid spacing (rational, e.g. "1/4").
    #[arg(long)]
    pub grid_step: Option<String>,
    /// Probe length for directional tests; must be below half the step.
    #[arg(long)]
    pub probe: Option<String>,
    /// Viewport or sampling box: "[lo,hi]" for every axis, or
    /// "[[lo1,hi1],[lo2,hi2],...]".
    #[arg(long = "box")]
    pub bbox: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate an instance.
    Validate {
        input: PathBuf,
    },
    /// Shape of a downset at a point.
    Shape {
        input: PathBuf,
        /// JSON list of rationals, e.g. '["1/2", 0]'.
        #[arg(long)]
        point: String,
    },
    /// Upper boundary of a downset along --sigma, or lower boundary of an
    /// upset along --xi.
    Boundary {
        input: PathBuf,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        xi: Option<String>,
    },
    /// Closure minus the downset.
    Frontier {
        input: PathBuf,
    },
    /// One socle entry, or the whole table when no faces are given.
    Socle {
        input: PathBuf,
        #[command(flatten)]
        faces: Faces,
        /// Only closed strata (sigma = tau).
        #[arg(long)]
        closed: bool,
    },
    /// Associated faces.
    Ass {
        input: PathBuf,
    },
    /// One top entry, or the whole table when no faces are given.
    Top {
        input: PathBuf,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        xi: Option<String>,
    },
    /// Attached faces.
    Att {
        input: PathBuf,
    },
    DecomposePrimary {
        input: PathBuf,
    },
    DecomposeIrreducible {
        input: PathBuf,
    },
    /// Is a socle-shaped family dense in the instance's socle table?
    DenseCheck {
        input: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    Fringe {
        input: PathBuf,
    },
    /// Reflect an instance through the origin.
    Dual {
        input: PathBuf,
    },
    /// Decompose a monomial ideal given as {"n", "generators"}.
    DiscreteDecompose {
        input: PathBuf,
    },
    /// Run the oracle suite on an instance, or on --fuzz random downsets
    /// seeded from STAIRCASE_SEED.
    Verify {
        input: Option<PathBuf>,
        #[arg(long)]
        fuzz: Option<usize>,
        /// Dimension of fuzzed downsets.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Cell budget of fuzzed downsets.
        #[arg(long, default_value_t = 4)]
        budget: usize,
        #[command(flatten)]
        grid: Grid,
    },
    /// Draw a planar instance as SVG.
    Plot {
        input: PathBuf,
        #[arg(long = "box")]
        bbox: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
