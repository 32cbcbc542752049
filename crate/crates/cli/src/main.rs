//! `ctk`: command-line front end for the causal structure toolkit.
//!
//! Exit codes: 0 success, 2 usage error, 3 property refuted, 4 internal
//! consistency failure.

mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RasterFormat {
    Pgm,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "ctk",
    version,
    about = "Causal structure of the Minkowski plane, in exact arithmetic"
)]
pub struct Cli {
    /// Report format; defaults to $CTK_OUTPUT, then text.
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Shorthand for `--output json`.
    #[arg(long, global = true, conflicts_with = "output")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Causal class of y relative to x, and Q(y − x).
    Classify {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Whether x R y for a relation given by name or index 1–10.
    Relate {
        relation: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// The 30-row topology catalog.
    Catalog,
    /// A member of a topology's neighborhood family.
    Neighborhood {
        tid: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "1")]
        eps: String,
    },
    /// Membership of p in a region file or a topology's neighborhood member.
    Member {
        source: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        anchor: String,
        #[arg(long, default_value = "1")]
        eps: String,
    },
    /// Comparability of an interval or intersection topology with E.
    Compare {
        tid: String,
        /// Anchors to test at; defaults to (0,0), (3,-2), (-5/2,7/3).
        #[arg(long, allow_hyphen_values = true)]
        anchor: Vec<String>,
    },
    /// Convergence of a point sequence against a neighborhood family.
    Converge {
        /// Topology index, or E for Euclidean balls.
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        limit: String,
        #[arg(long)]
        seq: PathBuf,
        /// Comma-separated scale parameters; defaults to 1,1/2,1/4.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<String>,
    },
    /// Light-cone containment of every interval and intersection core.
    LctAudit {
        #[arg(long, allow_hyphen_values = true)]
        anchor: Vec<String>,
    },
    /// The swap-dual topology index.
    Dual { tid: String },
    /// Whether an affine map preserves a relation on random pairs.
    AutomorphismCheck {
        map: String,
        relation: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Membership raster of a region over a window.
    Render {
        source: String,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        anchor: String,
        #[arg(long, default_value = "1")]
        eps: String,
        /// Corners `t,s:t,s`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// `WxH`.
        #[arg(long)]
        res: String,
        #[arg(long, value_enum, default_value = "pgm")]
        format: RasterFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Split rows across worker threads; output is identical.
        #[arg(long)]
        parallel: bool,
    },
}

impl Cli {
    fn format(&self) -> Result<OutputFormat, error::CliError> {
        if self.json {
            return Ok(OutputFormat::Json);
        }
        if let Some(f) = self.output {
            return Ok(f);
        }
        match std::env::var("CTK_OUTPUT") {
            Err(_) => Ok(OutputFormat::Text),
            Ok(v) => OutputFormat::from_str(&v, true).map_err(|_| {
                error::CliError::Usage(format!("CTK_OUTPUT must be json or text, got {v:?}"))
            }),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli
        .format()
        .and_then(|format| commands::run(&cli.command, format));
    match result {
        Ok(refuted) => ExitCode::from(if refuted { 3 } else { 0 }),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
