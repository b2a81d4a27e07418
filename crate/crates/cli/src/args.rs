use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridlabel::search::DEFAULT_NODE_BUDGET;
use gridlabel::verifier::{DEFAULT_ENUMERATION_BUDGET, DEFAULT_MAX_VIOLATIONS};

pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "gridlabel",
    version,
    about = "Build, verify and audit L(k, k-1, ..., 1) labelings of the square grid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render the labels of a window of the grid.
    Label(LabelArgs),
    /// Check the distance constraint for the scheme of a given k.
    Verify(VerifyArgs),
    /// Tabulate lower bound, upper bound and their ratio.
    Bounds(BoundsArgs),
    /// Check that every label in [0, c) is used.
    Nohole(NoholeArgs),
    /// Exact minimum label count on a small patch.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Ascii,
    Csv,
    Json,
    /// Plain P2 grayscale; grid rendering only.
    Pgm,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OutputFormat::Ascii => "ascii",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Pgm => "pgm",
        };
        f.write_str(name)
    }
}

/// `x0,y0,width,height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    pub x0: i64,
    pub y0: i64,
    pub width: usize,
    pub height: usize,
}

impl WindowSpec {
    pub fn cells(&self) -> u64 {
        self.width as u64 * self.height as u64
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x0, self.y0, self.width, self.height)
    }
}

impl FromStr for WindowSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [x0, y0, w, h] = parts.as_slice() else {
            return Err(format!("expected x0,y0,width,height, got {s:?}"));
        };
        let int = |v: &str| v.parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
        let dim = |v: &str| match v.parse::<usize>() {
            Ok(0) => Err("width and height must be positive".to_string()),
            Ok(n) => Ok(n),
            Err(e) => Err(format!("{v:?}: {e}")),
        };
        Ok(WindowSpec {
            x0: int(x0)?,
            y0: int(y0)?,
            width: dim(w)?,
            height: dim(h)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Diamond,
    Window,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoholeModeArg {
    Gcd,
    Enumerate,
    Both,
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value = "0,0,8,8", allow_hyphen_values = true)]
    pub window: WindowSpec,
    #[arg(long, value_enum, default_value_t = OutputFormat::Ascii)]
    pub format: OutputFormat,
    /// Maximum number of cells rendered.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub cell_budget: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = VerifyMode::Diamond)]
    pub mode: VerifyMode,
    /// Window for the pairwise check.
    #[arg(long, default_value = "0,0,100,100", allow_hyphen_values = true)]
    pub window: WindowSpec,
    #[arg(long, value_enum, default_value_t = OutputFormat::Ascii)]
    pub format: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_MAX_VIOLATIONS)]
    pub max_violations: usize,
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub cell_budget: u64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub k_min: u32,
    #[arg(long)]
    pub k_max: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Ascii)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct NoholeArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = NoholeModeArg::Both)]
    pub mode: NoholeModeArg,
    /// Maximum label evaluations for enumerate mode.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Ascii)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub rows: usize,
    #[arg(long)]
    pub cols: usize,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Ascii)]
    pub format: OutputFormat,
}
