use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use harmonium_core::enumerate::DEFAULT_BUDGET;
use harmonium_core::graph::parse_graph;
use harmonium_core::{family, Budget, Family, Graph};

#[derive(Debug, Parser)]
#[command(name = "harmonium", version, about = "Count nowhere-harmonic graph colorings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub run: RunOptions,
}

#[derive(Debug, Args)]
pub struct RunOptions {
    /// Most colorings (or lattice points) a single enumeration may visit
    #[arg(long, global = true, env = "HARMONIUM_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    /// Worker threads (defaults to all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunOptions {
    pub fn budget(&self) -> Budget {
        Budget(self.budget)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print ℏ(m) for each m
    Count {
        #[command(flatten)]
        graph: GraphArgs,
        /// A single m or an inclusive range a..b
        #[arg(long, value_parser = parse_range)]
        m: MRange,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Fit the counting quasipolynomial and emit its generating functions
    Fit {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest multiple of lcm(1..n-1) tried as a period
        #[arg(long)]
        period_cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Compare (-1)^n ℏ(-m) from the fit with the orientation-weighted sum
    Reciprocity {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_parser = parse_range)]
        m: MRange,
        /// Check the chromatic polynomial against acyclic orientations instead
        #[arg(long)]
        stanley: bool,
        #[arg(long)]
        period_cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Region census, star orbit identity and vertex checks
    Regions {
        #[command(flatten)]
        graph: GraphArgs,
        /// Search every region for an interior lattice point
        #[arg(long)]
        count_nonempty: bool,
        /// Largest dilation searched by --count-nonempty (default 4n)
        #[arg(long)]
        max_dilation: Option<u64>,
        /// Compare orbit-weighted region counts with the star count
        #[arg(long)]
        orbit_identity: bool,
        /// Largest dilation for --orbit-identity
        #[arg(long, default_value_t = 8)]
        t_max: u64,
        /// Check the listed rational vertices of the second star region
        #[arg(long)]
        verify_vertices: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Stars use the dynamic program; other graphs are enumerated when
    /// counting and use inclusion–exclusion when fitting
    Auto,
    Brute,
    Exclusion,
    Star,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// One of path, cycle, complete, star
    #[arg(long, value_parser = parse_family, requires = "n", conflicts_with = "file")]
    pub family: Option<Family>,

    /// Number of vertices for --family
    #[arg(long)]
    pub n: Option<usize>,

    /// Edge-list file: the vertex count, then one "i j" pair per line
    #[arg(long)]
    pub file: Option<PathBuf>,
}

pub struct LoadedGraph {
    pub graph: Graph,
    pub family: Option<Family>,
    pub source: String,
    pub warnings: Vec<String>,
}

impl GraphArgs {
    pub fn load(&self) -> anyhow::Result<LoadedGraph> {
        match (&self.family, &self.file) {
            (Some(kind), None) => {
                let n = self.n.context("--family needs --n")?;
                Ok(LoadedGraph {
                    graph: family(*kind, n)?,
                    family: Some(*kind),
                    source: format!("{kind} {n}"),
                    warnings: Vec::new(),
                })
            }
            (None, Some(path)) => {
                if self.n.is_some() {
                    bail!("--n only applies to --family");
                }
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let parsed = parse_graph(&text).with_context(|| path.display().to_string())?;
                Ok(LoadedGraph {
                    graph: parsed.graph,
                    family: None,
                    source: path.display().to_string(),
                    warnings: parsed.warnings,
                })
            }
            _ => bail!("give exactly one graph source: --family with --n, or --file"),
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: harmonium_core::Error| e.to_string())
}

pub type MRange = RangeInclusive<u64>;

/// `"5"` or `"2..5"` (inclusive).
pub fn parse_range(s: &str) -> Result<MRange, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|v| v..=v),
    }
}
