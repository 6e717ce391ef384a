use std::f64::consts::TAU;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pseudonull::diffalg::{Coefficient, Rational};

use crate::verify::Filter;

#[derive(Parser, Debug)]
#[command(name = "pseudonull", version, about = "Symbolic and numerical checks for pseudo-null curve flows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the geometric hierarchy with its torsion and curvature flows
    Hierarchy(HierarchyArgs),
    /// Test whether a candidate is a symmetry of an evolution equation
    Symmetry(SymmetryArgs),
    /// Lie bracket of two evolution fields
    Bracket(BracketArgs),
    /// Variation coefficients and torsion variation of a vector field
    Variation(VariationArgs),
    /// Run a numerical evolution and write CSV/JSON artifacts
    #[command(subcommand)]
    Simulate(Simulation),
    /// Run the verification suite
    Verify(VerifyArgs),
    /// Parse expressions and print their canonical form
    Parse(ParseArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The space-form curvature: kept symbolic (`G`) or fixed to a rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Curvature {
    Symbolic,
    Value(Rational),
}

impl Curvature {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Curvature::Symbolic => None,
            Curvature::Value(r) => Some(Coefficient::from_rational(r.clone()).evaluate(0.0) + 0.0),
        }
    }
}

impl FromStr for Curvature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "G" {
            return Ok(Curvature::Symbolic);
        }
        let bad = || format!("expected `G`, an integer, a fraction or a decimal, got `{s}`");
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits = format!("{int}{frac}");
            let scale = format!("1{}", "0".repeat(frac.len()));
            let r = format!("{digits}/{scale}").parse::<Rational>().map_err(|_| bad())?;
            return Ok(Curvature::Value(r));
        }
        s.parse::<Rational>().map(Curvature::Value).map_err(|_| bad())
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curvature::Symbolic => f.write_str("G"),
            Curvature::Value(r) => write!(f, "{r}"),
        }
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

#[derive(Args, Debug)]
pub struct HierarchyArgs {
    #[arg(long, default_value_t = 5, value_parser = positive_usize)]
    pub levels: usize,
    /// Compare levels 0-4 against the built-in transcription
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value = "G")]
    pub curvature: Curvature,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SymmetryArgs {
    /// Right-hand side f of u_t = f
    #[arg(long, allow_hyphen_values = true)]
    pub flow: String,
    #[arg(long, allow_hyphen_values = true)]
    pub candidate: String,
    #[arg(long, default_value = "G")]
    pub curvature: Curvature,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct BracketArgs {
    /// Evolution field "f;g;h"; give exactly two
    #[arg(long = "field", required = true, allow_hyphen_values = true)]
    pub fields: Vec<String>,
    #[arg(long, default_value = "G")]
    pub curvature: Curvature,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VariationArgs {
    /// Vector field "f;g;h"
    #[arg(long, allow_hyphen_values = true)]
    pub field: String,
    #[arg(long, default_value = "G")]
    pub curvature: Curvature,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `all`, `symbolic`, `numeric` or a substring of check names
    #[arg(long, default_value = "all")]
    pub filter: Filter,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    #[arg(required = true, allow_hyphen_values = true)]
    pub expressions: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Subcommand, Debug)]
pub enum Simulation {
    /// Burgers flow τ_t = τ_ss + 2ττ_s
    Burgers(BurgersArgs),
    /// Heat flow k_t = k_ss + Gk + dk with a Hopf-Cole cross-check
    Heat(HeatArgs),
    /// Filament flow γ_t = N with curve snapshots
    Filament(FilamentArgs),
    /// Viscous Burgers u_t = u_xx + uu_x and the gauged torsion residual
    Gauge(GaugeArgs),
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Number of grid points on the periodic domain (default 256)
    #[arg(long, value_parser = positive_usize, conflicts_with = "ds")]
    pub grid_n: Option<usize>,
    /// Grid spacing; must divide the domain length
    #[arg(long, value_parser = positive_f64)]
    pub ds: Option<f64>,
    #[arg(long, default_value_t = TAU, value_parser = positive_f64)]
    pub length: f64,
    #[arg(long, default_value_t = 1e-4, value_parser = positive_f64)]
    pub dt: f64,
    #[arg(long, default_value_t = 0.5, value_parser = positive_f64)]
    pub t_end: f64,
    /// Equally spaced snapshots after t = 0
    #[arg(long, default_value_t = 5, value_parser = positive_usize)]
    pub snapshots: usize,
    /// Spatial accuracy of the stencils
    #[arg(long, value_parser = positive_usize)]
    pub order: Option<usize>,
    /// Output directory
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BurgersArgs {
    /// Initial torsion: an expression such as `0.5*sin`, or a CSV file with columns s,value
    #[arg(long, default_value = "sin")]
    pub init: String,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args, Debug)]
pub struct HeatArgs {
    /// Initial curvature, positive everywhere
    #[arg(long, default_value = "2+cos")]
    pub init: String,
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    pub curvature: Curvature,
    /// Constant integration term d
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub d: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args, Debug)]
pub struct FilamentArgs {
    #[arg(long, default_value = "0.5*sin")]
    pub init: String,
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    pub curvature: Curvature,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args, Debug)]
pub struct GaugeArgs {
    #[arg(long, default_value = "sin")]
    pub init: String,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 4.0, value_parser = positive_f64)]
    pub b: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}
