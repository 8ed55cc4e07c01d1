use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fht_core::airfoil::Regime;
use num_complex::Complex64;

use crate::config::{ConventionArg, Format, Overrides};

#[derive(Debug, Parser)]
#[command(
    name = "fht",
    version,
    about = "Finite Hilbert transform toolkit on (-1, 1)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// `key = value` configuration file; falls back to $FHT_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Absolute and relative quadrature tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_panels: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub convention: Option<ConventionArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate T(f) at points or on a Chebyshev grid.
    Transform(TransformArgs),
    /// Solve the airfoil equation T(f) = g.
    Invert(InvertArgs),
    /// Fine spectrum of T/i on a space, or the class of one lambda.
    #[command(name = "classify-spectrum", alias = "classify")]
    Classify(ClassifyArgs),
    /// Check that xi_lambda is an eigenfunction of T/i.
    Eigencheck(EigencheckArgs),
    /// Run identity suites.
    Identities(IdentitiesArgs),
    /// Rearrangement-invariant norms with a refinement verdict.
    Norms(NormsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quadrature,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Low,
    High,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Low => Regime::Low,
            RegimeArg::High => Regime::High,
        }
    }
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| -> Result<f64, String> {
        let v: f64 = t.parse().map_err(|_| format!("not a number: {t:?}"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite number {t:?}"))
        }
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re or re,im, got {s:?}")),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    Lp(f64),
    Lorentz(f64, Option<f64>),
    Zygmund(f64),
}

fn parse_norm(s: &str) -> Result<NormKind, String> {
    let (kind, params) = s
        .split_once(':')
        .ok_or_else(|| format!("expected kind:params, got {s:?}"))?;
    let nums: Vec<&str> = params.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    match (kind, nums.as_slice()) {
        ("lp", [p]) => Ok(NormKind::Lp(num(p)?)),
        ("zygmund", [a]) => Ok(NormKind::Zygmund(num(a)?)),
        ("lorentz", [p, q]) => {
            let q = if matches!(*q, "inf" | "infinity") {
                None
            } else {
                Some(num(q)?)
            };
            Ok(NormKind::Lorentz(num(p)?, q))
        }
        _ => Err(format!(
            "unknown norm {s:?}; use lp:p, lorentz:p,q or zygmund:alpha"
        )),
    }
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    /// Function descriptor, e.g. `chebT:[1,0,2]`.
    #[arg(long = "f", allow_hyphen_values = true)]
    pub f: String,
    /// Comma-separated evaluation points.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "grid"
    )]
    pub points: Option<Vec<f64>>,
    /// Number of Chebyshev points when --points is absent.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_enum, default_value = "quadrature")]
    pub method: Method,
}

#[derive(Debug, Clone, Args)]
pub struct InvertArgs {
    #[arg(long = "g", allow_hyphen_values = true)]
    pub g: String,
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    /// Kernel coefficient C of C/w (low regime), `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    pub constant: Complex64,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// `lebesgue:p`, `lorentz:p,r`, `indexed:pX,qX,pa,qa` or a catalog name.
    #[arg(long)]
    pub space: String,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Option<Complex64>,
    /// Also write the region boundary polyline as CSV `arc,re,im`.
    #[arg(long)]
    pub boundary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EigencheckArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Complex64,
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Leave the timestamp out so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Args)]
pub struct NormsArgs {
    /// Function descriptor, e.g. `chebT:[1,0,2]`.
    #[arg(long = "f", allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, value_parser = parse_norm)]
    pub norm: NormKind,
    /// Cells at the coarsest of four refinement levels.
    #[arg(long)]
    pub cells: Option<usize>,
}

impl Cli {
    pub fn overrides(&self) -> Overrides {
        let (grid, seed) = match &self.command {
            Command::Transform(a) => (a.grid, None),
            Command::Eigencheck(a) => (a.grid, None),
            Command::Identities(a) => (None, a.seed),
            _ => (None, None),
        };
        Overrides {
            tol: self.global.tol,
            max_panels: self.global.max_panels,
            grid,
            seed,
            convention: self.global.convention,
            format: self.global.format,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_values() {
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(parse_complex("-0.5, 2").unwrap(), Complex64::new(-0.5, 2.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn norm_kinds() {
        assert_eq!(parse_norm("lp:1.5").unwrap(), NormKind::Lp(1.5));
        assert_eq!(
            parse_norm("lorentz:2,inf").unwrap(),
            NormKind::Lorentz(2.0, None)
        );
        assert_eq!(parse_norm("zygmund:1").unwrap(), NormKind::Zygmund(1.0));
        assert!(parse_norm("sobolev:1").is_err());
    }

    #[test]
    fn negative_points_parse() {
        let cli = Cli::try_parse_from([
            "fht",
            "transform",
            "--f",
            "poly:[1]",
            "--points",
            "-0.5,0.25",
        ])
        .unwrap();
        match cli.command {
            Command::Transform(a) => assert_eq!(a.points, Some(vec![-0.5, 0.25])),
            _ => unreachable!(),
        }
    }
}
