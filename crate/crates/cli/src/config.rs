//! Run configuration: defaults, then a `key = value` file, then flags.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use fht_core::fht_engine::Convention;
use fht_core::QuadratureConfig;
use serde::Serialize;

use crate::error::{CliError, CliResult, EXIT_INPUT};

pub const CONFIG_ENV: &str = "FHT_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConventionArg {
    Tricomi,
    Widom,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Tricomi => Convention::Tricomi,
            ConventionArg::Widom => Convention::Widom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    pub edge_eps: f64,
    /// Default number of Chebyshev evaluation points.
    pub grid: usize,
    pub seed: u64,
    pub convention: ConventionArg,
    pub format: Format,
    pub interpolation_degree: usize,
    pub eigen_tol: f64,
    pub norm_cells: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let q = QuadratureConfig::default();
        RunConfig {
            abs_tol: q.abs_tol,
            rel_tol: q.rel_tol,
            max_panels: q.max_panels,
            edge_eps: q.edge_eps,
            grid: 20,
            seed: 42,
            convention: ConventionArg::Tricomi,
            format: Format::Json,
            interpolation_degree: fht_core::fht_engine::DEFAULT_INTERPOLATION_DEGREE,
            eigen_tol: 1e-5,
            norm_cells: 1024,
        }
    }
}

/// Values given on the command line; `None` leaves the file or default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub max_panels: Option<usize>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
    pub convention: Option<ConventionArg>,
    pub format: Option<Format>,
}

fn bad(msg: String) -> CliError {
    CliError::new("config", EXIT_INPUT, msg)
}

fn value<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse()
        .map_err(|_| bad(format!("invalid value {v:?} for {key}")))
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> CliResult<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "tol" => {
                    self.abs_tol = value(k, v)?;
                    self.rel_tol = self.abs_tol;
                }
                "abs_tol" => self.abs_tol = value(k, v)?,
                "rel_tol" => self.rel_tol = value(k, v)?,
                "max_panels" => self.max_panels = value(k, v)?,
                "edge_eps" => self.edge_eps = value(k, v)?,
                "grid" => self.grid = value(k, v)?,
                "seed" => self.seed = value(k, v)?,
                "interpolation_degree" => self.interpolation_degree = value(k, v)?,
                "eigen_tol" => self.eigen_tol = value(k, v)?,
                "norm_cells" => self.norm_cells = value(k, v)?,
                "convention" => {
                    self.convention = ConventionArg::from_str(v, true)
                        .map_err(|_| bad(format!("invalid convention {v:?}")))?
                }
                "format" => {
                    self.format = Format::from_str(v, true)
                        .map_err(|_| bad(format!("invalid format {v:?}")))?
                }
                other => return Err(bad(format!("line {}: unknown key {other:?}", n + 1))),
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(t) = o.tol {
            self.abs_tol = t;
            self.rel_tol = t;
        }
        if let Some(v) = o.max_panels {
            self.max_panels = v;
        }
        if let Some(v) = o.grid {
            self.grid = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.convention {
            self.convention = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
    }

    /// Defaults, then the file named by `path` or by `FHT_CONFIG`, then
    /// `overrides`.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> CliResult<RunConfig> {
        let mut cfg = RunConfig::default();
        let file: Option<PathBuf> = path
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        if let Some(f) = file {
            let text = std::fs::read_to_string(&f)
                .map_err(|e| bad(format!("cannot read {}: {e}", f.display())))?;
            cfg.apply_text(&text)?;
        }
        cfg.apply(overrides);
        cfg.quadrature()
            .validate()
            .map_err(|e| bad(e.to_string()))?;
        if cfg.grid == 0 {
            return Err(bad("grid must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_panels: self.max_panels,
            edge_eps: self.edge_eps,
        }
    }
}
