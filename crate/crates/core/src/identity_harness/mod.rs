//! Numerical checks of the integral identities and empirical norm probes.
//!
//! Every check returns an [`IdentityReport`]; tolerances live in
//! [`TOLERANCES`]. Random inputs come from `ChaCha8Rng` seeded per suite, so
//! reports are reproducible byte for byte.

mod checks;
mod grid;
mod probes;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use checks::{
    check_kernel, check_laeng, check_parseval, check_poincare_bertrand, laeng_law,
    level_set_measure, KERNEL_POINTS,
};
pub use grid::{gauss_legendre, NormGrid};
pub use probes::{
    khvedelidze_probe, loglog_probe, loglog_ratio, lp_operator_norm, lp_ratio, lp_ratios,
    norm_probe, norm_probes, spike_family, trig_family, ProbeReport, TrigPolynomial,
    TruncatedSpike, COARSE_NODES, SPIKE_PLATEAU, TRIG_DEGREE,
};

use crate::error::{FhtError, Result};
use crate::fht_engine::chebyshev_points;
use crate::function_rep::{Basis, ChebyshevSeries, EndpointWeightedFunction, IndicatorUnion};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub parseval: f64,
    /// Nested quadrature compounds the inner error.
    pub poincare_bertrand: f64,
    /// Relative, per lambda.
    pub laeng: f64,
    pub kernel: f64,
    /// Relative slack on analytic operator-norm bounds.
    pub norm_slack: f64,
    /// Largest relative change of a probe ratio when the grid is refined.
    pub probe_stability: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    parseval: 1e-6,
    poincare_bertrand: 1e-4,
    laeng: 1e-3,
    kernel: 1e-8,
    norm_slack: 1e-3,
    probe_stability: 0.10,
};

/// Quadrature settings: `outer` for single integrals and transforms,
/// `inner` for transforms nested inside another integral, `nested` for the
/// outer transform of a nested one.
#[derive(Debug, Clone, PartialEq)]
pub struct HarnessConfig {
    pub outer: QuadratureConfig,
    pub inner: QuadratureConfig,
    pub nested: QuadratureConfig,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            outer: QuadratureConfig::default().with_tolerance(1e-10),
            inner: QuadratureConfig::default().with_tolerance(1e-12),
            nested: QuadratureConfig::default().with_tolerance(1e-9),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub grid_size: usize,
    pub tolerance: f64,
    /// `"abs"` or `"rel"`: which residual is compared with `tolerance`.
    pub criterion: String,
    pub pass: bool,
    pub details: BTreeMap<String, f64>,
}

impl IdentityReport {
    pub fn new(
        name: &str,
        max_abs_residual: f64,
        max_rel_residual: f64,
        grid_size: usize,
        tolerance: f64,
        relative: bool,
        details: BTreeMap<String, f64>,
    ) -> Self {
        let r = if relative {
            max_rel_residual
        } else {
            max_abs_residual
        };
        IdentityReport {
            name: name.to_string(),
            max_abs_residual,
            max_rel_residual,
            grid_size,
            tolerance,
            criterion: if relative { "rel" } else { "abs" }.to_string(),
            pass: r <= tolerance,
            details,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Parseval,
    PoincareBertrand,
    Laeng,
    Kernel,
    Norms,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Parseval,
        Suite::PoincareBertrand,
        Suite::Laeng,
        Suite::Kernel,
        Suite::Norms,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Parseval => "parseval",
            Suite::PoincareBertrand => "pb",
            Suite::Laeng => "laeng",
            Suite::Kernel => "kernel",
            Suite::Norms => "norms",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = FhtError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parseval" => Ok(Suite::Parseval),
            "pb" | "poincare-bertrand" => Ok(Suite::PoincareBertrand),
            "laeng" => Ok(Suite::Laeng),
            "kernel" => Ok(Suite::Kernel),
            "norms" => Ok(Suite::Norms),
            "all" => Ok(Suite::All),
            _ => Err(FhtError::Parse(format!("unknown suite `{s}`"))),
        }
    }
}

pub const RANDOM_PARSEVAL_PAIRS: usize = 20;
pub const PB_GRID_POINTS: usize = 10;
pub const RANDOM_UNIONS: usize = 5;
pub const NORM_FAMILY: usize = 50;
pub const LOGLOG_FAMILY: usize = 30;
pub const KHVEDELIDZE_FAMILY: usize = 20;
pub const NORM_EXPONENTS: [f64; 3] = [1.2, 1.5, 1.8];
pub const KHVEDELIDZE_CASES: [(f64, f64, f64); 3] =
    [(0.0, 0.0, 1.5), (-0.5, -0.5, 1.5), (0.5, 0.5, 3.0)];
pub const KERNEL_CONSTANTS: [(f64, f64); 5] =
    [(1.0, 0.0), (0.0, 1.0), (-2.5, 0.0), (0.0, 0.0), (2.0, -3.0)];

/// `0.1, 0.2, ..., 2.0`.
pub fn laeng_lambdas() -> Vec<f64> {
    (1..=20).map(|k| k as f64 / 10.0).collect()
}

fn real_series(rng: &mut ChaCha8Rng, degree: usize) -> ChebyshevSeries {
    let c: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
    ChebyshevSeries::from_real(&c, Basis::FirstKind)
}

/// Polynomial `f` of degree <= 5 and `(1-x)^a (1+x)^b q(x)` with
/// `a, b in [-0.4, 0.6]` and `q` of degree <= 4.
pub fn random_parseval_pair(
    rng: &mut ChaCha8Rng,
) -> Result<(EndpointWeightedFunction, EndpointWeightedFunction)> {
    let df = rng.gen_range(0..=5);
    let f = EndpointWeightedFunction::smooth(real_series(rng, df));
    let a = rng.gen_range(-0.4..0.6);
    let b = rng.gen_range(-0.4..0.6);
    let dg = rng.gen_range(0..=4);
    let g = EndpointWeightedFunction::real(a, b, real_series(rng, dg))?;
    Ok((f, g))
}

/// `k` in 1..=3 disjoint intervals with endpoints drawn from [-2, 2].
pub fn random_union(rng: &mut ChaCha8Rng) -> Result<IndicatorUnion> {
    let k = rng.gen_range(1..=3);
    let mut ends: Vec<f64> = (0..2 * k).map(|_| rng.gen_range(-2.0..2.0)).collect();
    ends.sort_by(|a, b| a.total_cmp(b));
    IndicatorUnion::new(ends.chunks(2).map(|c| (c[0], c[1])).collect())
}

fn series(coeffs: &[f64]) -> EndpointWeightedFunction {
    EndpointWeightedFunction::smooth(ChebyshevSeries::from_real(coeffs, Basis::FirstKind))
}

fn parseval_suite(seed: u64, cfg: &HarnessConfig) -> Result<Vec<IdentityReport>> {
    let t1 = series(&[0.0, 1.0]);
    let one = series(&[1.0]);
    let zero = series(&[]);
    let w = EndpointWeightedFunction::weight();
    let mut out = vec![
        check_parseval("parseval_t1_t1", &t1, &t1, cfg)?,
        check_parseval("parseval_one_w", &one, &w, cfg)?,
        check_parseval("parseval_zero_w", &zero, &w, cfg)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..RANDOM_PARSEVAL_PAIRS {
        let (f, g) = random_parseval_pair(&mut rng)?;
        out.push(check_parseval(
            &format!("parseval_random_{k}"),
            &f,
            &g,
            cfg,
        )?);
    }
    Ok(out)
}

fn pb_suite(seed: u64, cfg: &HarnessConfig) -> Result<Vec<IdentityReport>> {
    let grid = chebyshev_points(PB_GRID_POINTS);
    let one = series(&[1.0]);
    let zero = series(&[]);
    let w = EndpointWeightedFunction::weight();
    let mut out = vec![
        check_poincare_bertrand("pb_one_one", &one, &one, &grid, cfg)?,
        check_poincare_bertrand("pb_one_w", &one, &w, &grid, cfg)?,
        check_poincare_bertrand("pb_zero_one", &zero, &one, &grid, cfg)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..3 {
        let df = rng.gen_range(1..=3);
        let f = EndpointWeightedFunction::smooth(real_series(&mut rng, df));
        let dg = rng.gen_range(1..=3);
        let g = EndpointWeightedFunction::smooth(real_series(&mut rng, dg));
        out.push(check_poincare_bertrand(
            &format!("pb_random_{k}"),
            &f,
            &g,
            &grid,
            cfg,
        )?);
    }
    Ok(out)
}

fn laeng_suite(seed: u64) -> Result<Vec<IdentityReport>> {
    let lambdas = laeng_lambdas();
    let mut out = vec![
        check_laeng(
            "laeng_unit",
            &IndicatorUnion::new(vec![(0.0, 1.0)])?,
            &lambdas,
        )?,
        check_laeng(
            "laeng_two_pieces",
            &IndicatorUnion::new(vec![(-1.0, 0.0), (0.2, 0.7)])?,
            &lambdas,
        )?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..RANDOM_UNIONS {
        let a = random_union(&mut rng)?;
        out.push(check_laeng(&format!("laeng_random_{k}"), &a, &lambdas)?);
    }
    Ok(out)
}

fn kernel_suite(cfg: &HarnessConfig) -> Result<Vec<IdentityReport>> {
    KERNEL_CONSTANTS
        .iter()
        .map(|&(re, im)| check_kernel(&format!("kernel_c_{re}_{im}"), Complex64::new(re, im), cfg))
        .collect()
}

fn norms_suite(seed: u64, cfg: &HarnessConfig) -> Result<Vec<IdentityReport>> {
    let mut probes = norm_probes(&NORM_EXPONENTS, NORM_FAMILY, seed, &cfg.outer)?;
    probes.push(loglog_probe(LOGLOG_FAMILY, seed, &cfg.outer)?);
    for (g, d, p) in KHVEDELIDZE_CASES {
        probes.push(khvedelidze_probe(
            g,
            d,
            p,
            KHVEDELIDZE_FAMILY,
            seed,
            &cfg.outer,
        )?);
    }
    Ok(probes.iter().map(ProbeReport::to_identity_report).collect())
}

/// Runs one suite, or every suite in a fixed order for [`Suite::All`].
pub fn run_suite(suite: Suite, seed: u64, cfg: &HarnessConfig) -> Result<Vec<IdentityReport>> {
    match suite {
        Suite::Parseval => parseval_suite(seed, cfg),
        Suite::PoincareBertrand => pb_suite(seed, cfg),
        Suite::Laeng => laeng_suite(seed),
        Suite::Kernel => kernel_suite(cfg),
        Suite::Norms => norms_suite(seed, cfg),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::ALL {
                out.extend(run_suite(s, seed, cfg)?);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_uses_the_named_criterion() {
        let r = IdentityReport::new("x", 1e-3, 1e-9, 1, 1e-6, true, BTreeMap::new());
        assert!(r.pass && r.criterion == "rel");
        let r = IdentityReport::new("x", 1e-3, 1e-9, 1, 1e-6, false, BTreeMap::new());
        assert!(!r.pass && r.criterion == "abs");
        let r = IdentityReport::new("x", f64::NAN, 0.0, 1, 1e-6, false, BTreeMap::new());
        assert!(!r.pass);
    }

    #[test]
    fn tolerance_table() {
        assert_eq!(TOLERANCES.parseval, 1e-6);
        assert_eq!(TOLERANCES.poincare_bertrand, 1e-4);
        assert_eq!(TOLERANCES.laeng, 1e-3);
        assert_eq!(TOLERANCES.kernel, 1e-8);
    }

    #[test]
    fn random_inputs_are_seeded() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_union(&mut rng).unwrap()
        };
        assert_eq!(draw(5), draw(5));
        let u = draw(9);
        assert!(u.intervals().len() <= 3);
        assert!(u.intervals().iter().all(|(a, b)| -2.0 <= *a && *b <= 2.0));
    }
}
