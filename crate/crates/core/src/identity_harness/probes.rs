use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::NormGrid;
use super::{IdentityReport, TOLERANCES};
use crate::error::{FhtError, Result};
use crate::fht_engine::{check_weight_window, pv_at};
use crate::function_rep::{
    endpoint_weight, lp_norm, zygmund_norm, Abscissa, Basis, ChebyshevSeries, Evaluable,
    Reweighted, SampledFunction,
};
use crate::quadrature::QuadratureConfig;

/// Nodes per panel of the coarse norm grid; the refined grid doubles it.
pub const COARSE_NODES: usize = 8;

/// `sum a_k cos(k theta) + sum b_k sin(k theta)` at `x = cos theta`, i.e.
/// `sum a_k T_k(x) + w(x) sum b_k U_{k-1}(x)`.
#[derive(Debug, Clone)]
pub struct TrigPolynomial {
    even: ChebyshevSeries,
    odd: ChebyshevSeries,
}

impl TrigPolynomial {
    /// `cosines[k]` multiplies `cos(k theta)`, `sines[k]` multiplies `sin((k+1) theta)`.
    pub fn new(cosines: &[f64], sines: &[f64]) -> Self {
        TrigPolynomial {
            even: ChebyshevSeries::from_real(cosines, Basis::FirstKind),
            odd: ChebyshevSeries::from_real(sines, Basis::SecondKind),
        }
    }

    pub fn random<R: Rng>(rng: &mut R, degree: usize) -> Self {
        let cosines: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sines: Vec<f64> = (0..degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Self::new(&cosines, &sines)
    }
}

impl Evaluable for TrigPolynomial {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        self.even.eval_real(p.x) + self.odd.eval_real(p.x) * p.w()
    }
}

/// `min(|x - x0|^{-beta}, cap)`.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedSpike {
    pub x0: f64,
    pub beta: f64,
    pub cap: f64,
}

impl TruncatedSpike {
    pub fn new(x0: f64, beta: f64, cap: f64) -> Result<Self> {
        if !(x0 > -1.0 && x0 < 1.0 && beta > 0.0 && beta < 1.0 && cap > 1.0 && cap.is_finite()) {
            return Err(FhtError::InvalidParameter(format!(
                "spike needs x0 in (-1, 1), beta in (0, 1), cap > 1; got ({x0}, {beta}, {cap})"
            )));
        }
        Ok(TruncatedSpike { x0, beta, cap })
    }

    /// The spike truncated where it reaches `|x - x0| = plateau`.
    pub fn with_plateau(x0: f64, beta: f64, plateau: f64) -> Result<Self> {
        Self::new(x0, beta, plateau.powf(-beta))
    }

    fn plateau(&self) -> f64 {
        self.cap.powf(-1.0 / self.beta)
    }
}

impl Evaluable for TruncatedSpike {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        let d = (p.x - self.x0).abs();
        let v = if d <= self.plateau() {
            self.cap
        } else {
            d.powf(-self.beta)
        };
        Complex64::new(v, 0.0)
    }

    fn breakpoints(&self) -> Vec<f64> {
        let h = self.plateau();
        [self.x0 - h, self.x0, self.x0 + h]
            .into_iter()
            .filter(|x| *x > -1.0 && *x < 1.0)
            .collect()
    }
}

/// Values of `f` and of `rho T(f / rho)` on a graded grid, packed as
/// samples carrying the grid's quadrature weights.
fn sampled_pair(
    f: &dyn Evaluable,
    gamma: f64,
    delta: f64,
    nodes_per_panel: usize,
    cfg: &QuadratureConfig,
) -> Result<(SampledFunction, SampledFunction)> {
    let grid = NormGrid::graded(&f.breakpoints(), nodes_per_panel);
    let inner = Reweighted::new(f, -gamma, -delta);
    let transformed: Vec<Complex64> = grid
        .nodes()
        .par_iter()
        .map(|&p| Ok(pv_at(&inner, p, cfg)? * endpoint_weight(p, gamma, delta)))
        .collect::<Result<_>>()?;
    let values: Vec<Complex64> = grid.nodes().iter().map(|&p| f.eval_at(p)).collect();
    let xs: Vec<f64> = grid.nodes().iter().map(|p| p.x).collect();
    let w = grid.weights().to_vec();
    Ok((
        SampledFunction::with_measures(xs.clone(), values, w.clone())?,
        SampledFunction::with_measures(xs, transformed, w)?,
    ))
}

/// `||rho T(f/rho)||_p / ||f||_p` on the coarse and the refined grid.
pub fn lp_ratio(
    f: &dyn Evaluable,
    p: f64,
    gamma: f64,
    delta: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    Ok(lp_ratios(f, &[p], gamma, delta, cfg)?[0])
}

/// [`lp_ratio`] for several exponents from one set of samples.
pub fn lp_ratios(
    f: &dyn Evaluable,
    ps: &[f64],
    gamma: f64,
    delta: f64,
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    let one = |n| -> Result<Vec<f64>> {
        let (fs, ts) = sampled_pair(f, gamma, delta, n, cfg)?;
        ps.iter()
            .map(|&p| Ok(lp_norm(p, &ts)? / lp_norm(p, &fs)?))
            .collect()
    };
    let coarse = one(COARSE_NODES)?;
    let refined = one(2 * COARSE_NODES)?;
    Ok(coarse.into_iter().zip(refined).collect())
}

/// `||T f||_1 / ||f||_{L log L}` on the coarse and the refined grid.
pub fn loglog_ratio(f: &dyn Evaluable, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let one = |n| -> Result<f64> {
        let (fs, ts) = sampled_pair(f, 0.0, 0.0, n, cfg)?;
        Ok(lp_norm(1.0, &ts)? / zygmund_norm(1.0, &fs)?)
    };
    Ok((one(COARSE_NODES)?, one(2 * COARSE_NODES)?))
}

/// `tan(pi / (2p))`, the norm of the transform on `L^p` for `1 < p <= 2`.
pub fn lp_operator_norm(p: f64) -> f64 {
    (PI / (2.0 * p)).tan()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub family_size: usize,
    pub seed: u64,
    pub sup_ratio: f64,
    pub refined_sup_ratio: f64,
    pub analytic_bound: Option<f64>,
    /// `analytic_bound - refined_sup_ratio`; reported only.
    pub gap: Option<f64>,
    pub pass: bool,
}

impl ProbeReport {
    fn new(
        name: String,
        parameters: BTreeMap<String, f64>,
        family_size: usize,
        seed: u64,
        (sup_ratio, refined_sup_ratio): (f64, f64),
        analytic_bound: Option<f64>,
    ) -> Self {
        let finite = sup_ratio.is_finite() && refined_sup_ratio.is_finite();
        let pass = finite
            && match analytic_bound {
                Some(b) => {
                    let limit = b * (1.0 + TOLERANCES.norm_slack);
                    sup_ratio <= limit && refined_sup_ratio <= limit
                }
                None => {
                    refinement_change(sup_ratio, refined_sup_ratio) < TOLERANCES.probe_stability
                }
            };
        ProbeReport {
            name,
            parameters,
            family_size,
            seed,
            sup_ratio,
            refined_sup_ratio,
            analytic_bound,
            gap: analytic_bound.map(|b| b - refined_sup_ratio),
            pass,
        }
    }

    pub fn refinement_change(&self) -> f64 {
        refinement_change(self.sup_ratio, self.refined_sup_ratio)
    }

    /// Bounded probes are checked on the ratio against `bound * (1 + slack)`;
    /// the others on the relative change under grid refinement.
    pub fn to_identity_report(&self) -> IdentityReport {
        let mut details = self.parameters.clone();
        details.insert("family_size".into(), self.family_size as f64);
        details.insert("sup_ratio".into(), self.sup_ratio);
        details.insert("refined_sup_ratio".into(), self.refined_sup_ratio);
        if let (Some(b), Some(g)) = (self.analytic_bound, self.gap) {
            details.insert("analytic_bound".into(), b);
            details.insert("gap".into(), g);
        }
        let abs = self.sup_ratio.max(self.refined_sup_ratio);
        let rel = self.refinement_change();
        let (tolerance, relative) = match self.analytic_bound {
            Some(b) => (b * (1.0 + TOLERANCES.norm_slack), false),
            None => (TOLERANCES.probe_stability, true),
        };
        let mut r = IdentityReport::new(&self.name, abs, rel, 0, tolerance, relative, details);
        r.grid_size = self.family_size;
        r
    }
}

fn refinement_change(coarse: f64, refined: f64) -> f64 {
    (refined - coarse).abs() / refined.abs().max(f64::MIN_POSITIVE)
}

pub const TRIG_DEGREE: usize = 6;

/// Half-width of the flat top of the random spikes.
pub const SPIKE_PLATEAU: f64 = 1e-3;

pub fn trig_family(size: usize, seed: u64) -> Vec<TrigPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| TrigPolynomial::random(&mut rng, TRIG_DEGREE))
        .collect()
}

/// The constant 1 first, then alternating truncated spikes and random trig
/// polynomials.
pub fn spike_family(size: usize, seed: u64) -> Vec<Box<dyn Evaluable>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Box<dyn Evaluable>> = Vec::with_capacity(size);
    for k in 0..size {
        if k == 0 {
            out.push(Box::new(TrigPolynomial::new(&[1.0], &[])));
        } else if k % 2 == 1 {
            let x0 = rng.gen_range(-0.9..0.9);
            let beta = rng.gen_range(0.2..0.9);
            out.push(Box::new(
                TruncatedSpike::with_plateau(x0, beta, SPIKE_PLATEAU).expect("valid spike"),
            ));
        } else {
            out.push(Box::new(TrigPolynomial::random(&mut rng, TRIG_DEGREE)));
        }
    }
    out
}

fn sup_pairs(ratios: impl IntoIterator<Item = Result<(f64, f64)>>) -> Result<(f64, f64)> {
    let mut sup = (0.0f64, 0.0f64);
    for r in ratios {
        let (a, b) = r?;
        // NaN must survive the max
        sup.0 = if a.is_nan() { a } else { sup.0.max(a) };
        sup.1 = if b.is_nan() { b } else { sup.1.max(b) };
    }
    Ok(sup)
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Empirical `sup ||T f||_p / ||f||_p` over a random trig family, checked
/// one-sidedly against `tan(pi / (2p))`.
pub fn norm_probe(
    p: f64,
    family_size: usize,
    seed: u64,
    cfg: &QuadratureConfig,
) -> Result<ProbeReport> {
    Ok(norm_probes(&[p], family_size, seed, cfg)?.remove(0))
}

/// [`norm_probe`] for several exponents over the same family.
pub fn norm_probes(
    ps: &[f64],
    family_size: usize,
    seed: u64,
    cfg: &QuadratureConfig,
) -> Result<Vec<ProbeReport>> {
    if let Some(p) = ps.iter().find(|p| !(**p > 1.0 && **p < 2.0)) {
        return Err(FhtError::InvalidParameter(format!(
            "p = {p} must lie in (1, 2)"
        )));
    }
    let fam = trig_family(family_size, seed);
    let ratios: Vec<Vec<(f64, f64)>> = fam
        .iter()
        .map(|f| lp_ratios(f, ps, 0.0, 0.0, cfg))
        .collect::<Result<_>>()?;
    ps.iter()
        .enumerate()
        .map(|(k, &p)| {
            let sup = sup_pairs(ratios.iter().map(|r| Ok(r[k])))?;
            Ok(ProbeReport::new(
                format!("norm_probe_p{p}"),
                params(&[("p", p)]),
                family_size,
                seed,
                sup,
                Some(lp_operator_norm(p)),
            ))
        })
        .collect()
}

pub fn loglog_probe(family_size: usize, seed: u64, cfg: &QuadratureConfig) -> Result<ProbeReport> {
    let fam = spike_family(family_size, seed);
    let sup = sup_pairs(fam.iter().map(|f| loglog_ratio(f.as_ref(), cfg)))?;
    Ok(ProbeReport::new(
        "loglog_probe".into(),
        BTreeMap::new(),
        family_size,
        seed,
        sup,
        None,
    ))
}

pub fn khvedelidze_probe(
    gamma: f64,
    delta: f64,
    p: f64,
    family_size: usize,
    seed: u64,
    cfg: &QuadratureConfig,
) -> Result<ProbeReport> {
    check_weight_window(gamma, delta, p)?;
    let fam = trig_family(family_size, seed);
    let sup = sup_pairs(fam.iter().map(|f| lp_ratio(f, p, gamma, delta, cfg)))?;
    Ok(ProbeReport::new(
        format!("khvedelidze_probe_g{gamma}_d{delta}_p{p}"),
        params(&[("gamma", gamma), ("delta", delta), ("p", p)]),
        family_size,
        seed,
        sup,
        None,
    ))
}
