//! Decreasing rearrangement and the rearrangement-invariant functionals
//! built on it (Lebesgue, Lorentz, Zygmund).
//!
//! A sampled function is read as a step function: each sample owns the cell
//! between the neighbouring midpoints. The rearrangement places the sorted
//! magnitudes on consecutive t-intervals of (0, 2) with the same widths, so
//! every functional below is an exact integral of a step function.

use serde::Serialize;
use statrs::function::gamma::{gamma, gamma_ur};

use super::evaluable::{Abscissa, Evaluable};
use super::sampled::SampledFunction;
use crate::error::{FhtError, Result};

/// Non-increasing step function on (0, 2).
#[derive(Debug, Clone, PartialEq)]
pub struct DecreasingRearrangement {
    /// Cell edges `0 = t_0 < t_1 < ... < t_n = 2`.
    edges: Vec<f64>,
    values: Vec<f64>,
}

impl DecreasingRearrangement {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    /// Cell midpoints in t.
    pub fn points(&self) -> Vec<f64> {
        self.edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|e| e[1] - e[0]).collect()
    }

    fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.edges
            .windows(2)
            .zip(&self.values)
            .map(|(e, &v)| (e[0], e[1], v))
    }
}

pub fn decreasing_rearrangement(f: &SampledFunction) -> Result<DecreasingRearrangement> {
    let widths = f.cell_widths();
    let mut cells: Vec<(f64, f64)> = Vec::with_capacity(f.len());
    for (z, w) in f.values().iter().zip(widths) {
        let m = z.norm();
        if !m.is_finite() {
            return Err(FhtError::NonFiniteSample { x: f64::NAN });
        }
        cells.push((m, w));
    }
    // stable sort keeps the result deterministic for ties
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut edges = Vec::with_capacity(cells.len() + 1);
    let mut t = 0.0;
    edges.push(t);
    for &(_, w) in &cells {
        t += w;
        edges.push(t);
    }
    Ok(DecreasingRearrangement {
        edges,
        values: cells.into_iter().map(|(m, _)| m).collect(),
    })
}

fn require_grid(f: &SampledFunction) -> Result<()> {
    if f.len() < 2 {
        Err(FhtError::DegenerateGrid { len: f.len() })
    } else {
        Ok(())
    }
}

/// Second Lorentz exponent, finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LorentzQ {
    Finite(f64),
    Infinite,
}

/// Discrete `L^{p,q}` functional `(int_0^2 (t^{1/p} f*(t))^q dt/t)^{1/q}`,
/// or `sup t^{1/p} f*(t)` for `q = inf`.
///
/// For `q = inf` each cell contributes its value times the left edge to the
/// power `1/p`, which never overshoots the supremum of a decreasing function
/// whose samples sit inside the cells.
pub fn lorentz_norm(p: f64, q: LorentzQ, f: &SampledFunction) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(FhtError::InvalidParameter(format!(
            "Lorentz p = {p} must be > 1"
        )));
    }
    require_grid(f)?;
    let r = decreasing_rearrangement(f)?;
    match q {
        LorentzQ::Infinite => Ok(r
            .cells()
            .map(|(t0, _, v)| t0.powf(1.0 / p) * v)
            .fold(0.0, f64::max)),
        LorentzQ::Finite(q) => {
            if !(q >= 1.0 && q.is_finite()) {
                return Err(FhtError::InvalidParameter(format!(
                    "Lorentz q = {q} must be >= 1"
                )));
            }
            // int_{t0}^{t1} t^{q/p - 1} dt = (t1^{q/p} - t0^{q/p}) p / q
            let s = q / p;
            let total: f64 = r
                .cells()
                .map(|(t0, t1, v)| v.powf(q) * (t1.powf(s) - t0.powf(s)) / s)
                .sum();
            Ok(total.powf(1.0 / q))
        }
    }
}

/// `(int |f|^p)^{1/p}` for the step function defined by the samples.
pub fn lp_norm(p: f64, f: &SampledFunction) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(FhtError::InvalidParameter(format!("p = {p} must be >= 1")));
    }
    require_grid(f)?;
    let s: f64 = f
        .values()
        .iter()
        .zip(f.cell_widths())
        .map(|(z, w)| z.norm().powf(p) * w)
        .sum();
    Ok(s.powf(1.0 / p))
}

/// `int_0^2 f*(t) log^alpha(2e/t) dt`.
///
/// Cell weights use `int_0^t log^alpha(2e/s) ds = 2e * Gamma(alpha+1, log(2e/t))`.
pub fn zygmund_norm(alpha: f64, f: &SampledFunction) -> Result<f64> {
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(FhtError::InvalidParameter(format!(
            "alpha = {alpha} must be >= 1"
        )));
    }
    require_grid(f)?;
    let r = decreasing_rearrangement(f)?;
    let cumulative = |t: f64| -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            let u = (2.0 * std::f64::consts::E / t).ln();
            2.0 * std::f64::consts::E * gamma_ur(alpha + 1.0, u) * gamma(alpha + 1.0)
        }
    };
    Ok(r.cells()
        .map(|(t0, t1, v)| v * (cumulative(t1) - cumulative(t0)))
        .sum())
}

/// A norm estimate together with its refinement verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NormValue {
    Finite { value: f64 },
    Unbounded { last: f64 },
}

impl NormValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            NormValue::Finite { value } => Some(*value),
            NormValue::Unbounded { .. } => None,
        }
    }
}

/// Relative change over one doubling above which a norm counts as divergent.
pub const DIVERGENCE_JUMP: f64 = 0.25;
/// Increment ratio above which successive refinements are judged not to
/// contract. Convergence like `h^s` has ratio `2^-s`; the threshold admits
/// `s` down to about 0.074.
pub const DIVERGENCE_CONTRACTION: f64 = 0.95;

/// Evaluates `functional` on cell-centred samples of `f` at `cells`,
/// `2 cells`, `4 cells`, `8 cells` and decides boundedness.
///
/// A jump above 25% on any doubling flags divergence outright. Slow
/// (logarithmic) divergence never jumps that much, so the increments are
/// also required to contract: two consecutive increment ratios at or above
/// [`DIVERGENCE_CONTRACTION`] flag the value as unbounded. A finite value
/// whose last two increments contract geometrically is extrapolated by
/// summing the remaining tail.
pub fn refined_norm<N>(f: &dyn Evaluable, cells: usize, functional: N) -> Result<NormValue>
where
    N: Fn(&SampledFunction) -> Result<f64>,
{
    let mut vals = Vec::with_capacity(4);
    for level in 0..4 {
        let s = SampledFunction::cell_centred(|p: Abscissa| f.eval_at(p), cells << level)?;
        vals.push(functional(&s)?);
    }
    let last = vals[3];
    if !last.is_finite() {
        return Ok(NormValue::Unbounded { last });
    }
    let jumps = vals
        .windows(2)
        .any(|v| (v[1] - v[0]).abs() > DIVERGENCE_JUMP * v[0].abs().max(f64::MIN_POSITIVE));
    let d: Vec<f64> = vals.windows(2).map(|v| v[1] - v[0]).collect();
    let noise = 1e-9 * last.abs();
    let stalls = d[2].abs() > noise
        && d[1].abs() > noise
        && d[1].abs() >= DIVERGENCE_CONTRACTION * d[0].abs()
        && d[2].abs() >= DIVERGENCE_CONTRACTION * d[1].abs();
    if jumps || stalls {
        return Ok(NormValue::Unbounded { last });
    }
    Ok(NormValue::Finite {
        value: last + geometric_tail(&d, noise),
    })
}

/// `sum_{k>=1} d2 r^k` for the ratio `r = d2 / d1`, when the last three
/// increments share a sign and contract at a consistent rate.
fn geometric_tail(d: &[f64], noise: f64) -> f64 {
    if d.iter().any(|x| x.abs() <= noise) {
        return 0.0;
    }
    let (r0, r1) = (d[1] / d[0], d[2] / d[1]);
    let consistent = r0 > 0.0 && r1 > 0.0 && (r1 - r0).abs() <= 0.1 * r1;
    if !consistent || r1 >= DIVERGENCE_CONTRACTION {
        return 0.0;
    }
    d[2] * r1 / (1.0 - r1)
}
