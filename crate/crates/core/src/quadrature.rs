//! Adaptive Gauss–Kronrod quadrature on (-1, 1) with endpoint grading.
//!
//! Every integral is split at an interior point `c`, and each half again at
//! its midpoint, giving four segments with local coordinates that vanish at
//! the segment's hard end. Near `+-1` we substitute `1 -+ x = dist s^m`, the
//! integer `m` matched to the endpoint exponent so that `(1-x)^a dx` becomes
//! a smooth (or at least `C^1`) function of `s`. For `a = -1/2` this is the
//! `x = cos(theta)` trick in disguise (`m = 2`). Near `c` the coordinate is
//! `|x - c|` itself, so offsets far below the spacing of doubles near `c`
//! stay resolvable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{FhtError, Result};
use crate::function_rep::Abscissa;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    /// Evaluation points of transforms must stay this far from +-1.
    pub edge_eps: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_panels: 4096,
            edge_eps: 1e-6,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(FhtError::InvalidParameter(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_panels < 4 {
            return Err(FhtError::InvalidParameter(
                "max_panels must be at least 4".into(),
            ));
        }
        if !(self.edge_eps >= 0.0 && self.edge_eps < 1.0) {
            return Err(FhtError::InvalidParameter(
                "edge_eps must lie in [0, 1)".into(),
            ));
        }
        Ok(())
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self.rel_tol = tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub panels: usize,
}

// Gauss–Kronrod 7/15 abscissae and weights, digits as tabulated.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_3,
    0.949_107_912_342_758_524_526_189_684_047_9,
    0.864_864_423_359_769_072_789_712_788_640_9,
    0.741_531_185_599_394_439_863_864_773_280_8,
    0.586_087_235_467_691_130_294_144_845_693_0,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_2,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_5,
    0.140_653_259_715_525_918_745_189_590_510_2,
    0.169_004_726_639_267_902_826_583_426_598_6,
    0.190_350_578_064_785_409_913_256_402_421_0,
    0.204_432_940_075_298_892_414_161_999_234_6,
    0.209_482_141_084_727_828_012_999_174_891_7,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_1,
    0.279_705_391_489_276_667_901_467_771_423_8,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_3,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    seg: usize,
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seg.cmp(&self.seg))
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn gk15<F>(f: &F, seg: usize, lo: f64, hi: f64) -> Result<Panel>
where
    F: Fn(usize, f64) -> Complex64,
{
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let eval = |x: f64| -> Result<Complex64> {
        let v = f(seg, x);
        if finite(v) {
            Ok(v)
        } else {
            Err(FhtError::NonFiniteIntegrand { x })
        }
    };
    let fc = eval(c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = eval(c - dx)? + eval(c + dx)?;
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    Ok(Panel {
        seg,
        lo,
        hi,
        value: kron * h,
        error: ((kron - gauss) * h).norm(),
    })
}

/// Single-segment form: one initial panel per break interval.
#[cfg(test)]
fn adaptive<F>(f: &F, breaks: &[f64], cfg: &QuadratureConfig) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    let initial: Vec<(usize, f64, f64)> = breaks.windows(2).map(|w| (0, w[0], w[1])).collect();
    adaptive_segments(&|_, x| f(x), &initial, cfg)
}

/// Globally adaptive GK15 over initial panels `(segment, lo, hi)`, where
/// each segment has its own coordinate. The panel budget counts
/// bisections. Panels are summed in `(segment, lo)` order.
fn adaptive_segments<F>(
    f: &F,
    initial: &[(usize, f64, f64)],
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    F: Fn(usize, f64) -> Complex64,
{
    let mut heap = BinaryHeap::new();
    for &(seg, lo, hi) in initial {
        if hi > lo {
            heap.push(gk15(f, seg, lo, hi)?);
        }
    }
    let mut frozen: Vec<Panel> = Vec::new();
    let mut splits = 0usize;
    loop {
        let (value, error) = heap
            .iter()
            .chain(frozen.iter())
            .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
                (v + p.value, e + p.error)
            });
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        if error <= tol {
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => {
                return Err(FhtError::NoConvergence {
                    error,
                    panels: frozen.len(),
                })
            }
        };
        if splits >= cfg.max_panels {
            heap.push(worst);
            return Err(FhtError::NoConvergence {
                error,
                panels: heap.len() + frozen.len(),
            });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            frozen.push(worst);
            continue;
        }
        heap.push(gk15(f, worst.seg, worst.lo, mid)?);
        heap.push(gk15(f, worst.seg, mid, worst.hi)?);
        splits += 1;
    }
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|a, b| a.seg.cmp(&b.seg).then(a.lo.total_cmp(&b.lo)));
    let value = panels.iter().map(|p| p.value).sum();
    let error = panels.iter().map(|p| p.error).sum();
    Ok(Estimate {
        value,
        error,
        panels: panels.len(),
    })
}

/// Grading power for an endpoint behaving like `(1-x)^a`.
///
/// Real exponents that become an integer power of `s` for some `m <= 4`
/// use that `m` (so `a = -1/2` and `a = 1/2` give `m = 2`). Otherwise the
/// smallest `m` with `m (Re a + 1) - 1 >= 1` is used.
pub(crate) fn grading_power(a: Complex64) -> u32 {
    let r = a.re + 1.0;
    if a.im == 0.0 {
        for m in 1..=4u32 {
            let beta = m as f64 * r - 1.0;
            if beta >= -1e-12 && (beta - beta.round()).abs() < 1e-12 {
                return m;
            }
        }
    }
    ((2.0 / r).ceil() as u32).clamp(1, 64)
}

/// `1 - s^m` without cancellation for `s` close to 1.
fn one_minus_pow(s: f64, m: u32) -> f64 {
    let mut geo = 0.0;
    let mut sk = 1.0;
    for _ in 0..m {
        geo += sk;
        sk *= s;
    }
    (1.0 - s) * geo
}

/// Integrates `g(x, x - c)` over (-1, 1), split at `c`, with endpoint
/// grading from `exponents = (a at +1, b at -1)`.
///
/// Segments, in order: `1 + x = e s^m` and `c - x = u` on the left half,
/// `x - c = v` and `1 - x = d s^m` on the right half, with `e`, `d` the
/// distances from `c` to -1 and +1. All four share one error budget.
pub(crate) fn integrate_split<G>(
    g: G,
    c: Abscissa,
    exponents: (Complex64, Complex64),
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    G: Fn(Abscissa, f64) -> Complex64,
{
    let m_right = grading_power(exponents.0);
    let m_left = grading_power(exponents.1);
    let e = c.to_left;
    let d = c.to_right;
    // graded segments cover half of each side
    let s_left = 0.5f64.powf(1.0 / m_left as f64);
    let s_right = 0.5f64.powf(1.0 / m_right as f64);
    let u_max = e * one_minus_pow(s_left, m_left);
    let v_max = d * one_minus_pow(s_right, m_right);
    let zero = Complex64::new(0.0, 0.0);

    let integrand = |seg: usize, y: f64| -> Complex64 {
        match seg {
            0 => {
                let dist = e * y.powi(m_left as i32);
                let gap = e * one_minus_pow(y, m_left);
                let jac = e * m_left as f64 * y.powi(m_left as i32 - 1);
                if jac == 0.0 {
                    return zero;
                }
                g(Abscissa::from_distances(-1.0 + dist, d + gap, dist), -gap) * jac
            }
            1 => g(Abscissa::from_distances(c.x - y, d + y, e - y), -y),
            2 => g(Abscissa::from_distances(c.x + y, d - y, e + y), y),
            _ => {
                let dist = d * y.powi(m_right as i32);
                let gap = d * one_minus_pow(y, m_right);
                let jac = d * m_right as f64 * y.powi(m_right as i32 - 1);
                if jac == 0.0 {
                    return zero;
                }
                g(Abscissa::from_distances(1.0 - dist, dist, e + gap), gap) * jac
            }
        }
    };

    let mut cuts: [Vec<f64>; 4] = [
        vec![0.0, s_left],
        vec![0.0, u_max],
        vec![0.0, v_max],
        vec![0.0, s_right],
    ];
    for &xb in breakpoints {
        if xb > -1.0 && xb < c.x {
            let dist = 1.0 + xb;
            if dist < e * 0.5 {
                cuts[0].push((dist / e).powf(1.0 / m_left as f64));
            } else {
                cuts[1].push(c.x - xb);
            }
        } else if xb > c.x && xb < 1.0 {
            let dist = 1.0 - xb;
            if dist < d * 0.5 {
                cuts[3].push((dist / d).powf(1.0 / m_right as f64));
            } else {
                cuts[2].push(xb - c.x);
            }
        }
    }
    let mut initial = Vec::new();
    for (seg, cs) in cuts.iter_mut().enumerate() {
        let hi = cs[1];
        cs.retain(|y| (0.0..=hi).contains(y));
        cs.sort_by(|a, b| a.total_cmp(b));
        cs.dedup();
        initial.extend(cs.windows(2).map(|w| (seg, w[0], w[1])));
    }
    adaptive_segments(&integrand, &initial, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c0() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    #[test]
    fn polynomial_exact() {
        let cfg = QuadratureConfig::default();
        let est = adaptive(&|x: f64| Complex64::new(x.powi(6), 0.0), &[-1.0, 1.0], &cfg).unwrap();
        assert!((est.value.re - 2.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn grading_powers() {
        let r = |a: f64| grading_power(Complex64::new(a, 0.0));
        assert_eq!(r(-0.5), 2);
        assert_eq!(r(0.5), 2);
        assert_eq!(r(0.0), 1);
        assert_eq!(r(-0.75), 4);
        assert_eq!(r(-0.4), 4);
        assert_eq!(grading_power(Complex64::new(-0.5, 0.3)), 4);
    }

    #[test]
    fn inverse_weight_integrates_to_pi() {
        let cfg = QuadratureConfig::default();
        let half = Complex64::new(-0.5, 0.0);
        let est = integrate_split(
            |p: Abscissa, _| Complex64::new(1.0 / p.w(), 0.0),
            Abscissa::new(0.0),
            (half, half),
            &[],
            &cfg,
        )
        .unwrap();
        assert!((est.value.re - std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn strong_singularity_with_grading() {
        // int (1-x)^{-0.9} dx over (-1, 1) = 2^{0.1} / 0.1
        let cfg = QuadratureConfig::default();
        let a = Complex64::new(-0.9, 0.0);
        let est = integrate_split(
            |p: Abscissa, _| Complex64::new(p.to_right.powf(-0.9), 0.0),
            Abscissa::new(0.3),
            (a, c0()),
            &[],
            &cfg,
        )
        .unwrap();
        let exact = 2f64.powf(0.1) / 0.1;
        assert!(
            (est.value.re - exact).abs() < 1e-9 * exact,
            "{}",
            est.value.re
        );
    }

    #[test]
    fn budget_exhaustion_reports_no_convergence() {
        let cfg = QuadratureConfig {
            max_panels: 4,
            ..QuadratureConfig::default()
        };
        let err = adaptive(
            &|x: f64| Complex64::new((1.0 / (x + 1e-3)).sin(), 0.0),
            &[-1.0, 1.0],
            &cfg,
        )
        .unwrap_err();
        assert!(matches!(err, FhtError::NoConvergence { .. }));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let bad = QuadratureConfig {
            abs_tol: 0.0,
            ..QuadratureConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureConfig {
            max_panels: 3,
            ..QuadratureConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
