//! `T`, its pseudo-inverses `T^` and `Tv`, the projections `P`, `Q` and the
//! weighted transform `rho T(f / rho)`.
//!
//! Two independent routes are provided: principal-value quadrature for any
//! [`Evaluable`], and exact Chebyshev rules for the two weight classes
//! `(1/w) sum a_n T_n` and `w sum b_n U_n`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{FhtError, Result};
use crate::function_rep::{
    interpolate_evaluable, Abscissa, Basis, ChebyshevSeries, EndpointWeightedFunction, Evaluable,
    Reweighted, SampledFunction,
};
use crate::quadrature::{integrate_split, Estimate, QuadratureConfig};

/// Degree used when a sampled right-hand side is turned into a series.
pub const DEFAULT_INTERPOLATION_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(1/pi) p.v. int f(x) / (x - t) dx`
    #[default]
    Tricomi,
    /// The Tricomi value divided by `i`.
    Widom,
}

impl Convention {
    pub fn apply(self, v: Complex64) -> Complex64 {
        match self {
            Convention::Tricomi => v,
            Convention::Widom => Complex64::new(v.im, -v.re),
        }
    }
}

fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_interior(t: Abscissa, cfg: &QuadratureConfig) -> Result<()> {
    let inside = t.to_right > 0.0 && t.to_left > 0.0;
    if !inside || t.to_right < cfg.edge_eps || t.to_left < cfg.edge_eps {
        return Err(FhtError::OutsideInterior {
            t: t.x,
            edge: cfg.edge_eps,
        });
    }
    Ok(())
}

/// `int_{-1}^{1} f(x) dx` with endpoint grading taken from `f`.
pub fn integrate(f: &dyn Evaluable, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    integrate_split(
        |p, _| f.eval_at(p),
        Abscissa::new(0.0),
        f.endpoint_exponents(),
        &f.breakpoints(),
        cfg,
    )
}

/// Tricomi-normalised principal value at an abscissa with exact endpoint
/// distances. `(f(x) - f(t)) / (x - t)` is integrated and the exact
/// `f(t) log((1-t)/(1+t))` term is added back.
pub(crate) fn pv_at(f: &dyn Evaluable, t: Abscissa, cfg: &QuadratureConfig) -> Result<Complex64> {
    let ft = f.eval_at(t);
    if !is_finite(ft) {
        return Err(FhtError::SingularEvaluation { t: t.x });
    }
    let est = integrate_split(
        |p, dx| {
            if dx == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (f.eval_at(p) - ft) / dx
            }
        },
        t,
        f.endpoint_exponents(),
        &f.breakpoints(),
        cfg,
    )?;
    Ok((est.value + ft * (t.to_right / t.to_left).ln()) / PI)
}

/// `T(f)(t)` by principal-value quadrature.
pub fn fht_pointwise(
    f: &dyn Evaluable,
    t: f64,
    cfg: &QuadratureConfig,
    conv: Convention,
) -> Result<Complex64> {
    fht_pointwise_at(f, Abscissa::new(t), cfg, conv)
}

pub fn fht_pointwise_at(
    f: &dyn Evaluable,
    t: Abscissa,
    cfg: &QuadratureConfig,
    conv: Convention,
) -> Result<Complex64> {
    cfg.validate()?;
    check_interior(t, cfg)?;
    Ok(conv.apply(pv_at(f, t, cfg)?))
}

/// `T(f)` at every point of `ts`. Points are evaluated in parallel; output
/// order follows `ts`.
pub fn fht_grid(
    f: &dyn Evaluable,
    ts: &[f64],
    cfg: &QuadratureConfig,
    conv: Convention,
) -> Result<Vec<Complex64>> {
    ts.par_iter()
        .map(|&t| fht_pointwise(f, t, cfg, conv))
        .collect()
}

/// Chebyshev–Gauss points `cos((2k+1) pi / 2n)` in increasing order.
pub fn chebyshev_points(n: usize) -> Vec<f64> {
    (0..n)
        .rev()
        .map(|k| ((2 * k + 1) as f64 * PI / (2 * n) as f64).cos())
        .collect()
}

fn zero_exponents(f: &EndpointWeightedFunction) -> bool {
    f.has_exponents(0.0, 0.0)
}

/// Exact image of `(1/w) sum a_n T_n` or `w sum b_n U_n`.
///
/// `T(T_n / w) = U_{n-1}` (zero for `n = 0`) and `T(w U_n) = -T_{n+1}`.
pub fn fht_spectral(f: &EndpointWeightedFunction) -> Result<EndpointWeightedFunction> {
    if f.has_exponents(-0.5, -0.5) {
        let a = f.smooth_part().to_basis(Basis::FirstKind);
        let coeffs: Vec<Complex64> = a.coeffs().iter().skip(1).copied().collect();
        return Ok(EndpointWeightedFunction::smooth(ChebyshevSeries::new(
            coeffs,
            Basis::SecondKind,
        )));
    }
    if f.has_exponents(0.5, 0.5) {
        let b = f.smooth_part().to_basis(Basis::SecondKind);
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        coeffs.extend(b.coeffs().iter().map(|c| -c));
        return Ok(EndpointWeightedFunction::smooth(ChebyshevSeries::new(
            coeffs,
            Basis::FirstKind,
        )));
    }
    Err(FhtError::UnsupportedExponents { a: f.a(), b: f.b() })
}

/// `T^(g) = -(1/w) T(g w)` for smooth `g = sum b_n U_n`, giving
/// `(1/w) sum b_n T_{n+1}`.
pub fn fht_hat(g: &EndpointWeightedFunction) -> Result<EndpointWeightedFunction> {
    if !zero_exponents(g) {
        return Err(FhtError::UnsupportedExponents { a: g.a(), b: g.b() });
    }
    let b = g.smooth_part().to_basis(Basis::SecondKind);
    let mut coeffs = vec![Complex64::new(0.0, 0.0)];
    coeffs.extend_from_slice(b.coeffs());
    Ok(EndpointWeightedFunction::over_w(ChebyshevSeries::new(
        coeffs,
        Basis::FirstKind,
    )))
}

/// `Tv(g) = -w T(g / w)` for smooth `g = sum a_n T_n`, giving
/// `-w sum_{n>=1} a_n U_{n-1}`.
pub fn fht_check(g: &EndpointWeightedFunction) -> Result<EndpointWeightedFunction> {
    if !zero_exponents(g) {
        return Err(FhtError::UnsupportedExponents { a: g.a(), b: g.b() });
    }
    let a = g.smooth_part().to_basis(Basis::FirstKind);
    let coeffs: Vec<Complex64> = a.coeffs().iter().skip(1).map(|c| -c).collect();
    Ok(EndpointWeightedFunction::times_w(ChebyshevSeries::new(
        coeffs,
        Basis::SecondKind,
    )))
}

fn sampled_to_smooth(g: &SampledFunction, degree: usize) -> Result<EndpointWeightedFunction> {
    Ok(EndpointWeightedFunction::smooth(interpolate_evaluable(
        g, degree,
    )?))
}

pub fn fht_hat_sampled(g: &SampledFunction, degree: usize) -> Result<EndpointWeightedFunction> {
    fht_hat(&sampled_to_smooth(g, degree)?)
}

pub fn fht_check_sampled(g: &SampledFunction, degree: usize) -> Result<EndpointWeightedFunction> {
    fht_check(&sampled_to_smooth(g, degree)?)
}

/// `T^(g)(t)` by quadrature, for any `g` with `g w` integrable.
pub fn fht_hat_at(g: &dyn Evaluable, t: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let p = Abscissa::new(t);
    let gw = Reweighted::times_w(g);
    Ok(-fht_pointwise_at(&gw, p, cfg, Convention::Tricomi)? / p.w())
}

/// `Tv(g)(t)` by quadrature, for any `g` with `g / w` integrable.
pub fn fht_check_at(g: &dyn Evaluable, t: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let p = Abscissa::new(t);
    let g_over_w = Reweighted::over_w(g);
    Ok(-fht_pointwise_at(&g_over_w, p, cfg, Convention::Tricomi)? * p.w())
}

/// `P(f) = ((1/pi) int f) / w`.
pub fn project_p(f: &dyn Evaluable, cfg: &QuadratureConfig) -> Result<EndpointWeightedFunction> {
    let c = integrate(f, cfg)?.value / PI;
    Ok(EndpointWeightedFunction::over_w(ChebyshevSeries::constant(
        c,
    )))
}

/// `Q(f) = ((1/pi) int f / w) 1`.
pub fn project_q(f: &dyn Evaluable, cfg: &QuadratureConfig) -> Result<EndpointWeightedFunction> {
    let c = integrate(&Reweighted::over_w(f), cfg)?.value / PI;
    Ok(EndpointWeightedFunction::smooth(ChebyshevSeries::constant(
        c,
    )))
}

/// `rho(t) T(f / rho)(t)` with `rho = (1-x)^gamma (1+x)^delta`.
///
/// Both exponents must lie in `(-1/p, 1 - 1/p)`.
pub fn weighted_transform(
    gamma: f64,
    delta: f64,
    p: f64,
    f: &dyn Evaluable,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check_weight_window(gamma, delta, p)?;
    let at = Abscissa::new(t);
    let inner = Reweighted::new(f, -gamma, -delta);
    let rho = at.to_right.powf(gamma) * at.to_left.powf(delta);
    Ok(fht_pointwise_at(&inner, at, cfg, Convention::Tricomi)? * rho)
}

pub fn check_weight_window(gamma: f64, delta: f64, p: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(FhtError::InvalidParameter(format!(
            "p must lie in (1, inf), got {p}"
        )));
    }
    let lo = -1.0 / p;
    let hi = 1.0 - 1.0 / p;
    let ok = |e: f64| e > lo && e < hi;
    if !(ok(gamma) && ok(delta)) {
        return Err(FhtError::ExponentOutOfRange { gamma, delta, p });
    }
    Ok(())
}
