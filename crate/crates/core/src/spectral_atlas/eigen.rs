use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::region::moebius_arg;
use crate::error::{FhtError, Result};
use crate::fht_engine::{fht_pointwise, Convention};
use crate::function_rep::{ChebyshevSeries, EndpointWeightedFunction, Evaluable};
use crate::quadrature::QuadratureConfig;

/// Imaginary-part tolerance for membership of the eigenvalue set.
pub const EIGEN_SET_IM_TOL: f64 = 1e-14;
/// `eigen_residual` needs `gamma_lambda > 1 + EIGEN_GAMMA_MARGIN`.
pub const EIGEN_GAMMA_MARGIN: f64 = 0.05;

/// `lambda` off the rays `(-inf, -1]` and `[1, inf)`.
pub fn in_eigenvalue_set(lambda: Complex64) -> bool {
    !(lambda.im.abs() <= EIGEN_SET_IM_TOL && lambda.re.abs() >= 1.0) && lambda.is_finite()
}

/// `z = log((1+lambda)/(1-lambda)) / (2 pi i)` on the principal branch.
pub fn z_of_lambda(lambda: Complex64) -> Result<Complex64> {
    if !in_eigenvalue_set(lambda) {
        return Err(FhtError::BranchViolation { lambda });
    }
    let log_modulus = Complex64::new(1.0 + lambda.re, lambda.im).norm().ln()
        - Complex64::new(1.0 - lambda.re, -lambda.im).norm().ln();
    let log_u = Complex64::new(log_modulus, moebius_arg(lambda));
    Ok(log_u / Complex64::new(0.0, 2.0 * PI))
}

/// Integrability threshold: `xi_lambda` lies in `L^p` exactly for `p < gamma`.
///
/// `1/gamma = 1/2 + |arg((1+lambda)/(1-lambda))| / 2pi`, which gives
/// `gamma = 2` on `(-1, 1)`.
pub fn gamma_of_lambda(lambda: Complex64) -> Result<f64> {
    if !in_eigenvalue_set(lambda) {
        return Err(FhtError::OutsideEigenvalueSet { lambda });
    }
    Ok(1.0 / (0.5 + moebius_arg(lambda).abs() / (2.0 * PI)))
}

/// `xi_lambda = (1-x)^{-1/2+z} (1+x)^{-1/2-z}`.
pub fn xi(lambda: Complex64) -> Result<EndpointWeightedFunction> {
    let z = z_of_lambda(lambda)?;
    EndpointWeightedFunction::new(
        z - 0.5,
        -z - 0.5,
        ChebyshevSeries::constant(Complex64::new(1.0, 0.0)),
    )
}

pub fn xi_eval(lambda: Complex64, x: f64) -> Result<Complex64> {
    Ok(xi(lambda)?.eval(x))
}

/// `sup_t |(T/i) xi(t) - lambda xi(t)| / (1 + |xi(t)|)` over `grid`.
pub fn eigen_residual(lambda: Complex64, grid: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    let gamma = gamma_of_lambda(lambda)?;
    if gamma <= 1.0 + EIGEN_GAMMA_MARGIN {
        return Err(FhtError::InvalidParameter(format!(
            "gamma_lambda = {gamma} too close to 1 for a reliable eigen check"
        )));
    }
    let f = xi(lambda)?;
    let res: Vec<f64> = grid
        .par_iter()
        .map(|&t| -> Result<f64> {
            let v = f.eval(t);
            let tv = fht_pointwise(&f, t, cfg, Convention::Widom)?;
            Ok((tv - lambda * v).norm() / (1.0 + v.norm()))
        })
        .collect::<Result<_>>()?;
    Ok(res.into_iter().fold(0.0, f64::max))
}
