use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{FhtError, Result};

/// Tolerance on the defining inequality of `R_p`.
pub const REGION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// `arg((1+lambda)/(1-lambda))` in `(-pi, pi]`, written as a difference of
/// arguments so that `lambda -> -lambda` and `lambda -> conj(lambda)` flip
/// the sign exactly.
pub(crate) fn moebius_arg(lambda: Complex64) -> f64 {
    let plus = Complex64::new(1.0 + lambda.re, lambda.im);
    let minus = Complex64::new(1.0 - lambda.re, -lambda.im);
    let mut d = plus.arg() - minus.arg();
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

pub(crate) fn is_endpoint(lambda: Complex64) -> bool {
    lambda.im.abs() <= REGION_TOL && (lambda.re.abs() - 1.0).abs() <= REGION_TOL
}

/// The lens `R_p`: `{+-1}` together with all `lambda` such that
/// `|arg((1+lambda)/(1-lambda))| / 2pi <= |1/2 - 1/p|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralRegion {
    p: f64,
}

impl SpectralRegion {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(FhtError::InvalidParameter(format!(
                "p must lie in (1, inf), got {p}"
            )));
        }
        Ok(SpectralRegion { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `|1/2 - 1/p|`
    pub fn half_angle(&self) -> f64 {
        (0.5 - 1.0 / self.p).abs()
    }

    pub fn contains(&self, lambda: Complex64) -> Membership {
        if is_endpoint(lambda) {
            return Membership::Boundary;
        }
        let lhs = moebius_arg(lambda).abs() / (2.0 * PI);
        let rhs = self.half_angle();
        if lhs < rhs - REGION_TOL {
            Membership::Interior
        } else if lhs <= rhs + REGION_TOL {
            Membership::Boundary
        } else {
            Membership::Outside
        }
    }

    /// Apex of the upper arc, `i cot(pi / max(p, p'))`.
    pub fn apex(&self) -> Complex64 {
        Complex64::new(0.0, (PI * self.half_angle()).tan())
    }

    /// Upper and lower boundary arcs from `-1` to `1`, `points` each.
    ///
    /// With `u = tan(psi/2) e^{+-i theta}` and `theta = 2 pi |1/2 - 1/p|`,
    /// `lambda = (u - 1)/(u + 1)` runs along the arc as `psi` goes from 0 to pi.
    pub fn boundary_arcs(&self, points: usize) -> [Vec<Complex64>; 2] {
        let theta = 2.0 * PI * self.half_angle();
        let n = points.max(2);
        let arc = |sign: f64| -> Vec<Complex64> {
            (0..n)
                .map(|k| {
                    if k == n - 1 {
                        return Complex64::new(1.0, 0.0);
                    }
                    let psi = PI * k as f64 / (n - 1) as f64;
                    let u = Complex64::from_polar((psi / 2.0).tan(), sign * theta);
                    (u - 1.0) / (u + 1.0)
                })
                .collect()
        };
        [arc(1.0), arc(-1.0)]
    }

    /// Deterministic sample of `R_p`: both endpoints plus a `(psi, theta)`
    /// lattice reaching the boundary. Exactly `count` points for `count >= 2`.
    pub fn sample(&self, count: usize) -> Vec<Complex64> {
        let theta0 = 2.0 * PI * self.half_angle();
        let mut out = vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
        let rest = count.saturating_sub(2);
        let n_theta = 9usize.min(rest.max(1));
        let n_psi = rest.div_ceil(n_theta);
        'outer: for i in 0..n_psi {
            let psi = PI * (i as f64 + 0.5) / n_psi as f64;
            let r = (psi / 2.0).tan();
            for j in 0..n_theta {
                if out.len() >= count {
                    break 'outer;
                }
                let theta = if n_theta == 1 {
                    0.0
                } else {
                    -theta0 + 2.0 * theta0 * j as f64 / (n_theta - 1) as f64
                };
                let u = Complex64::from_polar(r, theta);
                out.push((u - 1.0) / (u + 1.0));
            }
        }
        out
    }
}

pub fn region_contains(p: f64, lambda: Complex64) -> Result<Membership> {
    Ok(SpectralRegion::new(p)?.contains(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apex_is_boundary() {
        let r = SpectralRegion::new(4.0).unwrap();
        assert_eq!(r.contains(Complex64::new(0.0, 1.0)), Membership::Boundary);
        assert!((r.apex() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        for p in [1.2, 1.5, 3.0, 7.0] {
            let r = SpectralRegion::new(p).unwrap();
            let apex = Complex64::new(0.0, 1.0 / (PI / p).tan());
            assert_eq!(r.contains(apex), Membership::Boundary, "p = {p}");
            assert_eq!(r.contains(-apex), Membership::Boundary, "p = {p}");
        }
    }

    #[test]
    fn p2_is_the_unit_interval() {
        let r = SpectralRegion::new(2.0).unwrap();
        assert_eq!(r.contains(Complex64::new(0.5, 0.0)), Membership::Boundary);
        assert_eq!(r.contains(Complex64::new(0.5, 0.1)), Membership::Outside);
        assert_eq!(r.contains(Complex64::new(1.5, 0.0)), Membership::Outside);
        assert_eq!(r.contains(Complex64::new(-1.0, 0.0)), Membership::Boundary);
    }

    #[test]
    fn real_rays_beyond_one_are_outside() {
        let r = SpectralRegion::new(10.0).unwrap();
        for x in [1.0 + 1e-9, 2.0, -3.0, 1e6] {
            assert_eq!(r.contains(Complex64::new(x, 0.0)), Membership::Outside);
        }
    }

    #[test]
    fn arcs_lie_on_the_boundary() {
        for p in [1.3, 2.5, 6.0] {
            let r = SpectralRegion::new(p).unwrap();
            let [upper, lower] = r.boundary_arcs(400);
            assert_eq!(upper.len(), 400);
            assert!((upper[0] + 1.0).norm() < 1e-15 && (upper[399] - 1.0).norm() < 1e-15);
            for z in upper.iter().chain(&lower) {
                assert_eq!(r.contains(*z), Membership::Boundary, "p = {p}, z = {z}");
            }
            assert!(upper[1..399].iter().all(|z| z.im > 0.0));
            assert!(lower[1..399].iter().all(|z| z.im < 0.0));
        }
    }

    #[test]
    fn sample_stays_in_region() {
        for p in [1.5, 2.0, 4.0] {
            let r = SpectralRegion::new(p).unwrap();
            let s = r.sample(200);
            assert_eq!(s.len(), 200);
            assert!(s.iter().all(|z| r.contains(*z) != Membership::Outside));
        }
    }
}
