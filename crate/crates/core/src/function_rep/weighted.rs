use num_complex::Complex64;

use super::chebyshev::{Basis, ChebyshevSeries};
use super::evaluable::{Abscissa, Evaluable};
use crate::error::{FhtError, Result};

/// `(1-x)^a (1+x)^b * smooth(x)` on (-1, 1), principal-branch powers.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointWeightedFunction {
    a: Complex64,
    b: Complex64,
    smooth: ChebyshevSeries,
}

const HALF: f64 = 0.5;

impl EndpointWeightedFunction {
    pub fn new(a: Complex64, b: Complex64, smooth: ChebyshevSeries) -> Result<Self> {
        if !(a.re > -1.0 && b.re > -1.0) || !a.is_finite() || !b.is_finite() {
            return Err(FhtError::NonIntegrableExponents { a, b });
        }
        Ok(EndpointWeightedFunction { a, b, smooth })
    }

    pub fn real(a: f64, b: f64, smooth: ChebyshevSeries) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0), smooth)
    }

    /// Exponents (0, 0): a plain smooth function.
    pub fn smooth(smooth: ChebyshevSeries) -> Self {
        Self::real(0.0, 0.0, smooth).expect("zero exponents are integrable")
    }

    /// `smooth / w` with `w = sqrt(1 - x^2)`.
    pub fn over_w(smooth: ChebyshevSeries) -> Self {
        Self::real(-HALF, -HALF, smooth).expect("-1/2 is integrable")
    }

    /// `w * smooth`.
    pub fn times_w(smooth: ChebyshevSeries) -> Self {
        Self::real(HALF, HALF, smooth).expect("1/2 is integrable")
    }

    /// `1 / w`.
    pub fn inv_weight() -> Self {
        Self::over_w(ChebyshevSeries::constant(Complex64::new(1.0, 0.0)))
    }

    /// `w`.
    pub fn weight() -> Self {
        Self::times_w(ChebyshevSeries::constant(Complex64::new(1.0, 0.0)))
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn smooth_part(&self) -> &ChebyshevSeries {
        &self.smooth
    }

    pub fn has_exponents(&self, a: f64, b: f64) -> bool {
        self.a == Complex64::new(a, 0.0) && self.b == Complex64::new(b, 0.0)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        EndpointWeightedFunction {
            a: self.a,
            b: self.b,
            smooth: self.smooth.scale(factor),
        }
    }

    /// Sum of two functions sharing the same exponents.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.a != other.a || self.b != other.b {
            return Err(FhtError::UnsupportedExponents {
                a: other.a,
                b: other.b,
            });
        }
        Ok(EndpointWeightedFunction {
            a: self.a,
            b: self.b,
            smooth: self.smooth.add(&other.smooth),
        })
    }

    pub fn with_basis(&self, basis: Basis) -> Self {
        EndpointWeightedFunction {
            a: self.a,
            b: self.b,
            smooth: self.smooth.to_basis(basis),
        }
    }

    fn endpoint_factor(&self, p: Abscissa) -> Complex64 {
        if self.a.im == 0.0 && self.b.im == 0.0 {
            let mut r = 1.0;
            if self.a.re != 0.0 {
                r *= p.to_right.powf(self.a.re);
            }
            if self.b.re != 0.0 {
                r *= p.to_left.powf(self.b.re);
            }
            Complex64::new(r, 0.0)
        } else {
            (self.a * p.to_right.ln() + self.b * p.to_left.ln()).exp()
        }
    }
}

impl Evaluable for EndpointWeightedFunction {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        self.endpoint_factor(p) * self.smooth.eval_real(p.x)
    }

    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        (self.a, self.b)
    }
}
