//! The airfoil equation `T(f) = g` in both inversion regimes.
//!
//! Low regime: every solution is `T^(g) + C / w`. High regime: a solution
//! exists iff `int g / w = 0`, and is then `Tv(g)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{FhtError, Result};
use crate::fht_engine::{
    chebyshev_points, fht_check, fht_grid, fht_hat, integrate, Convention,
    DEFAULT_INTERPOLATION_DEGREE,
};
use crate::function_rep::{
    interpolate_evaluable, Basis, ChebyshevSeries, EndpointWeightedFunction, Evaluable,
    SampledFunction,
};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Boyd index above 1/2: kernel spanned by `1/w`.
    Low,
    /// Boyd index below 1/2: injective, range `Ker Q`.
    High,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AirfoilSolution {
    pub particular: EndpointWeightedFunction,
    pub homogeneous_coefficient: Option<Complex64>,
    pub regime: Regime,
}

impl AirfoilSolution {
    /// `particular + C / w` in the low regime, `particular` otherwise.
    pub fn solution(&self) -> EndpointWeightedFunction {
        match self.homogeneous_coefficient {
            Some(c) => self
                .particular
                .add(&EndpointWeightedFunction::over_w(
                    ChebyshevSeries::constant(c),
                ))
                .expect("low-regime particular solutions carry 1/w exponents"),
            None => self.particular.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RightHandSide {
    Series(EndpointWeightedFunction),
    Sampled(SampledFunction),
}

impl From<EndpointWeightedFunction> for RightHandSide {
    fn from(g: EndpointWeightedFunction) -> Self {
        RightHandSide::Series(g)
    }
}

impl From<ChebyshevSeries> for RightHandSide {
    fn from(g: ChebyshevSeries) -> Self {
        RightHandSide::Series(EndpointWeightedFunction::smooth(g))
    }
}

impl From<SampledFunction> for RightHandSide {
    fn from(g: SampledFunction) -> Self {
        RightHandSide::Sampled(g)
    }
}

impl RightHandSide {
    fn as_evaluable(&self) -> &dyn Evaluable {
        match self {
            RightHandSide::Series(g) => g,
            RightHandSide::Sampled(g) => g,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub max_residual: f64,
    pub constant_recovered: Option<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirfoilSolver {
    pub quadrature: QuadratureConfig,
    pub interpolation_degree: usize,
    /// Absolute bound on `|(1/pi) int g / w|` accepted by [`AirfoilSolver::solve_high`].
    pub solvability_tol: f64,
    pub test_points: usize,
}

impl Default for AirfoilSolver {
    fn default() -> Self {
        AirfoilSolver {
            quadrature: QuadratureConfig::default(),
            interpolation_degree: DEFAULT_INTERPOLATION_DEGREE,
            solvability_tol: 1e-8,
            test_points: 20,
        }
    }
}

impl AirfoilSolver {
    /// Smooth series form of the right-hand side.
    fn series(&self, g: &RightHandSide) -> Result<ChebyshevSeries> {
        match g {
            RightHandSide::Series(s) => {
                if !s.has_exponents(0.0, 0.0) {
                    return Err(FhtError::UnsupportedExponents { a: s.a(), b: s.b() });
                }
                Ok(s.smooth_part().clone())
            }
            RightHandSide::Sampled(s) => interpolate_evaluable(s, self.interpolation_degree),
        }
    }

    pub fn solve_low(&self, g: &RightHandSide, c: Complex64) -> Result<AirfoilSolution> {
        let g = EndpointWeightedFunction::smooth(self.series(g)?);
        Ok(AirfoilSolution {
            particular: fht_hat(&g)?,
            homogeneous_coefficient: Some(c),
            regime: Regime::Low,
        })
    }

    pub fn solve_high(&self, g: &RightHandSide) -> Result<AirfoilSolution> {
        let residual = self.solvability_residual(g)?;
        if residual > self.solvability_tol {
            return Err(FhtError::NotSolvable { residual });
        }
        let g = EndpointWeightedFunction::smooth(self.series(g)?);
        Ok(AirfoilSolution {
            particular: fht_check(&g)?,
            homogeneous_coefficient: None,
            regime: Regime::High,
        })
    }

    /// `|(1/pi) int g / w|`, read off as the `T_0` coefficient since
    /// `int T_n / w = pi delta_{n0}`.
    pub fn solvability_residual(&self, g: &RightHandSide) -> Result<f64> {
        let s = self.series(g)?.to_basis(Basis::FirstKind);
        Ok(s.coeffs().first().map_or(0.0, |c| c.norm()))
    }

    pub fn solve(
        &self,
        g: &RightHandSide,
        regime: Regime,
        c: Complex64,
    ) -> Result<AirfoilSolution> {
        match regime {
            Regime::Low => self.solve_low(g, c),
            Regime::High => self.solve_high(g),
        }
    }

    /// Solves, then measures `sup |T(f) - g| / max(1, sup |g|)` on
    /// Chebyshev points by quadrature. In the low regime also returns
    /// `(1/pi) int f`, which should equal `c`.
    pub fn verify_roundtrip(
        &self,
        g: &RightHandSide,
        regime: Regime,
        c: Complex64,
    ) -> Result<RoundTripReport> {
        let sol = self.solve(g, regime, c)?;
        let f = sol.solution();
        let ts = chebyshev_points(self.test_points);
        let tf = fht_grid(&f, &ts, &self.quadrature, Convention::Tricomi)?;
        let gv = g.as_evaluable();
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for (&t, v) in ts.iter().zip(&tf) {
            let gt = gv.eval(t);
            worst = worst.max((v - gt).norm());
            scale = scale.max(gt.norm());
        }
        let constant_recovered = match regime {
            Regime::Low => Some(integrate(&f, &self.quadrature)?.value / PI),
            Regime::High => None,
        };
        Ok(RoundTripReport {
            max_residual: worst / scale,
            constant_recovered,
        })
    }
}
