use num_complex::Complex64;

use super::evaluable::{Abscissa, Evaluable};
use crate::error::{FhtError, Result};

/// Default exclusion band around +-1 for sample grids.
pub const DEFAULT_EDGE_EPS: f64 = 1e-6;

/// Samples of a function on a strictly increasing grid inside (-1, 1).
///
/// As an [`Evaluable`] it is the piecewise-linear interpolant, extended as a
/// constant beyond the first and last samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    points: Vec<f64>,
    values: Vec<Complex64>,
    holder_hint: Option<f64>,
    /// Explicit cell measures; midpoint cells when absent.
    measures: Option<Vec<f64>>,
}

impl SampledFunction {
    pub fn new(points: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        Self::with_edge(points, values, DEFAULT_EDGE_EPS)
    }

    pub fn with_edge(points: Vec<f64>, values: Vec<Complex64>, edge_eps: f64) -> Result<Self> {
        if points.len() != values.len() {
            return Err(FhtError::InvalidGrid(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        let lo = -1.0 + edge_eps;
        let hi = 1.0 - edge_eps;
        for (i, &x) in points.iter().enumerate() {
            if !(x >= lo && x <= hi) {
                return Err(FhtError::InvalidGrid(format!(
                    "point {x} outside [{lo}, {hi}]"
                )));
            }
            if i > 0 && points[i - 1] >= x {
                return Err(FhtError::InvalidGrid(format!(
                    "points not strictly increasing at index {i}"
                )));
            }
        }
        Ok(SampledFunction {
            points,
            values,
            holder_hint: None,
            measures: None,
        })
    }

    /// Samples that carry their own cell measures, e.g. quadrature weights of
    /// a graded grid. Measures must be positive and sum to at most 2.
    pub fn with_measures(
        points: Vec<f64>,
        values: Vec<Complex64>,
        measures: Vec<f64>,
    ) -> Result<Self> {
        if measures.len() != points.len() {
            return Err(FhtError::InvalidGrid(format!(
                "{} points but {} measures",
                points.len(),
                measures.len()
            )));
        }
        if measures.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
            return Err(FhtError::InvalidGrid(
                "cell measures must be positive".into(),
            ));
        }
        if measures.iter().sum::<f64>() > 2.0 + 1e-12 {
            return Err(FhtError::InvalidGrid(
                "cell measures exceed the interval length".into(),
            ));
        }
        let mut f = Self::with_edge(points, values, 0.0)?;
        f.measures = Some(measures);
        Ok(f)
    }

    /// Samples `f` at the cell centres of a uniform partition of (-1, 1)
    /// into `cells` pieces.
    pub fn cell_centred<F>(f: F, cells: usize) -> Result<Self>
    where
        F: Fn(Abscissa) -> Complex64,
    {
        if cells < 2 {
            return Err(FhtError::DegenerateGrid { len: cells });
        }
        let h = 2.0 / cells as f64;
        let mut points = Vec::with_capacity(cells);
        let mut values = Vec::with_capacity(cells);
        for i in 0..cells {
            // exact distances to the nearer endpoint
            let d = (i as f64 + 0.5) * h;
            let p = if d <= 1.0 {
                Abscissa::near_left(d)
            } else {
                Abscissa::near_right((cells - i) as f64 * h - 0.5 * h)
            };
            points.push(p.x);
            values.push(f(p));
        }
        Self::with_edge(points, values, 0.0)
    }

    pub fn with_holder_hint(mut self, exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent <= 1.0) {
            return Err(FhtError::InvalidParameter(format!(
                "Hölder exponent {exponent} not in (0, 1]"
            )));
        }
        self.holder_hint = Some(exponent);
        Ok(self)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Measures of the cells around each sample: the explicit measures if
    /// given, otherwise boundaries at midpoints with the outer cells
    /// extended to -1 and +1 (summing to 2).
    pub fn cell_widths(&self) -> Vec<f64> {
        if let Some(m) = &self.measures {
            return m.clone();
        }
        let n = self.points.len();
        let mut widths = Vec::with_capacity(n);
        for i in 0..n {
            let left = if i == 0 {
                -1.0
            } else {
                0.5 * (self.points[i - 1] + self.points[i])
            };
            let right = if i + 1 == n {
                1.0
            } else {
                0.5 * (self.points[i] + self.points[i + 1])
            };
            widths.push(right - left);
        }
        widths
    }
}

impl Evaluable for SampledFunction {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        let x = p.x;
        let n = self.points.len();
        if n == 0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        if x <= self.points[0] {
            return self.values[0];
        }
        if x >= self.points[n - 1] {
            return self.values[n - 1];
        }
        let j = self.points.partition_point(|&q| q <= x);
        let (x0, x1) = (self.points[j - 1], self.points[j]);
        let s = (x - x0) / (x1 - x0);
        self.values[j - 1] * (1.0 - s) + self.values[j] * s
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.points.clone()
    }

    fn holder_hint(&self) -> Option<f64> {
        self.holder_hint
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        let v = |n| vec![Complex64::new(0.0, 0.0); n];
        assert!(SampledFunction::new(vec![-0.5, 0.0, 0.5], v(3)).is_ok());
        assert!(SampledFunction::new(vec![-0.5, 0.5, 0.0], v(3)).is_err());
        assert!(SampledFunction::new(vec![-0.5, 0.0], v(3)).is_err());
        assert!(SampledFunction::new(vec![-1.0, 0.0], v(2)).is_err());
        assert!(SampledFunction::new(vec![0.0, 1.0 - 1e-7], v(2)).is_err());
    }

    #[test]
    fn cell_widths_sum_to_two() {
        let f = SampledFunction::new(
            vec![-0.9, -0.2, 0.1, 0.7],
            vec![Complex64::new(1.0, 0.0); 4],
        )
        .unwrap();
        let s: f64 = f.cell_widths().iter().sum();
        assert!((s - 2.0).abs() < 1e-15);
    }

    #[test]
    fn linear_interpolation() {
        let f = SampledFunction::new(
            vec![-0.5, 0.5],
            vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, -2.0)],
        )
        .unwrap();
        assert_eq!(f.eval(0.0), Complex64::new(1.0, -1.0));
        assert_eq!(f.eval(-0.9), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn holder_hint_range() {
        let f = SampledFunction::new(vec![0.0, 0.1], vec![Complex64::new(0.0, 0.0); 2]).unwrap();
        assert!(f.clone().with_holder_hint(0.0).is_err());
        assert!(f.clone().with_holder_hint(1.5).is_err());
        assert_eq!(f.with_holder_hint(0.5).unwrap().holder_hint(), Some(0.5));
    }

    #[test]
    fn cell_centred_is_symmetric() {
        let f = SampledFunction::cell_centred(|p| Complex64::new(p.x, 0.0), 8).unwrap();
        let pts = f.points();
        for i in 0..8 {
            assert_eq!(pts[i], -pts[7 - i]);
        }
    }

    #[test]
    fn explicit_measures() {
        let one = vec![Complex64::new(1.0, 0.0); 2];
        let f =
            SampledFunction::with_measures(vec![-0.5, 0.5], one.clone(), vec![0.25, 1.0]).unwrap();
        assert_eq!(f.cell_widths(), vec![0.25, 1.0]);
        assert!(
            SampledFunction::with_measures(vec![-0.5, 0.5], one.clone(), vec![0.0, 1.0]).is_err()
        );
        assert!(SampledFunction::with_measures(vec![-0.5, 0.5], one, vec![1.5, 1.0]).is_err());
    }
}
