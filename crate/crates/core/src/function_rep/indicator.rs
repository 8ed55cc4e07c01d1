use crate::error::{FhtError, Result};

/// Finite union of disjoint open intervals of the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorUnion {
    intervals: Vec<(f64, f64)>,
}

impl IndicatorUnion {
    /// Sorts, drops empty pieces and merges overlapping or touching ones.
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals
            .iter()
            .any(|(a, b)| !a.is_finite() || !b.is_finite())
        {
            return Err(FhtError::InvalidParameter(
                "interval endpoints must be finite".into(),
            ));
        }
        intervals.retain(|(a, b)| b > a);
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        if merged.is_empty() {
            return Err(FhtError::DegenerateSet);
        }
        Ok(IndicatorUnion { intervals: merged })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// Hilbert transform of the indicator on the real line, normalised as
    /// `(1/pi) p.v. int chi_A(y) / (y - x) dy`.
    pub fn hilbert_transform(&self, x: f64) -> f64 {
        self.intervals
            .iter()
            .map(|&(a, b)| ((b - x) / (a - x)).abs().ln())
            .sum::<f64>()
            / std::f64::consts::PI
    }
}
