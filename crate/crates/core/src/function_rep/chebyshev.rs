//! Chebyshev series in the first-kind (`T_n`) or second-kind (`U_n`) basis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::evaluable::{Abscissa, Evaluable};
use crate::error::{FhtError, Result};

/// Tail tolerance below which a series counts as resolved.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "chebT")]
    FirstKind,
    #[serde(rename = "chebU")]
    SecondKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevSeries {
    coeffs: Vec<Complex64>,
    basis: Basis,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl ChebyshevSeries {
    pub fn new(coeffs: Vec<Complex64>, basis: Basis) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![c(0.0)]
        } else {
            coeffs
        };
        ChebyshevSeries { coeffs, basis }
    }

    pub fn from_real(coeffs: &[f64], basis: Basis) -> Self {
        Self::new(coeffs.iter().map(|&x| c(x)).collect(), basis)
    }

    pub fn zero() -> Self {
        Self::new(vec![c(0.0)], Basis::FirstKind)
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(vec![value], Basis::FirstKind)
    }

    /// Single basis element `T_n` or `U_n`.
    pub fn basis_element(n: usize, basis: Basis) -> Self {
        let mut coeffs = vec![c(0.0); n + 1];
        coeffs[n] = c(1.0);
        Self::new(coeffs, basis)
    }

    /// Converts monomial coefficients `p_0 + p_1 x + ...` to the T basis
    /// (Horner's scheme with `x T_n = (T_{n+1} + T_{n-1}) / 2`).
    pub fn from_monomials(mono: &[Complex64]) -> Self {
        let mut acc: Vec<Complex64> = vec![c(0.0)];
        for &pk in mono.iter().rev() {
            let mut next = vec![c(0.0); acc.len() + 1];
            for (n, &a) in acc.iter().enumerate() {
                if n == 0 {
                    next[1] += a;
                } else {
                    next[n + 1] += a * 0.5;
                    next[n - 1] += a * 0.5;
                }
            }
            next[0] += pk;
            acc = next;
        }
        Self::trim_trailing(Self::new(acc, Basis::FirstKind))
    }

    fn trim_trailing(mut s: Self) -> Self {
        while s.coeffs.len() > 1 && s.coeffs.last() == Some(&c(0.0)) {
            s.coeffs.pop();
        }
        s
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|z| *z == c(0.0))
    }

    /// Resolved when `max(|c_{N-1}|, |c_N|) <= tail_tol * max_n |c_n|`.
    pub fn is_resolved(&self, tail_tol: f64) -> bool {
        let scale = self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return true;
        }
        let n = self.coeffs.len();
        let tail = self.coeffs[n.saturating_sub(2)..]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        n >= 2 && tail <= tail_tol * scale
    }

    /// Clenshaw evaluation. For `U_n` the recurrence is identical and only
    /// the final step differs.
    pub fn eval_real(&self, x: f64) -> Complex64 {
        let mut b1 = c(0.0);
        let mut b2 = c(0.0);
        for &ck in self.coeffs[1..].iter().rev() {
            let b0 = ck + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = b0;
        }
        match self.basis {
            Basis::FirstKind => self.coeffs[0] + b1 * x - b2,
            Basis::SecondKind => self.coeffs[0] + b1 * (2.0 * x) - b2,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|z| z * factor).collect(), self.basis)
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.to_basis(self.basis);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![c(0.0); n];
        for (i, z) in self.coeffs.iter().enumerate() {
            out[i] += z;
        }
        for (i, z) in other.coeffs.iter().enumerate() {
            out[i] += z;
        }
        Self::new(out, self.basis)
    }

    pub fn to_basis(&self, basis: Basis) -> Self {
        match (self.basis, basis) {
            (a, b) if a == b => self.clone(),
            (Basis::FirstKind, Basis::SecondKind) => self.t_to_u(),
            _ => self.u_to_t(),
        }
    }

    /// `T_0 = U_0`, `T_1 = U_1 / 2`, `T_n = (U_n - U_{n-2}) / 2`.
    fn t_to_u(&self) -> Self {
        let n = self.coeffs.len();
        let get = |k: usize| if k < n { self.coeffs[k] } else { c(0.0) };
        let mut u = vec![c(0.0); n];
        for (k, uk) in u.iter_mut().enumerate() {
            let own = if k == 0 { get(0) } else { get(k) * 0.5 };
            *uk = own - get(k + 2) * 0.5;
        }
        Self::new(u, Basis::SecondKind)
    }

    /// `U_n = 2 (T_n + T_{n-2} + ...)`, with the `T_0` term counted once.
    fn u_to_t(&self) -> Self {
        let n = self.coeffs.len();
        let mut t = vec![c(0.0); n];
        // suffix sums over indices of equal parity
        let mut acc = [c(0.0), c(0.0)];
        for k in (0..n).rev() {
            acc[k % 2] += self.coeffs[k];
            t[k] = if k == 0 { acc[0] } else { acc[k % 2] * 2.0 };
        }
        Self::new(t, Basis::FirstKind)
    }
}

impl Evaluable for ChebyshevSeries {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        self.eval_real(p.x)
    }
}

/// Degree-`degree` interpolant through the Chebyshev–Gauss nodes
/// `cos((2k+1) pi / (2N+2))`, returned in the T basis.
pub fn interpolate_chebyshev<F>(f: F, degree: usize) -> Result<ChebyshevSeries>
where
    F: Fn(f64) -> Complex64,
{
    let m = degree + 1;
    let nodes: Vec<f64> = (0..m)
        .map(|k| ((2 * k + 1) as f64 * PI / (2 * m) as f64).cos())
        .collect();
    let mut values = Vec::with_capacity(m);
    for &x in &nodes {
        let v = f(x);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(FhtError::NonFiniteSample { x });
        }
        values.push(v);
    }
    // Accumulate sum_k f(x_k) T_j(x_k) row by row using the three-term
    // recurrence in j for every node.
    let mut coeffs = vec![c(0.0); m];
    let mut t_prev: Vec<f64> = vec![1.0; m];
    let mut t_cur: Vec<f64> = nodes.clone();
    for (j, cj) in coeffs.iter_mut().enumerate() {
        let row: &[f64] = match j {
            0 => &t_prev,
            _ => &t_cur,
        };
        let s: Complex64 = values.iter().zip(row).map(|(v, t)| v * t).sum();
        *cj = s * (2.0 / m as f64);
        if j >= 1 {
            let next: Vec<f64> = t_cur
                .iter()
                .zip(&t_prev)
                .zip(&nodes)
                .map(|((tc, tp), x)| 2.0 * x * tc - tp)
                .collect();
            t_prev = std::mem::replace(&mut t_cur, next);
        }
    }
    coeffs[0] *= 0.5;
    Ok(ChebyshevSeries::new(coeffs, Basis::FirstKind))
}

/// Interpolates any evaluable on (-1, 1).
pub fn interpolate_evaluable(f: &dyn Evaluable, degree: usize) -> Result<ChebyshevSeries> {
    interpolate_chebyshev(|x| f.eval(x), degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_t(coeffs: &[Complex64], x: f64) -> Complex64 {
        let th = x.clamp(-1.0, 1.0).acos();
        coeffs
            .iter()
            .enumerate()
            .map(|(n, z)| z * (n as f64 * th).cos())
            .sum()
    }

    fn direct_u(coeffs: &[Complex64], x: f64) -> Complex64 {
        let th = x.clamp(-1.0, 1.0).acos();
        coeffs
            .iter()
            .enumerate()
            .map(|(n, z)| {
                let s = th.sin();
                let u = if s.abs() < 1e-300 {
                    // limit at x = +-1
                    let sign = if x > 0.0 {
                        1.0
                    } else {
                        (-1.0f64).powi(n as i32)
                    };
                    sign * (n + 1) as f64
                } else {
                    ((n + 1) as f64 * th).sin() / s
                };
                z * u
            })
            .sum()
    }

    #[test]
    fn interpolates_identity_exactly() {
        let s = interpolate_chebyshev(c, 3).unwrap();
        let want = [0.0, 1.0, 0.0, 0.0];
        for (z, w) in s.coeffs().iter().zip(want) {
            assert!((z - c(w)).norm() < 1e-15, "{z}");
        }
    }

    #[test]
    fn interpolates_t2_exactly() {
        let s = interpolate_chebyshev(|x| c(2.0 * x * x - 1.0), 3).unwrap();
        let want = [0.0, 0.0, 1.0, 0.0];
        for (z, w) in s.coeffs().iter().zip(want) {
            assert!((z - c(w)).norm() < 1e-15, "{z}");
        }
    }

    #[test]
    fn exp_matches_direct_cosine_sums() {
        let n = 16usize;
        let m = n + 1;
        // oracle: c_j = (2/m) sum_k f(cos th_k) cos(j th_k), halved for j = 0
        let oracle: Vec<f64> = (0..m)
            .map(|j| {
                let s: f64 = (0..m)
                    .map(|k| {
                        let th = (2 * k + 1) as f64 * PI / (2 * m) as f64;
                        th.cos().exp() * (j as f64 * th).cos()
                    })
                    .sum();
                let cj = 2.0 * s / m as f64;
                if j == 0 {
                    cj / 2.0
                } else {
                    cj
                }
            })
            .collect();
        let s = interpolate_chebyshev(|x| c(x.exp()), n).unwrap();
        for (z, o) in s.coeffs().iter().zip(&oracle) {
            assert!((z.re - o).abs() < 1e-14, "{} vs {}", z.re, o);
        }
        assert!(s.coeffs()[16].norm() < 1e-14);
    }

    #[test]
    fn non_finite_sample_rejected() {
        let err = interpolate_chebyshev(|x| c(1.0 / (x - x)), 4).unwrap_err();
        assert!(matches!(err, FhtError::NonFiniteSample { .. }));
    }

    #[test]
    fn resolved_flag() {
        let s = interpolate_chebyshev(|x| c(x.exp()), 24).unwrap();
        assert!(s.is_resolved(DEFAULT_TAIL_TOL));
        let rough = interpolate_chebyshev(|x| c(x.abs()), 24).unwrap();
        assert!(!rough.is_resolved(DEFAULT_TAIL_TOL));
    }

    #[test]
    fn monomials_convert() {
        // 1 + 2x + 3x^2 = 1 + 2 T_1 + 3 (T_0 + T_2)/2
        let s = ChebyshevSeries::from_monomials(&[c(1.0), c(2.0), c(3.0)]);
        let want = [2.5, 2.0, 1.5];
        assert_eq!(s.degree(), 2);
        for (z, w) in s.coeffs().iter().zip(want) {
            assert!((z - c(w)).norm() < 1e-15);
        }
    }

    #[test]
    fn basis_round_trip() {
        let s = ChebyshevSeries::from_real(&[0.3, -1.0, 2.0, 0.5, 0.25, -0.7], Basis::FirstKind);
        let u = s.to_basis(Basis::SecondKind);
        for &x in &[-0.9, -0.3, 0.0, 0.4, 0.95] {
            assert!((s.eval_real(x) - u.eval_real(x)).norm() < 1e-13);
        }
        let back = u.to_basis(Basis::FirstKind);
        for (a, b) in s.coeffs().iter().zip(back.coeffs()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    proptest::proptest! {
        #[test]
        fn clenshaw_matches_direct_sum(
            coeffs in proptest::collection::vec(-1.0f64..1.0, 1..257),
            x in -1.0f64..=1.0,
            second in proptest::bool::ANY,
        ) {
            let cs: Vec<Complex64> = coeffs.iter().map(|&r| c(r)).collect();
            let basis = if second { Basis::SecondKind } else { Basis::FirstKind };
            let s = ChebyshevSeries::new(cs.clone(), basis);
            let direct = match basis {
                Basis::FirstKind => direct_t(&cs, x),
                Basis::SecondKind => direct_u(&cs, x),
            };
            // scale: sum |c_n| * max |basis_n| on [-1, 1]
            let scale: f64 = cs.iter().enumerate().map(|(n, z)| {
                z.norm() * if second { (n + 1) as f64 } else { 1.0 }
            }).sum::<f64>().max(1e-300);
            let got = s.eval_real(x);
            proptest::prop_assert!((got - direct).norm() / scale < 1e-13);
        }
    }
}
