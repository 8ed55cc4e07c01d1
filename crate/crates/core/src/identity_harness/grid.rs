//! Graded composite Gauss–Legendre grids for `L^p` norms of functions with
//! endpoint or interior singularities.

use std::f64::consts::PI;

use crate::function_rep::Abscissa;

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    (nodes, weights)
}

/// Quadrature grid on (-1, 1) with geometric panels toward +-1 and toward
/// each interior singular point.
#[derive(Debug, Clone)]
pub struct NormGrid {
    nodes: Vec<Abscissa>,
    weights: Vec<f64>,
}

const ENDPOINT_LEVELS: usize = 40;
const INTERIOR_LEVELS: usize = 30;
const MAX_PANEL: f64 = 0.0625;

impl NormGrid {
    pub fn graded(singular: &[f64], nodes_per_panel: usize) -> NormGrid {
        let (gx, gw) = gauss_legendre(nodes_per_panel);
        let mut anchors: Vec<f64> = singular
            .iter()
            .copied()
            .filter(|x| *x > -1.0 && *x < 1.0)
            .collect();
        anchors.sort_by(|a, b| a.total_cmp(b));
        anchors.dedup();
        anchors.insert(0, -1.0);
        anchors.push(1.0);

        let mut pts: Vec<(Abscissa, f64)> = Vec::new();
        // distances `d` from `anchor`, toward `dir`
        let mut half = |anchor: f64, dir: f64, length: f64, levels: usize| {
            let mut panels = Vec::new();
            let mut hi = length;
            for _ in 0..levels {
                panels.push((0.5 * hi, hi));
                hi *= 0.5;
            }
            panels.push((0.0, hi));
            for (lo, hi) in panels {
                let pieces = ((hi - lo) / MAX_PANEL).ceil().max(1.0) as usize;
                let step = (hi - lo) / pieces as f64;
                for j in 0..pieces {
                    let a = lo + step * j as f64;
                    for (xi, wi) in gx.iter().zip(&gw) {
                        let d = a + 0.5 * step * (1.0 + xi);
                        let p = if anchor == -1.0 {
                            Abscissa::near_left(d)
                        } else if anchor == 1.0 {
                            Abscissa::near_right(d)
                        } else {
                            Abscissa::new(anchor + dir * d)
                        };
                        pts.push((p, 0.5 * step * wi));
                    }
                }
            }
        };
        for seg in anchors.windows(2) {
            let length = 0.5 * (seg[1] - seg[0]);
            let levels = |a: f64| {
                if a.abs() == 1.0 {
                    ENDPOINT_LEVELS
                } else {
                    INTERIOR_LEVELS
                }
            };
            half(seg[0], 1.0, length, levels(seg[0]));
            half(seg[1], -1.0, length, levels(seg[1]));
        }
        pts.sort_by(|a, b| a.0.x.total_cmp(&b.0.x));
        let mut nodes: Vec<Abscissa> = Vec::with_capacity(pts.len());
        let mut weights: Vec<f64> = Vec::with_capacity(pts.len());
        for (p, w) in pts {
            match nodes.last() {
                Some(last) if last.x == p.x => *weights.last_mut().unwrap() += w,
                _ => {
                    nodes.push(p);
                    weights.push(w);
                }
            }
        }
        NormGrid { nodes, weights }
    }

    pub fn nodes(&self) -> &[Abscissa] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(sum w |v|^p)^{1/p}` for values at the nodes.
    pub fn lp_norm(&self, values: &[f64], p: f64) -> f64 {
        self.weights
            .iter()
            .zip(values)
            .map(|(w, v)| w * v.abs().powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }
}
