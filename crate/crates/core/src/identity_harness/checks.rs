use std::collections::BTreeMap;
use std::sync::Mutex;

use num_complex::Complex64;

use super::{HarnessConfig, IdentityReport, TOLERANCES};
use crate::error::{FhtError, Result};
use crate::fht_engine::{chebyshev_points, fht_grid, integrate, pv_at, Convention};
use crate::function_rep::{Abscissa, EndpointWeightedFunction, Evaluable, IndicatorUnion};
use crate::quadrature::QuadratureConfig;

/// `x -> sum_k a_k(x) T(b_k)(x)`, the inner transforms by quadrature.
/// Inner failures are recorded and the sample becomes NaN.
struct TransformProducts<'a> {
    terms: Vec<(&'a dyn Evaluable, &'a dyn Evaluable)>,
    cfg: &'a QuadratureConfig,
    failure: Mutex<Option<FhtError>>,
}

impl<'a> TransformProducts<'a> {
    fn new(terms: Vec<(&'a dyn Evaluable, &'a dyn Evaluable)>, cfg: &'a QuadratureConfig) -> Self {
        TransformProducts {
            terms,
            cfg,
            failure: Mutex::new(None),
        }
    }

    /// The recorded inner failure, if any, in place of the outer one.
    fn explain(&self, outer: FhtError) -> FhtError {
        self.failure.lock().unwrap().take().unwrap_or(outer)
    }
}

impl Evaluable for TransformProducts<'_> {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in &self.terms {
            let av = a.eval_at(p);
            if av == Complex64::new(0.0, 0.0) {
                continue;
            }
            match pv_at(*b, p, self.cfg) {
                Ok(tb) => acc += av * tb,
                Err(e) => {
                    self.failure.lock().unwrap().get_or_insert(e);
                    return Complex64::new(f64::NAN, f64::NAN);
                }
            }
        }
        acc
    }

    // a transform is at worst as singular as its input, and never worse than
    // logarithmic where the input is bounded
    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let lower = |x: Complex64, y: Complex64| if y.re < x.re { y } else { x };
        let mut out = (zero, zero);
        for (a, b) in &self.terms {
            let (aa, ab) = a.endpoint_exponents();
            let (ba, bb) = b.endpoint_exponents();
            out.0 = lower(out.0, aa + lower(ba, zero));
            out.1 = lower(out.1, ab + lower(bb, zero));
        }
        out
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .terms
            .iter()
            .flat_map(|(a, b)| a.breakpoints().into_iter().chain(b.breakpoints()))
            .collect();
        all.sort_by(|x, y| x.total_cmp(y));
        all.dedup();
        all
    }
}

fn details(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `|int f T(g) + int g T(f)|`; the relative residual divides by the
/// larger of the two integrals, floored at 1.
pub fn check_parseval(
    name: &str,
    f: &dyn Evaluable,
    g: &dyn Evaluable,
    cfg: &HarnessConfig,
) -> Result<IdentityReport> {
    let fg = TransformProducts::new(vec![(f, g)], &cfg.inner);
    let gf = TransformProducts::new(vec![(g, f)], &cfg.inner);
    let i1 = integrate(&fg, &cfg.outer).map_err(|e| fg.explain(e))?;
    let i2 = integrate(&gf, &cfg.outer).map_err(|e| gf.explain(e))?;
    let abs = (i1.value + i2.value).norm();
    let rel = abs / i1.value.norm().max(i2.value.norm()).max(1.0);
    Ok(IdentityReport::new(
        name,
        abs,
        rel,
        i1.panels + i2.panels,
        TOLERANCES.parseval,
        false,
        details(&[
            ("int_f_Tg_re", i1.value.re),
            ("int_f_Tg_im", i1.value.im),
            ("int_g_Tf_re", i2.value.re),
            ("int_g_Tf_im", i2.value.im),
        ]),
    ))
}

/// Pointwise `|T(g T(f) + f T(g)) - (T(f) T(g) - f g)|` on an interior grid.
pub fn check_poincare_bertrand(
    name: &str,
    f: &dyn Evaluable,
    g: &dyn Evaluable,
    grid: &[f64],
    cfg: &HarnessConfig,
) -> Result<IdentityReport> {
    if let Some(&t) = grid
        .iter()
        .find(|t| t.is_nan() || t.abs() >= 1.0 - cfg.outer.edge_eps)
    {
        return Err(FhtError::OutsideInterior {
            t,
            edge: cfg.outer.edge_eps,
        });
    }
    let h = TransformProducts::new(vec![(g, f), (f, g)], &cfg.inner);
    let mut abs = 0.0f64;
    let mut rel = 0.0f64;
    for &t in grid {
        let at = Abscissa::new(t);
        let lhs = pv_at(&h, at, &cfg.nested).map_err(|e| h.explain(e))?;
        let tf = pv_at(f, at, &cfg.inner)?;
        let tg = pv_at(g, at, &cfg.inner)?;
        let rhs = tf * tg - f.eval_at(at) * g.eval_at(at);
        let r = (lhs - rhs).norm();
        abs = abs.max(r);
        rel = rel.max(r / rhs.norm().max(1.0));
    }
    Ok(IdentityReport::new(
        name,
        abs,
        rel,
        grid.len(),
        TOLERANCES.poincare_bertrand,
        false,
        BTreeMap::new(),
    ))
}

const LAENG_UNIFORM: usize = 2000;
const LAENG_GRADED: usize = 200;

/// Measure of `{x in A : |H(chi_A)(x)| > lambda}` by sign changes on a fine
/// grid refined by bisection.
pub fn level_set_measure(a: &IndicatorUnion, lambda: f64) -> f64 {
    let excess = |x: f64| a.hilbert_transform(x).abs() - lambda;
    let mut total = 0.0;
    for &(lo, hi) in a.intervals() {
        let len = hi - lo;
        // distances from lo: geometric toward both ends, uniform in between
        let mut d: Vec<f64> = (0..LAENG_GRADED)
            .map(|k| len * 1e-15_f64.powf(1.0 - k as f64 / LAENG_GRADED as f64))
            .collect();
        d.extend((1..LAENG_UNIFORM).map(|k| len * k as f64 / LAENG_UNIFORM as f64));
        d.extend(
            (0..LAENG_GRADED)
                .rev()
                .map(|k| len - len * 1e-15_f64.powf(1.0 - k as f64 / LAENG_GRADED as f64)),
        );
        d.sort_by(|x, y| x.total_cmp(y));
        d.dedup();
        // |H| -> infinity at both ends of each component
        let mut prev_x = lo;
        let mut prev_in = true;
        let mut start = lo;
        for &di in d.iter().chain(std::iter::once(&len)) {
            let x = lo + di;
            let inside = di >= len || excess(x) > 0.0;
            if inside != prev_in {
                let (mut l, mut r) = (prev_x, x);
                for _ in 0..200 {
                    let m = 0.5 * (l + r);
                    if m <= l || m >= r {
                        break;
                    }
                    if (excess(m) > 0.0) == prev_in {
                        l = m;
                    } else {
                        r = m;
                    }
                }
                let root = 0.5 * (l + r);
                if prev_in {
                    total += root - start;
                } else {
                    start = root;
                }
                prev_in = inside;
            }
            prev_x = x;
        }
        if prev_in {
            total += hi - start;
        }
    }
    total
}

/// `2 m(A) / (e^{pi lambda} + 1)`.
pub fn laeng_law(a: &IndicatorUnion, lambda: f64) -> f64 {
    2.0 * a.measure() / ((std::f64::consts::PI * lambda).exp() + 1.0)
}

pub fn check_laeng(name: &str, a: &IndicatorUnion, lambdas: &[f64]) -> Result<IdentityReport> {
    if a.measure() <= 0.0 {
        return Err(FhtError::DegenerateSet);
    }
    if let Some(l) = lambdas.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(FhtError::InvalidParameter(format!(
            "lambda = {l} must be positive"
        )));
    }
    let mut abs = 0.0f64;
    let mut rel = 0.0f64;
    for &l in lambdas {
        let exact = laeng_law(a, l);
        let r = (level_set_measure(a, l) - exact).abs();
        abs = abs.max(r);
        rel = rel.max(r / exact);
    }
    Ok(IdentityReport::new(
        name,
        abs,
        rel,
        lambdas.len(),
        TOLERANCES.laeng,
        true,
        details(&[
            ("measure", a.measure()),
            ("intervals", a.intervals().len() as f64),
        ]),
    ))
}

pub const KERNEL_POINTS: usize = 20;

/// `sup |T(C/w)|` over interior Chebyshev points.
pub fn check_kernel(name: &str, c: Complex64, cfg: &HarnessConfig) -> Result<IdentityReport> {
    let f = EndpointWeightedFunction::inv_weight().scale(c);
    let ts = chebyshev_points(KERNEL_POINTS);
    let vals = fht_grid(&f, &ts, &cfg.outer, Convention::Tricomi)?;
    let abs = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let rel = if c.norm() > 0.0 { abs / c.norm() } else { 0.0 };
    Ok(IdentityReport::new(
        name,
        abs,
        rel,
        ts.len(),
        TOLERANCES.kernel,
        false,
        details(&[("c_re", c.re), ("c_im", c.im)]),
    ))
}
