use num_complex::Complex64;

/// A point of (-1, 1) carried together with its distances to both endpoints.
///
/// Quadrature rules that cluster nodes at +-1 produce these distances
/// directly, so endpoint-weighted functions never see the cancellation in
/// `1.0 - x` for `x` close to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    /// 1 - x
    pub to_right: f64,
    /// 1 + x
    pub to_left: f64,
}

impl Abscissa {
    pub fn new(x: f64) -> Self {
        Abscissa {
            x,
            to_right: 1.0 - x,
            to_left: 1.0 + x,
        }
    }

    /// Point at distance `d` to the left of +1.
    pub fn near_right(d: f64) -> Self {
        Abscissa {
            x: 1.0 - d,
            to_right: d,
            to_left: 2.0 - d,
        }
    }

    /// Point at distance `d` to the right of -1.
    pub fn near_left(d: f64) -> Self {
        Abscissa {
            x: -1.0 + d,
            to_right: 2.0 - d,
            to_left: d,
        }
    }

    /// Distance-preserving constructor: whichever endpoint is closer keeps
    /// the exact distance.
    pub fn from_distances(x: f64, to_right: f64, to_left: f64) -> Self {
        Abscissa {
            x,
            to_right,
            to_left,
        }
    }

    pub fn w(&self) -> f64 {
        (self.to_right * self.to_left).sqrt()
    }
}

/// Anything that can be evaluated on (-1, 1).
///
/// The endpoint exponents describe `(1-x)^a (1+x)^b` behaviour at `+1` and
/// `-1` and only steer quadrature grading; a wrong hint costs accuracy or
/// panels, never soundness. Breakpoints mark interior kinks or spikes.
pub trait Evaluable: Sync {
    fn eval_at(&self, p: Abscissa) -> Complex64;

    fn eval(&self, x: f64) -> Complex64 {
        self.eval_at(Abscissa::new(x))
    }

    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    fn holder_hint(&self) -> Option<f64> {
        None
    }
}

impl<T: Evaluable + ?Sized> Evaluable for &T {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        (**self).eval_at(p)
    }
    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        (**self).endpoint_exponents()
    }
    fn breakpoints(&self) -> Vec<f64> {
        (**self).breakpoints()
    }
    fn holder_hint(&self) -> Option<f64> {
        (**self).holder_hint()
    }
}

impl<T: Evaluable + ?Sized> Evaluable for Box<T> {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        (**self).eval_at(p)
    }
    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        (**self).endpoint_exponents()
    }
    fn breakpoints(&self) -> Vec<f64> {
        (**self).breakpoints()
    }
    fn holder_hint(&self) -> Option<f64> {
        (**self).holder_hint()
    }
}

/// Closure-backed function with optional quadrature hints.
pub struct FnEval<F> {
    f: F,
    exponents: (Complex64, Complex64),
    breakpoints: Vec<f64>,
}

impl<F> FnEval<F>
where
    F: Fn(Abscissa) -> Complex64 + Sync,
{
    pub fn new(f: F) -> Self {
        FnEval {
            f,
            exponents: (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            breakpoints: Vec::new(),
        }
    }

    pub fn with_exponents(mut self, a: f64, b: f64) -> Self {
        self.exponents = (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
        self
    }

    pub fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.breakpoints = breakpoints;
        self
    }
}

impl<F> Evaluable for FnEval<F>
where
    F: Fn(Abscissa) -> Complex64 + Sync,
{
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        (self.f)(p)
    }
    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        self.exponents
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
}

/// Real-valued closure of `x` only.
pub fn real_fn<F>(f: F) -> FnEval<impl Fn(Abscissa) -> Complex64 + Sync>
where
    F: Fn(f64) -> f64 + Sync,
{
    FnEval::new(move |p: Abscissa| Complex64::new(f(p.x), 0.0))
}

/// `inner(x) * (1-x)^gamma * (1+x)^delta`.
pub struct Reweighted<'a> {
    inner: &'a dyn Evaluable,
    gamma: f64,
    delta: f64,
}

impl<'a> Reweighted<'a> {
    pub fn new(inner: &'a dyn Evaluable, gamma: f64, delta: f64) -> Self {
        Reweighted {
            inner,
            gamma,
            delta,
        }
    }

    pub fn times_w(inner: &'a dyn Evaluable) -> Self {
        Self::new(inner, 0.5, 0.5)
    }

    pub fn over_w(inner: &'a dyn Evaluable) -> Self {
        Self::new(inner, -0.5, -0.5)
    }
}

pub(crate) fn endpoint_weight(p: Abscissa, gamma: f64, delta: f64) -> f64 {
    let mut r = 1.0;
    if gamma != 0.0 {
        r *= p.to_right.powf(gamma);
    }
    if delta != 0.0 {
        r *= p.to_left.powf(delta);
    }
    r
}

impl Evaluable for Reweighted<'_> {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        self.inner.eval_at(p) * endpoint_weight(p, self.gamma, self.delta)
    }
    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        let (a, b) = self.inner.endpoint_exponents();
        (a + self.gamma, b + self.delta)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }
    fn holder_hint(&self) -> Option<f64> {
        self.inner.holder_hint()
    }
}

/// Sum of evaluables; endpoint exponents are the componentwise most
/// singular ones.
pub struct SumFn<'a> {
    parts: Vec<&'a dyn Evaluable>,
}

impl<'a> SumFn<'a> {
    pub fn new(parts: Vec<&'a dyn Evaluable>) -> Self {
        SumFn { parts }
    }
}

pub(crate) fn most_singular(a: Complex64, b: Complex64) -> Complex64 {
    if b.re < a.re {
        b
    } else {
        a
    }
}

impl Evaluable for SumFn<'_> {
    fn eval_at(&self, p: Abscissa) -> Complex64 {
        self.parts.iter().map(|f| f.eval_at(p)).sum()
    }
    fn endpoint_exponents(&self) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut out: Option<(Complex64, Complex64)> = None;
        for f in &self.parts {
            let (a, b) = f.endpoint_exponents();
            out = Some(match out {
                None => (a, b),
                Some((oa, ob)) => (most_singular(oa, a), most_singular(ob, b)),
            });
        }
        out.unwrap_or((zero, zero))
    }
    fn breakpoints(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.parts.iter().flat_map(|f| f.breakpoints()).collect();
        all.sort_by(|a, b| a.total_cmp(b));
        all.dedup();
        all
    }
}
