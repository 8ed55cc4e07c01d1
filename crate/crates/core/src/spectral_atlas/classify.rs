use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use super::eigen::in_eigenvalue_set;
use super::region::{is_endpoint, moebius_arg, Membership, SpectralRegion, REGION_TOL};
use crate::error::{FhtError, Result};

/// Identity of a rearrangement-invariant space on (-1, 1), reduced to the
/// parameters that decide the fine spectrum of `T`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceDescriptor {
    Lebesgue {
        p: f64,
    },
    /// `r` may be `f64::INFINITY`.
    Lorentz {
        p: f64,
        r: f64,
    },
    /// `q_x <= p_x`; both indices in (1, inf).
    Indexed {
        p_x: f64,
        q_x: f64,
        p_attained: bool,
        q_attained: bool,
    },
    /// `L^p` or `L^{p,r}` by name.
    Catalog(String),
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Lebesgue { p } => write!(f, "lebesgue:{p}"),
            SpaceDescriptor::Lorentz { p, r } if r.is_infinite() => write!(f, "lorentz:{p},inf"),
            SpaceDescriptor::Lorentz { p, r } => write!(f, "lorentz:{p},{r}"),
            SpaceDescriptor::Indexed {
                p_x,
                q_x,
                p_attained,
                q_attained,
            } => write!(f, "indexed:{p_x},{q_x},{p_attained},{q_attained}"),
            SpaceDescriptor::Catalog(name) => write!(f, "catalog:{name}"),
        }
    }
}

fn parse_flag(s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        other => Err(FhtError::InvalidDescriptor(format!(
            "not a flag: {other:?}"
        ))),
    }
}

/// Inverse of `Display`; a bare `L^...` name is read as a catalog entry.
/// Unknown families are unsupported rather than malformed.
impl std::str::FromStr for SpaceDescriptor {
    type Err = FhtError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("L^") {
            return Ok(SpaceDescriptor::Catalog(s.to_string()));
        }
        let (family, body) = s.split_once(':').ok_or_else(|| {
            FhtError::InvalidDescriptor(format!("expected family:params, got {s:?}"))
        })?;
        let parts: Vec<&str> = body.split(',').collect();
        let arity = |n: usize| {
            if parts.len() == n {
                Ok(())
            } else {
                Err(FhtError::InvalidDescriptor(format!(
                    "{family} takes {n} parameters, got {}",
                    parts.len()
                )))
            }
        };
        match family.trim() {
            "lebesgue" => {
                arity(1)?;
                Ok(SpaceDescriptor::Lebesgue {
                    p: parse_exponent(parts[0])?,
                })
            }
            "lorentz" => {
                arity(2)?;
                Ok(SpaceDescriptor::Lorentz {
                    p: parse_exponent(parts[0])?,
                    r: parse_exponent(parts[1])?,
                })
            }
            "indexed" => {
                arity(4)?;
                Ok(SpaceDescriptor::Indexed {
                    p_x: parse_exponent(parts[0])?,
                    q_x: parse_exponent(parts[1])?,
                    p_attained: parse_flag(parts[2])?,
                    q_attained: parse_flag(parts[3])?,
                })
            }
            "catalog" => Ok(SpaceDescriptor::Catalog(body.trim().to_string())),
            other => Err(FhtError::UnsupportedDescriptor(format!(
                "unknown space family {other:?}"
            ))),
        }
    }
}

fn check_exponent(name: &str, p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(FhtError::InvalidDescriptor(format!(
            "{name} must lie in (1, inf), got {p}"
        )))
    }
}

fn parse_exponent(s: &str) -> Result<f64> {
    let s = s.trim();
    if matches!(s, "inf" | "infinity" | "∞") {
        return Ok(f64::INFINITY);
    }
    s.parse::<f64>()
        .map_err(|_| FhtError::InvalidDescriptor(format!("not a number: {s:?}")))
}

impl SpaceDescriptor {
    /// Resolves catalog names (`L^p`, `L^{p,r}`) to their parametric form.
    pub fn resolve(&self) -> Result<SpaceDescriptor> {
        let SpaceDescriptor::Catalog(name) = self else {
            return Ok(self.clone());
        };
        let unsupported = || FhtError::UnsupportedDescriptor(format!("no catalog entry {name:?}"));
        let body = name.trim().strip_prefix("L^").ok_or_else(unsupported)?;
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        let parts: Vec<&str> = body.split(',').collect();
        match parts.as_slice() {
            [p] => Ok(SpaceDescriptor::Lebesgue {
                p: parse_exponent(p).map_err(|_| unsupported())?,
            }),
            [p, r] => Ok(SpaceDescriptor::Lorentz {
                p: parse_exponent(p).map_err(|_| unsupported())?,
                r: parse_exponent(r).map_err(|_| unsupported())?,
            }),
            _ => Err(unsupported()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.resolve()? {
            SpaceDescriptor::Lebesgue { p } => check_exponent("p", p),
            SpaceDescriptor::Lorentz { p, r } => {
                check_exponent("p", p)?;
                if r >= 1.0 {
                    Ok(())
                } else {
                    Err(FhtError::InvalidDescriptor(format!(
                        "r must lie in [1, inf], got {r}"
                    )))
                }
            }
            SpaceDescriptor::Indexed {
                p_x,
                q_x,
                p_attained,
                q_attained,
            } => {
                check_exponent("p_X", p_x)?;
                check_exponent("q_X", q_x)?;
                if q_x > p_x {
                    return Err(FhtError::InvalidDescriptor(format!(
                        "q_X = {q_x} exceeds p_X = {p_x}"
                    )));
                }
                if p_x == q_x && p_attained && q_attained {
                    return Err(FhtError::InvalidDescriptor(
                        "p_X = q_X cannot have both indices attained".into(),
                    ));
                }
                Ok(())
            }
            SpaceDescriptor::Catalog(_) => unreachable!("resolved above"),
        }
    }

    /// `(p_X, attained, q_X, attained)` where the indices are known.
    pub fn indices(&self) -> Result<Option<Indices>> {
        self.validate()?;
        Ok(match self.resolve()? {
            SpaceDescriptor::Lebesgue { p } => Some(lorentz_indices(p, p)),
            SpaceDescriptor::Lorentz { p, r } => Some(lorentz_indices(p, r)),
            SpaceDescriptor::Indexed {
                p_x,
                q_x,
                p_attained,
                q_attained,
            } => Some(Indices {
                p_x,
                p_attained,
                q_x,
                q_attained,
            }),
            SpaceDescriptor::Catalog(_) => None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Indices {
    pub p_x: f64,
    pub p_attained: bool,
    pub q_x: f64,
    pub q_attained: bool,
}

/// Indices of `L^{p,r}`: both equal `p`; `p_X` is attained only for
/// `r = inf` and `q_X` only for `r = 1`.
pub fn lorentz_indices(p: f64, r: f64) -> Indices {
    Indices {
        p_x: p,
        p_attained: r.is_infinite(),
        q_x: p,
        q_attained: r == 1.0,
    }
}

/// Symbolic subsets of the plane making up a fine spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "set", rename_all = "snake_case")]
pub enum SpectralSet {
    Empty,
    Interior {
        p: f64,
    },
    RegionMinusEndpoints {
        p: f64,
    },
    Boundary {
        p: f64,
    },
    EndpointsOnly,
    OpenUnitInterval,
    ClosedUnitInterval,
    /// Whatever of the spectrum is not point or residual spectrum.
    Remainder,
}

fn on_real_axis(lambda: Complex64) -> bool {
    lambda.im.abs() <= REGION_TOL
}

impl SpectralSet {
    /// Membership; `None` for [`SpectralSet::Remainder`], which is only
    /// defined relative to the other parts.
    pub fn contains(&self, lambda: Complex64) -> Option<bool> {
        let region = |p: f64| {
            SpectralRegion::new(p)
                .map(|r| r.contains(lambda))
                .unwrap_or(Membership::Outside)
        };
        Some(match *self {
            SpectralSet::Empty => false,
            SpectralSet::Interior { p } => region(p) == Membership::Interior,
            SpectralSet::RegionMinusEndpoints { p } => {
                region(p) != Membership::Outside && !is_endpoint(lambda)
            }
            SpectralSet::Boundary { p } => region(p) == Membership::Boundary,
            SpectralSet::EndpointsOnly => is_endpoint(lambda),
            SpectralSet::OpenUnitInterval => {
                on_real_axis(lambda) && lambda.re.abs() < 1.0 && !is_endpoint(lambda)
            }
            SpectralSet::ClosedUnitInterval => {
                on_real_axis(lambda) && lambda.re.abs() <= 1.0 + REGION_TOL
            }
            SpectralSet::Remainder => return None,
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SpectralSet::Empty)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FineSpectrum {
    /// `R_p` when the whole spectrum is known, `None` otherwise.
    pub sigma: Option<SpectralRegion>,
    pub point: SpectralSet,
    pub residual: SpectralSet,
    pub continuous: SpectralSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    Resolvent,
    Point,
    Residual,
    Continuous,
}

fn fine(
    p: f64,
    point: SpectralSet,
    residual: SpectralSet,
    continuous: SpectralSet,
) -> Result<FineSpectrum> {
    Ok(FineSpectrum {
        sigma: Some(SpectralRegion::new(p)?),
        point,
        residual,
        continuous,
    })
}

fn widom_rows(p: f64) -> Result<FineSpectrum> {
    use SpectralSet::*;
    if p < 2.0 {
        fine(p, Interior { p }, Empty, Boundary { p })
    } else if p > 2.0 {
        fine(p, Empty, Interior { p }, Boundary { p })
    } else {
        fine(p, Empty, Empty, ClosedUnitInterval)
    }
}

fn lorentz_rows(p: f64, r: f64) -> Result<FineSpectrum> {
    use SpectralSet::*;
    if r.is_infinite() {
        return Err(FhtError::UnsupportedDescriptor(format!(
            "L^{{{p},inf}} is not separable; no table row applies"
        )));
    }
    if p < 2.0 {
        fine(p, Interior { p }, Empty, Boundary { p })
    } else if p > 2.0 {
        if r == 1.0 {
            fine(p, Empty, RegionMinusEndpoints { p }, EndpointsOnly)
        } else {
            fine(p, Empty, Interior { p }, Boundary { p })
        }
    } else if r == 1.0 {
        fine(p, Empty, OpenUnitInterval, EndpointsOnly)
    } else {
        fine(p, Empty, Empty, ClosedUnitInterval)
    }
}

/// Equal indices `p_X = q_X = s`: the spectrum is exactly `R_s`.
fn equal_index_rows(s: f64, p_attained: bool, q_attained: bool) -> Result<FineSpectrum> {
    use SpectralSet::*;
    if s < 2.0 {
        if p_attained {
            fine(s, RegionMinusEndpoints { p: s }, Empty, EndpointsOnly)
        } else {
            fine(s, Interior { p: s }, Empty, Boundary { p: s })
        }
    } else if s > 2.0 {
        if q_attained {
            fine(s, Empty, RegionMinusEndpoints { p: s }, EndpointsOnly)
        } else {
            fine(s, Empty, Interior { p: s }, Boundary { p: s })
        }
    } else if p_attained {
        fine(s, OpenUnitInterval, Empty, EndpointsOnly)
    } else if q_attained {
        fine(s, Empty, OpenUnitInterval, EndpointsOnly)
    } else {
        fine(s, Empty, Empty, ClosedUnitInterval)
    }
}

/// Distinct indices `q_X < p_X`: only point and residual parts are known.
fn distinct_index_rows(ix: Indices) -> Result<FineSpectrum> {
    use SpectralSet::*;
    let Indices {
        p_x,
        p_attained,
        q_x,
        q_attained,
    } = ix;
    let partial = |point, residual| FineSpectrum {
        sigma: None,
        point,
        residual,
        continuous: Remainder,
    };
    if p_x < 2.0 && !p_attained {
        return Ok(partial(Interior { p: p_x }, Empty));
    }
    if p_x <= 2.0 && p_attained {
        return Ok(partial(RegionMinusEndpoints { p: p_x }, Empty));
    }
    if q_x > 2.0 && !q_attained {
        return Ok(partial(Empty, Interior { p: q_x }));
    }
    if q_x >= 2.0 && q_attained {
        return Ok(partial(Empty, RegionMinusEndpoints { p: q_x }));
    }
    let p_ok = p_x > 2.0 || (p_x == 2.0 && !p_attained);
    let q_ok = q_x < 2.0 || (q_x == 2.0 && !q_attained);
    if p_ok && q_ok {
        return Ok(partial(Empty, Empty));
    }
    Err(FhtError::UnsupportedDescriptor(format!(
        "no result covers p_X = {p_x} ({}), q_X = {q_x} ({})",
        if p_attained {
            "attained"
        } else {
            "not attained"
        },
        if q_attained {
            "attained"
        } else {
            "not attained"
        },
    )))
}

pub fn classify_space(desc: &SpaceDescriptor) -> Result<FineSpectrum> {
    desc.validate()?;
    match desc.resolve()? {
        SpaceDescriptor::Lebesgue { p } => widom_rows(p),
        SpaceDescriptor::Lorentz { p, r } => lorentz_rows(p, r),
        SpaceDescriptor::Indexed {
            p_x,
            q_x,
            p_attained,
            q_attained,
        } => {
            if p_x == q_x {
                equal_index_rows(p_x, p_attained, q_attained)
            } else {
                distinct_index_rows(Indices {
                    p_x,
                    p_attained,
                    q_x,
                    q_attained,
                })
            }
        }
        SpaceDescriptor::Catalog(_) => unreachable!("resolved by validate"),
    }
}

/// Whether the eigenfunction `xi_lambda` lies in a space with the given
/// `p_X`: `p_X <= gamma_lambda` when attained, `p_X < gamma_lambda` otherwise.
/// Compared as `1/gamma` against `1/p_X` with the region tolerance.
pub fn xi_in_space(lambda: Complex64, p_x: f64, p_attained: bool) -> bool {
    if !in_eigenvalue_set(lambda) {
        return false;
    }
    let inv_gamma = 0.5 + moebius_arg(lambda).abs() / (2.0 * PI);
    let inv_p = 1.0 / p_x;
    if p_attained {
        inv_gamma <= inv_p + REGION_TOL
    } else {
        inv_gamma < inv_p - REGION_TOL
    }
}

/// Places `lambda` in the resolvent set or one part of the spectrum, and
/// cross-checks the point-spectrum verdict against eigenfunction membership.
pub fn classify_point(desc: &SpaceDescriptor, lambda: Complex64) -> Result<PointClass> {
    let fs = classify_space(desc)?;
    let class = locate(&fs, lambda)?;
    if let Some(ix) = desc.indices()? {
        let claimed = class == PointClass::Point;
        if claimed != xi_in_space(lambda, ix.p_x, ix.p_attained) {
            return Err(FhtError::Inconsistent { lambda });
        }
    }
    Ok(class)
}

fn locate(fs: &FineSpectrum, lambda: Complex64) -> Result<PointClass> {
    if fs.point.contains(lambda) == Some(true) {
        return Ok(PointClass::Point);
    }
    if fs.residual.contains(lambda) == Some(true) {
        return Ok(PointClass::Residual);
    }
    match fs.continuous.contains(lambda) {
        Some(true) => return Ok(PointClass::Continuous),
        Some(false) => return Ok(PointClass::Resolvent),
        None => {}
    }
    match fs.sigma {
        Some(sigma) if sigma.contains(lambda) == Membership::Outside => Ok(PointClass::Resolvent),
        Some(_) => Ok(PointClass::Continuous),
        None if on_real_axis(lambda) && lambda.re.abs() <= 1.0 + REGION_TOL => {
            Ok(PointClass::Continuous)
        }
        None => Err(FhtError::Undetermined(format!(
            "spectrum not fully known; cannot place lambda = {lambda}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionReport {
    pub samples: usize,
    /// Sample points lying in no part or in more than one part.
    pub violations: Vec<Complex64>,
}

impl PartitionReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples `count` points of the spectrum (of `[-1, 1]` when the spectrum
/// is only partly known) and checks that each lies in exactly one part.
/// Points just outside the spectrum must lie in none.
pub fn check_partition(fs: &FineSpectrum, count: usize) -> PartitionReport {
    let inside: Vec<Complex64> = match fs.sigma {
        Some(sigma) => sigma.sample(count),
        None => (0..count)
            .map(|k| Complex64::new(-1.0 + 2.0 * k as f64 / (count.max(2) - 1) as f64, 0.0))
            .collect(),
    };
    let parts = [fs.point, fs.residual, fs.continuous];
    let hits = |lambda: Complex64| -> usize {
        let known: Vec<Option<bool>> = parts.iter().map(|s| s.contains(lambda)).collect();
        let explicit = known.iter().filter(|m| **m == Some(true)).count();
        let remainder = known.iter().any(|m| m.is_none());
        explicit + usize::from(remainder && explicit == 0)
    };
    let mut violations: Vec<Complex64> = inside.iter().copied().filter(|&l| hits(l) != 1).collect();
    if let Some(sigma) = fs.sigma {
        let above = sigma.apex() * 2.0 + Complex64::new(0.0, 0.1);
        let probes = [
            Complex64::new(1.5, 0.0),
            Complex64::new(-1.5, 0.0),
            above,
            above.conj(),
        ];
        for lambda in probes {
            if sigma.contains(lambda) == Membership::Outside
                && parts.iter().any(|s| s.contains(lambda) == Some(true))
            {
                violations.push(lambda);
            }
        }
    }
    PartitionReport {
        samples: inside.len(),
        violations,
    }
}

/// Region boundary as a polyline: upper arc then lower arc, `points` each.
pub fn boundary_polyline(p: f64, points: usize) -> Result<Vec<(usize, Complex64)>> {
    let [upper, lower] = SpectralRegion::new(p)?.boundary_arcs(points);
    Ok(upper
        .into_iter()
        .map(|z| (0, z))
        .chain(lower.into_iter().map(|z| (1, z)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SpectralSet::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn parts(fs: &FineSpectrum) -> (SpectralSet, SpectralSet, SpectralSet) {
        (fs.point, fs.residual, fs.continuous)
    }

    fn indexed(p_x: f64, q_x: f64, p_attained: bool, q_attained: bool) -> SpaceDescriptor {
        SpaceDescriptor::Indexed {
            p_x,
            q_x,
            p_attained,
            q_attained,
        }
    }

    fn catalog() -> Vec<SpaceDescriptor> {
        let mut out = Vec::new();
        for p in [1.2, 1.5, 2.0, 3.0, 5.0] {
            out.push(SpaceDescriptor::Lebesgue { p });
            for r in [1.0, 1.7, 4.0] {
                out.push(SpaceDescriptor::Lorentz { p, r });
            }
        }
        out
    }

    #[test]
    fn spec_examples() {
        let fs = classify_space(&SpaceDescriptor::Lorentz { p: 1.5, r: 3.0 }).unwrap();
        assert_eq!(
            parts(&fs),
            (Interior { p: 1.5 }, Empty, Boundary { p: 1.5 })
        );
        let fs = classify_space(&SpaceDescriptor::Lorentz { p: 2.0, r: 1.0 }).unwrap();
        assert_eq!(parts(&fs), (Empty, OpenUnitInterval, EndpointsOnly));
        let fs = classify_space(&SpaceDescriptor::Lebesgue { p: 2.0 }).unwrap();
        assert_eq!(parts(&fs), (Empty, Empty, ClosedUnitInterval));
    }

    #[test]
    fn point_examples() {
        let zero = c(0.0, 0.0);
        assert_eq!(
            classify_point(&SpaceDescriptor::Lebesgue { p: 1.5 }, zero).unwrap(),
            PointClass::Point
        );
        assert_eq!(
            classify_point(&SpaceDescriptor::Lebesgue { p: 3.0 }, zero).unwrap(),
            PointClass::Residual
        );
        assert_eq!(
            classify_point(&SpaceDescriptor::Lebesgue { p: 2.0 }, c(2.0, 0.0)).unwrap(),
            PointClass::Resolvent
        );
        assert_eq!(
            classify_point(&SpaceDescriptor::Lebesgue { p: 2.0 }, c(0.3, 0.0)).unwrap(),
            PointClass::Continuous
        );
    }

    #[test]
    fn lorentz_index_examples() {
        let ix = lorentz_indices(2.0, f64::INFINITY);
        assert!(ix.p_x == 2.0 && ix.p_attained);
        let ix = lorentz_indices(2.0, 2.0);
        assert!(!ix.p_attained && !ix.q_attained);
        let ix = lorentz_indices(3.0, 1.0);
        assert!(ix.q_x == 3.0 && ix.q_attained);
    }

    #[test]
    fn lorentz_rows_agree_with_index_rows() {
        for d in catalog() {
            let SpaceDescriptor::Lorentz { p, r } = d else {
                continue;
            };
            let ix = lorentz_indices(p, r);
            let via_indices =
                classify_space(&indexed(ix.p_x, ix.q_x, ix.p_attained, ix.q_attained)).unwrap();
            assert_eq!(classify_space(&d).unwrap(), via_indices, "{d}");
        }
    }

    #[test]
    fn diagonal_lorentz_is_lebesgue() {
        for p in [1.3, 2.0, 2.5] {
            assert_eq!(
                classify_space(&SpaceDescriptor::Lorentz { p, r: p }).unwrap(),
                classify_space(&SpaceDescriptor::Lebesgue { p }).unwrap()
            );
        }
    }

    #[test]
    fn rejections() {
        let weak = SpaceDescriptor::Lorentz {
            p: 1.5,
            r: f64::INFINITY,
        };
        assert!(matches!(
            classify_space(&weak),
            Err(FhtError::UnsupportedDescriptor(_))
        ));
        assert!(matches!(
            classify_space(&indexed(2.0, 2.0, true, true)),
            Err(FhtError::InvalidDescriptor(_))
        ));
        assert!(matches!(
            classify_space(&indexed(2.0, 3.0, false, false)),
            Err(FhtError::InvalidDescriptor(_))
        ));
        assert!(matches!(
            classify_space(&SpaceDescriptor::Lebesgue { p: 1.0 }),
            Err(FhtError::InvalidDescriptor(_))
        ));
        assert!(matches!(
            classify_space(&SpaceDescriptor::Catalog("Orlicz".into())),
            Err(FhtError::UnsupportedDescriptor(_))
        ));
    }

    #[test]
    fn catalog_names() {
        let fs = classify_space(&SpaceDescriptor::Catalog("L^{2,1}".into())).unwrap();
        assert_eq!(parts(&fs), (Empty, OpenUnitInterval, EndpointsOnly));
        let fs = classify_space(&SpaceDescriptor::Catalog("L^3".into())).unwrap();
        assert_eq!(
            parts(&fs),
            (Empty, Interior { p: 3.0 }, Boundary { p: 3.0 })
        );
    }

    #[test]
    fn distinct_indices() {
        let fs = classify_space(&indexed(1.8, 1.4, false, true)).unwrap();
        assert_eq!(parts(&fs), (Interior { p: 1.8 }, Empty, Remainder));
        assert_eq!(fs.sigma, None);
        let fs = classify_space(&indexed(2.0, 1.4, true, false)).unwrap();
        assert_eq!(
            parts(&fs),
            (RegionMinusEndpoints { p: 2.0 }, Empty, Remainder)
        );
        let fs = classify_space(&indexed(4.0, 3.0, false, false)).unwrap();
        assert_eq!(parts(&fs), (Empty, Interior { p: 3.0 }, Remainder));
        let fs = classify_space(&indexed(4.0, 2.0, true, true)).unwrap();
        assert_eq!(
            parts(&fs),
            (Empty, RegionMinusEndpoints { p: 2.0 }, Remainder)
        );
        let fs = classify_space(&indexed(3.0, 1.5, true, true)).unwrap();
        assert_eq!(parts(&fs), (Empty, Empty, Remainder));

        let d = indexed(3.0, 1.5, false, false);
        assert_eq!(
            classify_point(&d, c(0.2, 0.0)).unwrap(),
            PointClass::Continuous
        );
        assert!(matches!(
            classify_point(&d, c(0.2, 0.3)),
            Err(FhtError::Undetermined(_))
        ));
    }

    #[test]
    fn partition_holds_for_all_rows() {
        let mut descs = catalog();
        for (s, pa, qa) in [
            (1.5, false, false),
            (1.5, true, false),
            (3.0, false, false),
            (3.0, false, true),
            (2.0, true, false),
            (2.0, false, true),
            (2.0, false, false),
        ] {
            descs.push(indexed(s, s, pa, qa));
        }
        descs.push(indexed(3.0, 1.5, false, false));
        for d in descs {
            let fs = classify_space(&d).unwrap();
            let report = check_partition(&fs, 200);
            assert_eq!(report.samples, 200);
            assert!(report.pass(), "{d}: {:?}", report.violations);
        }
    }

    #[test]
    fn trichotomy() {
        for d in catalog() {
            let fs = classify_space(&d).unwrap();
            assert!(fs.point.is_empty() || fs.residual.is_empty(), "{d}");
        }
    }

    #[test]
    fn unit_interval_always_in_spectrum() {
        for p in [1.1, 1.5, 2.0, 3.0, 9.0] {
            let r = SpectralRegion::new(p).unwrap();
            for k in 0..=200 {
                let x = -1.0 + 1e-9 + (2.0 - 2e-9) * k as f64 / 200.0;
                assert_ne!(r.contains(c(x, 0.0)), Membership::Outside);
            }
        }
    }

    #[test]
    fn boundary_polyline_has_both_arcs() {
        let poly = boundary_polyline(3.0, 400).unwrap();
        assert_eq!(poly.len(), 800);
        assert_eq!(poly.iter().filter(|(arc, _)| *arc == 1).count(), 400);
    }

    fn lambda_strategy() -> impl Strategy<Value = Complex64> {
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| c(re, im))
    }

    proptest! {
        #[test]
        fn reflection_symmetry(lambda in lambda_strategy()) {
            for d in catalog() {
                let base = classify_point(&d, lambda).unwrap();
                prop_assert_eq!(base, classify_point(&d, -lambda).unwrap());
                prop_assert_eq!(base, classify_point(&d, lambda.conj()).unwrap());
            }
        }

        #[test]
        fn point_spectrum_is_real_balanced(lambda in lambda_strategy(), alpha in 0.0f64..=1.0) {
            for d in catalog() {
                if classify_point(&d, lambda).unwrap() == PointClass::Point {
                    prop_assert_eq!(classify_point(&d, lambda * alpha).unwrap(), PointClass::Point);
                }
            }
        }

        #[test]
        fn conjugate_regions_agree(p in 1.01f64..20.0, lambda in lambda_strategy()) {
            let q = p / (p - 1.0);
            let a = region_contains_for_test(p, lambda);
            let b = region_contains_for_test(q, lambda);
            // only points within rounding of the boundary may differ
            if a != b {
                prop_assert!(a == Membership::Boundary || b == Membership::Boundary);
            }
        }

        #[test]
        fn eigenfunction_membership_matches_table(lambda in lambda_strategy(), p in 1.05f64..1.95, r in 1.0f64..6.0) {
            prop_assume!(in_eigenvalue_set(lambda));
            let inv_gamma = 0.5 + moebius_arg(lambda).abs() / (2.0 * PI);
            prop_assume!((inv_gamma - 1.0 / p).abs() > 1e-9);
            let d = SpaceDescriptor::Lorentz { p, r };
            let is_point = classify_point(&d, lambda).unwrap() == PointClass::Point;
            prop_assert_eq!(is_point, 1.0 / inv_gamma > p);
        }
    }

    fn region_contains_for_test(p: f64, lambda: Complex64) -> Membership {
        SpectralRegion::new(p).unwrap().contains(lambda)
    }
    #[test]
    fn descriptor_text_round_trip() {
        for d in [
            SpaceDescriptor::Lebesgue { p: 1.5 },
            SpaceDescriptor::Lorentz { p: 2.0, r: 1.0 },
            SpaceDescriptor::Lorentz {
                p: 3.0,
                r: f64::INFINITY,
            },
            SpaceDescriptor::Indexed {
                p_x: 3.0,
                q_x: 1.5,
                p_attained: true,
                q_attained: false,
            },
            SpaceDescriptor::Catalog("L^{2,1}".into()),
        ] {
            assert_eq!(d.to_string().parse::<SpaceDescriptor>().unwrap(), d);
        }
        assert_eq!(
            "L^3".parse::<SpaceDescriptor>().unwrap(),
            SpaceDescriptor::Catalog("L^3".into())
        );
        assert!(matches!(
            "orlicz:2".parse::<SpaceDescriptor>(),
            Err(FhtError::UnsupportedDescriptor(_))
        ));
        assert!(matches!(
            "lebesgue:x".parse::<SpaceDescriptor>(),
            Err(FhtError::InvalidDescriptor(_))
        ));
        assert!(matches!(
            "lorentz:2".parse::<SpaceDescriptor>(),
            Err(FhtError::InvalidDescriptor(_))
        ));
    }
}
