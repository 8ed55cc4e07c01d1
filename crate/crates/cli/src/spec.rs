//! Textual function descriptors: `poly:[..]`, `chebT:[..]`, `chebU:[..]`,
//! `weighted:{a,b,chebT:[..]}` and `csv:<path>`.

use std::fmt;
use std::fs::File;
use std::path::PathBuf;
use std::str::FromStr;

use fht_core::airfoil::RightHandSide;
use fht_core::function_rep::{
    io::read_sampled_csv, Basis, ChebyshevSeries, EndpointWeightedFunction, Evaluable,
    SampledFunction,
};
use fht_core::{FhtError, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    /// Monomial coefficients, constant term first.
    Poly(Vec<f64>),
    Cheb(Basis, Vec<f64>),
    /// `(1-x)^a (1+x)^b` times a Chebyshev series.
    Weighted {
        a: f64,
        b: f64,
        basis: Basis,
        coeffs: Vec<f64>,
    },
    Csv(PathBuf),
}

/// A loaded function.
#[derive(Debug, Clone)]
pub enum Input {
    Series(EndpointWeightedFunction),
    Sampled(SampledFunction),
}

impl Input {
    pub fn evaluable(&self) -> &dyn Evaluable {
        match self {
            Input::Series(f) => f,
            Input::Sampled(f) => f,
        }
    }
}

impl From<Input> for RightHandSide {
    fn from(i: Input) -> Self {
        match i {
            Input::Series(f) => RightHandSide::Series(f),
            Input::Sampled(f) => RightHandSide::Sampled(f),
        }
    }
}

fn parse_error(msg: impl Into<String>) -> FhtError {
    FhtError::Parse(msg.into())
}

fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    let v: f64 = s
        .parse()
        .map_err(|_| parse_error(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(parse_error(format!("non-finite number {s:?}")));
    }
    Ok(v)
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_error(format!("expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_number).collect()
}

fn parse_basis_list(s: &str) -> Result<(Basis, Vec<f64>)> {
    let (tag, list) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| parse_error(format!("expected chebT:[..] or chebU:[..], got {s:?}")))?;
    let basis = match tag.trim() {
        "chebT" => Basis::FirstKind,
        "chebU" => Basis::SecondKind,
        other => return Err(parse_error(format!("unknown basis {other:?}"))),
    };
    Ok((basis, parse_list(list)?))
}

impl FromStr for FunctionSpec {
    type Err = FhtError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| parse_error(format!("expected kind:body, got {s:?}")))?;
        match kind.trim() {
            "poly" => Ok(FunctionSpec::Poly(parse_list(body)?)),
            "chebT" | "chebU" => {
                let (basis, coeffs) = parse_basis_list(s)?;
                Ok(FunctionSpec::Cheb(basis, coeffs))
            }
            "weighted" => {
                let inner = body
                    .trim()
                    .strip_prefix('{')
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(|| {
                        parse_error(format!("expected {{a,b,chebT:[..]}}, got {body:?}"))
                    })?;
                let mut parts = inner.splitn(3, ',');
                let mut next = || {
                    parts
                        .next()
                        .ok_or_else(|| parse_error("weighted needs a, b and a series"))
                };
                let a = parse_number(next()?)?;
                let b = parse_number(next()?)?;
                let (basis, coeffs) = parse_basis_list(next()?)?;
                Ok(FunctionSpec::Weighted {
                    a,
                    b,
                    basis,
                    coeffs,
                })
            }
            "csv" => {
                let path = body.trim();
                if path.is_empty() {
                    return Err(parse_error("csv: needs a path"));
                }
                Ok(FunctionSpec::Csv(PathBuf::from(path)))
            }
            other => Err(parse_error(format!("unknown function kind {other:?}"))),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[f64]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

fn basis_tag(b: Basis) -> &'static str {
    match b {
        Basis::FirstKind => "chebT",
        Basis::SecondKind => "chebU",
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Poly(c) => {
                f.write_str("poly:")?;
                write_list(f, c)
            }
            FunctionSpec::Cheb(basis, c) => {
                write!(f, "{}:", basis_tag(*basis))?;
                write_list(f, c)
            }
            FunctionSpec::Weighted {
                a,
                b,
                basis,
                coeffs,
            } => {
                write!(f, "weighted:{{{a},{b},{}:", basis_tag(*basis))?;
                write_list(f, coeffs)?;
                f.write_str("}")
            }
            FunctionSpec::Csv(p) => write!(f, "csv:{}", p.display()),
        }
    }
}

fn real(c: &[f64]) -> Vec<Complex64> {
    c.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

impl FunctionSpec {
    pub fn load(&self) -> Result<Input> {
        Ok(match self {
            FunctionSpec::Poly(c) => Input::Series(EndpointWeightedFunction::smooth(
                ChebyshevSeries::from_monomials(&real(c)),
            )),
            FunctionSpec::Cheb(basis, c) => Input::Series(EndpointWeightedFunction::smooth(
                ChebyshevSeries::from_real(c, *basis),
            )),
            FunctionSpec::Weighted {
                a,
                b,
                basis,
                coeffs,
            } => Input::Series(EndpointWeightedFunction::real(
                *a,
                *b,
                ChebyshevSeries::from_real(coeffs, *basis),
            )?),
            FunctionSpec::Csv(path) => Input::Sampled(read_sampled_csv(File::open(path)?)?),
        })
    }

    /// The descriptor of a series with real exponents and coefficients.
    pub fn from_series(f: &EndpointWeightedFunction) -> Option<FunctionSpec> {
        if f.a().im != 0.0 || f.b().im != 0.0 {
            return None;
        }
        let s = f.smooth_part();
        if s.coeffs().iter().any(|c| c.im != 0.0) {
            return None;
        }
        let coeffs: Vec<f64> = s.coeffs().iter().map(|c| c.re).collect();
        let (a, b) = (f.a().re, f.b().re);
        Some(if a == 0.0 && b == 0.0 {
            FunctionSpec::Cheb(s.basis(), coeffs)
        } else {
            FunctionSpec::Weighted {
                a,
                b,
                basis: s.basis(),
                coeffs,
            }
        })
    }
}
