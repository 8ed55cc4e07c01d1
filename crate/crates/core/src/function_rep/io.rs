//! CSV (`x,re,im`) and JSON (`{basis, a, b, coeffs}`) interchange formats.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

use super::chebyshev::{Basis, ChebyshevSeries};
use super::sampled::SampledFunction;
use super::weighted::EndpointWeightedFunction;
use crate::error::{FhtError, Result};

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    x: f64,
    re: f64,
    im: f64,
}

pub fn write_samples_csv<W: Write>(out: W, points: &[f64], values: &[Complex64]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for (&x, z) in points.iter().zip(values) {
        w.serialize(CsvRow {
            x,
            re: z.re,
            im: z.im,
        })
        .map_err(|e| FhtError::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sampled_csv<W: Write>(out: W, f: &SampledFunction) -> Result<()> {
    write_samples_csv(out, f.points(), f.values())
}

pub fn read_sampled_csv<R: Read>(input: R) -> Result<SampledFunction> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = r
        .headers()
        .map_err(|e| FhtError::Parse(e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "re", "im"] {
        return Err(FhtError::Parse(format!(
            "expected header x,re,im, found {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut points = Vec::new();
    let mut values = Vec::new();
    for row in r.deserialize::<CsvRow>() {
        let row = row.map_err(|e| FhtError::Parse(e.to_string()))?;
        points.push(row.x);
        values.push(Complex64::new(row.re, row.im));
    }
    SampledFunction::new(points, values)
}

/// A complex exponent: written as a bare number when real.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonComplex {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            JsonComplex::Real(z.re)
        } else {
            JsonComplex::Pair([z.re, z.im])
        }
    }
}

impl From<JsonComplex> for Complex64 {
    fn from(z: JsonComplex) -> Self {
        match z {
            JsonComplex::Real(re) => Complex64::new(re, 0.0),
            JsonComplex::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SeriesJson {
    basis: Basis,
    a: JsonComplex,
    b: JsonComplex,
    coeffs: Vec<[f64; 2]>,
}

impl From<&EndpointWeightedFunction> for SeriesJson {
    fn from(f: &EndpointWeightedFunction) -> Self {
        SeriesJson {
            basis: f.smooth_part().basis(),
            a: f.a().into(),
            b: f.b().into(),
            coeffs: f
                .smooth_part()
                .coeffs()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for EndpointWeightedFunction {
    type Error = FhtError;

    fn try_from(j: SeriesJson) -> Result<Self> {
        let smooth = ChebyshevSeries::new(
            j.coeffs
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
            j.basis,
        );
        EndpointWeightedFunction::new(j.a.into(), j.b.into(), smooth)
    }
}

pub fn series_to_json(f: &EndpointWeightedFunction) -> Result<String> {
    serde_json::to_string(&SeriesJson::from(f)).map_err(|e| FhtError::Io(e.to_string()))
}

pub fn series_from_json(s: &str) -> Result<EndpointWeightedFunction> {
    let j: SeriesJson = serde_json::from_str(s).map_err(|e| FhtError::Parse(e.to_string()))?;
    j.try_into()
}
