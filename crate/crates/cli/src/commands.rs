use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use fht_core::airfoil::{AirfoilSolver, RightHandSide, RoundTripReport};
use fht_core::fht_engine::{chebyshev_points, fht_grid, fht_spectral, Convention};
use fht_core::function_rep::io::{write_samples_csv, SeriesJson};
use fht_core::function_rep::{
    lorentz_norm, lp_norm, refined_norm, zygmund_norm, Evaluable, LorentzQ, NormValue,
};
use fht_core::identity_harness::{run_suite, HarnessConfig, IdentityReport, Suite};
use fht_core::spectral_atlas::{
    boundary_polyline, classify_point, classify_space, eigen_residual, gamma_of_lambda,
    FineSpectrum, PointClass, SpaceDescriptor,
};
use fht_core::FhtError;
use num_complex::Complex64;
use serde::Serialize;

use crate::args::{
    ClassifyArgs, Cli, Command, EigencheckArgs, IdentitiesArgs, InvertArgs, Method, NormKind,
    NormsArgs, TransformArgs,
};
use crate::config::{ConventionArg, Format, RunConfig};
use crate::error::{CliError, CliResult, Stage, EXIT_FAILED_CHECK, EXIT_INPUT};
use crate::output::{emit, to_json, write_atomic};
use crate::spec::{FunctionSpec, Input};

/// Points on each arc of an emitted region boundary.
pub const BOUNDARY_POINTS: usize = 400;

pub fn dispatch(cli: Cli) -> CliResult<i32> {
    let cfg = RunConfig::load(cli.global.config.as_deref(), &cli.overrides())?;
    let out = cli.global.out.as_deref();
    match &cli.command {
        Command::Transform(a) => transform(a, &cfg, out),
        Command::Invert(a) => invert(a, &cfg, out),
        Command::Classify(a) => classify(a, out),
        Command::Eigencheck(a) => eigencheck(a, &cfg, out),
        Command::Identities(a) => identities(a, &cfg, out),
        Command::Norms(a) => norms(a, &cfg, out),
    }
}

fn load_spec(text: &str) -> CliResult<(FunctionSpec, Input)> {
    let spec: FunctionSpec = text.parse().stage("parse")?;
    let input = spec.load().stage("input")?;
    Ok((spec, input))
}

#[derive(Debug, Serialize)]
struct Row {
    t: f64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct TransformOutput {
    function: String,
    convention: ConventionArg,
    method: &'static str,
    values: Vec<Row>,
}

fn check_points(ts: &[f64], edge: f64) -> CliResult<()> {
    for &t in ts {
        if t.is_nan() || t.abs() >= 1.0 - edge {
            return Err(CliError::from_core(
                "input",
                FhtError::OutsideInterior { t, edge },
            ));
        }
    }
    Ok(())
}

fn transform(a: &TransformArgs, cfg: &RunConfig, out: Option<&Path>) -> CliResult<i32> {
    let (spec, input) = load_spec(&a.f)?;
    let ts = match &a.points {
        Some(p) if p.is_empty() => {
            return Err(CliError::new("input", EXIT_INPUT, "no evaluation points"))
        }
        Some(p) => p.clone(),
        None => chebyshev_points(cfg.grid),
    };
    check_points(&ts, cfg.edge_eps)?;
    let conv: Convention = cfg.convention.into();
    let values = match a.method {
        Method::Quadrature => {
            fht_grid(input.evaluable(), &ts, &cfg.quadrature(), conv).stage("quadrature")?
        }
        Method::Spectral => {
            let Input::Series(f) = &input else {
                return Err(CliError::new(
                    "input",
                    EXIT_INPUT,
                    "the spectral method needs a series, not sampled data",
                ));
            };
            let tf = fht_spectral(f).stage("spectral")?;
            ts.iter().map(|&t| conv.apply(tf.eval(t))).collect()
        }
    };
    let body = match cfg.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_samples_csv(&mut buf, &ts, &values).stage("output")?;
            String::from_utf8(buf).expect("csv output is ASCII")
        }
        Format::Json => to_json(&TransformOutput {
            function: spec.to_string(),
            convention: cfg.convention,
            method: match a.method {
                Method::Quadrature => "quadrature",
                Method::Spectral => "spectral",
            },
            values: ts
                .iter()
                .zip(&values)
                .map(|(&t, z)| Row {
                    t,
                    re: z.re,
                    im: z.im,
                })
                .collect(),
        })?,
    };
    emit(out, &body)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct InvertOutput {
    rhs: String,
    regime: &'static str,
    /// `None` when the solution has complex data and no textual form.
    solution: Option<String>,
    series: SeriesJson,
    homogeneous_coefficient: Option<Complex64>,
    roundtrip: RoundTripReport,
}

fn invert(a: &InvertArgs, cfg: &RunConfig, out: Option<&Path>) -> CliResult<i32> {
    let (spec, input) = load_spec(&a.g)?;
    let solver = AirfoilSolver {
        quadrature: cfg.quadrature(),
        interpolation_degree: cfg.interpolation_degree,
        test_points: cfg.grid,
        ..AirfoilSolver::default()
    };
    let g: RightHandSide = input.into();
    let regime = a.regime.into();
    let sol = solver.solve(&g, regime, a.constant).stage("solve")?;
    let roundtrip = solver
        .verify_roundtrip(&g, regime, a.constant)
        .stage("roundtrip")?;
    let f = sol.solution();
    let body = to_json(&InvertOutput {
        rhs: spec.to_string(),
        regime: match a.regime {
            crate::args::RegimeArg::Low => "low",
            crate::args::RegimeArg::High => "high",
        },
        solution: FunctionSpec::from_series(&f).map(|s| s.to_string()),
        series: SeriesJson::from(&f),
        homogeneous_coefficient: sol.homogeneous_coefficient,
        roundtrip,
    })?;
    emit(out, &body)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct SpectrumOutput {
    space: String,
    convention: ConventionArg,
    spectrum: FineSpectrum,
}

#[derive(Debug, Serialize)]
struct PointOutput {
    space: String,
    convention: ConventionArg,
    lambda: Complex64,
    class: PointClass,
}

fn boundary_csv(p: f64) -> CliResult<String> {
    let mut s = String::from("arc,re,im\n");
    for (arc, z) in boundary_polyline(p, BOUNDARY_POINTS).stage("boundary")? {
        s.push_str(&format!("{arc},{},{}\n", z.re, z.im));
    }
    Ok(s)
}

/// Always in the widom convention.
fn classify(a: &ClassifyArgs, out: Option<&Path>) -> CliResult<i32> {
    let space: SpaceDescriptor = a.space.parse().stage("parse")?;
    let fs = classify_space(&space).stage("classify")?;
    let body = match a.lambda {
        Some(lambda) => to_json(&PointOutput {
            space: a.space.trim().to_string(),
            convention: ConventionArg::Widom,
            lambda,
            class: classify_point(&space, lambda).stage("classify")?,
        })?,
        None => to_json(&SpectrumOutput {
            space: a.space.trim().to_string(),
            convention: ConventionArg::Widom,
            spectrum: fs,
        })?,
    };
    if let Some(path) = &a.boundary {
        let p = fs.sigma.map(|r| r.p()).ok_or_else(|| {
            CliError::new(
                "boundary",
                EXIT_INPUT,
                "spectrum region unknown for this space",
            )
        })?;
        write_atomic(path, boundary_csv(p)?.as_bytes())?;
    }
    emit(out, &body)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct EigencheckOutput {
    lambda: Complex64,
    convention: ConventionArg,
    gamma: f64,
    grid: usize,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

/// Always in the widom convention.
fn eigencheck(a: &EigencheckArgs, cfg: &RunConfig, out: Option<&Path>) -> CliResult<i32> {
    let gamma = gamma_of_lambda(a.lambda).stage("input")?;
    let grid = chebyshev_points(cfg.grid);
    let residual = eigen_residual(a.lambda, &grid, &cfg.quadrature()).stage("quadrature")?;
    let pass = residual <= cfg.eigen_tol;
    let body = to_json(&EigencheckOutput {
        lambda: a.lambda,
        convention: ConventionArg::Widom,
        gamma,
        grid: cfg.grid,
        residual,
        tolerance: cfg.eigen_tol,
        pass,
    })?;
    emit(out, &body)?;
    Ok(if pass { 0 } else { EXIT_FAILED_CHECK })
}

#[derive(Debug, Serialize)]
struct IdentitiesOutput {
    suite: String,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
    pass: bool,
    reports: Vec<IdentityReport>,
}

fn identities(a: &IdentitiesArgs, cfg: &RunConfig, out: Option<&Path>) -> CliResult<i32> {
    let suite: Suite = a.suite.parse().stage("parse")?;
    let reports = run_suite(suite, cfg.seed, &HarnessConfig::default()).stage("identities")?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.name.clone())
        .collect();
    let pass = failed.is_empty();
    let timestamp = (!a.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    let body = to_json(&IdentitiesOutput {
        suite: suite.to_string(),
        seed: cfg.seed,
        timestamp,
        pass,
        reports,
    })?;
    emit(out, &body)?;
    for name in &failed {
        eprintln!("fail: {name}");
    }
    Ok(if pass { 0 } else { EXIT_FAILED_CHECK })
}

#[derive(Debug, Serialize)]
struct NormsOutput {
    function: String,
    norm: String,
    cells: usize,
    result: NormValue,
}

fn norms(a: &NormsArgs, cfg: &RunConfig, out: Option<&Path>) -> CliResult<i32> {
    let (spec, input) = load_spec(&a.f)?;
    let cells = a.cells.unwrap_or(cfg.norm_cells);
    let f = input.evaluable();
    let (label, result) = match a.norm {
        NormKind::Lp(p) => (format!("lp:{p}"), refined_norm(f, cells, |s| lp_norm(p, s))),
        NormKind::Zygmund(al) => (
            format!("zygmund:{al}"),
            refined_norm(f, cells, |s| zygmund_norm(al, s)),
        ),
        NormKind::Lorentz(p, q) => {
            let (qq, qs) = match q {
                Some(q) => (LorentzQ::Finite(q), q.to_string()),
                None => (LorentzQ::Infinite, "inf".to_string()),
            };
            (
                format!("lorentz:{p},{qs}"),
                refined_norm(f, cells, |s| lorentz_norm(p, qq, s)),
            )
        }
    };
    let result = result.stage("norm")?;
    let body = to_json(&NormsOutput {
        function: spec.to_string(),
        norm: label,
        cells,
        result,
    })?;
    emit(out, &body)?;
    Ok(0)
}
