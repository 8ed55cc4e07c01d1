//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use fht_core::airfoil::{AirfoilSolver, Regime, RightHandSide};
use fht_core::fht_engine::{
    chebyshev_points, fht_check, fht_check_at, fht_grid, fht_hat, fht_hat_at, fht_spectral,
    integrate, project_p, project_q, Convention,
};
use fht_core::function_rep::{Basis, ChebyshevSeries, EndpointWeightedFunction, Evaluable};
use fht_core::identity_harness::{
    lp_operator_norm, norm_probes, run_suite, HarnessConfig, IdentityReport, Suite, NORM_EXPONENTS,
    NORM_FAMILY,
};
use fht_core::spectral_atlas::{
    check_partition, classify_space, eigen_residual, gamma_of_lambda, region_contains,
    FineSpectrum, Membership, SpaceDescriptor, SpectralRegion, SpectralSet,
};
use fht_core::{FhtError, QuadratureConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: String) -> Outcome {
    Outcome { pass, summary }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn sup_diff(a: &[Complex64], b: impl Fn(usize) -> Complex64) -> f64 {
    a.iter()
        .enumerate()
        .map(|(i, v)| (v - b(i)).norm())
        .fold(0.0, f64::max)
}

fn fixtures() -> Result<Outcome, FhtError> {
    let start = Instant::now();
    let cfg = QuadratureConfig::default();
    let ts = chebyshev_points(20);
    let mut worst = 0.0f64;
    for (f, want) in [
        (
            EndpointWeightedFunction::inv_weight(),
            Box::new(|_t: f64| 0.0) as Box<dyn Fn(f64) -> f64>,
        ),
        (EndpointWeightedFunction::weight(), Box::new(|t: f64| -t)),
        (
            EndpointWeightedFunction::over_w(ChebyshevSeries::from_real(
                &[0.0, 1.0],
                Basis::FirstKind,
            )),
            Box::new(|_t: f64| 1.0),
        ),
    ] {
        let v = fht_grid(&f, &ts, &cfg, Convention::Tricomi)?;
        worst = worst.max(sup_diff(&v, |i| c(want(ts[i]))));
    }
    let el = start.elapsed();
    Ok(outcome(
        worst <= 1e-8 && within(el, 5.0),
        format!(
            "sup residual {worst:.2e} (<= 1e-8), {:.2}s (< 5s)",
            el.as_secs_f64()
        ),
    ))
}

fn cross_validation() -> Result<Outcome, FhtError> {
    let start = Instant::now();
    let cfg = QuadratureConfig::default();
    let ts = chebyshev_points(20);
    let mut worst = 0.0f64;
    for n in 0..=20 {
        for f in [
            EndpointWeightedFunction::over_w(ChebyshevSeries::basis_element(n, Basis::FirstKind)),
            EndpointWeightedFunction::times_w(ChebyshevSeries::basis_element(n, Basis::SecondKind)),
        ] {
            let spectral = fht_spectral(&f)?;
            let quad = fht_grid(&f, &ts, &cfg, Convention::Tricomi)?;
            worst = worst.max(sup_diff(&quad, |i| spectral.eval(ts[i])));
        }
    }
    let el = start.elapsed();
    Ok(outcome(
        worst <= 1e-7 && within(el, 60.0),
        format!(
            "sup spectral-quadrature gap {worst:.2e} (<= 1e-7), {:.1}s (< 60s)",
            el.as_secs_f64()
        ),
    ))
}

fn random_coeffs(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let degree = rng.gen_range(0..=16);
    (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn round_trips() -> Result<Outcome, FhtError> {
    let cfg = QuadratureConfig::default();
    let ts = chebyshev_points(20);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut hat, mut check_t, mut t_check, mut hat_t, mut mean) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..25 {
        let coeffs = random_coeffs(&mut rng);
        let g =
            EndpointWeightedFunction::smooth(ChebyshevSeries::from_real(&coeffs, Basis::FirstKind));

        // T T^ = I
        let f = fht_hat(&g)?;
        let tf = fht_grid(&f, &ts, &cfg, Convention::Tricomi)?;
        hat = hat.max(sup_diff(&tf, |i| g.eval(ts[i])));

        // int T^(g) = 0
        mean = mean.max(integrate(&f, &cfg)?.value.norm());

        // T Tv = I - Q
        let qg = project_q(&g, &cfg)?;
        let v = fht_grid(&fht_check(&g)?, &ts, &cfg, Convention::Tricomi)?;
        t_check = t_check.max(sup_diff(&v, |i| g.eval(ts[i]) - qg.eval(ts[i])));

        // Tv T = I on w-weighted inputs, Tv by quadrature
        let fw = EndpointWeightedFunction::times_w(ChebyshevSeries::from_real(
            &coeffs,
            Basis::SecondKind,
        ));
        let tfw = fht_spectral(&fw)?;
        let back: Vec<Complex64> = ts
            .iter()
            .map(|&t| fht_check_at(&tfw, t, &cfg))
            .collect::<Result<_, _>>()?;
        check_t = check_t.max(sup_diff(&back, |i| fw.eval(ts[i])));

        // T^ T = I - P on 1/w-weighted inputs, T^ by quadrature
        let fo =
            EndpointWeightedFunction::over_w(ChebyshevSeries::from_real(&coeffs, Basis::FirstKind));
        let pf = project_p(&fo, &cfg)?;
        let tfo = fht_spectral(&fo)?;
        let back: Vec<Complex64> = ts
            .iter()
            .map(|&t| fht_hat_at(&tfo, t, &cfg))
            .collect::<Result<_, _>>()?;
        hat_t = hat_t.max(sup_diff(&back, |i| fo.eval(ts[i]) - pf.eval(ts[i])));
    }
    let pass = hat <= 1e-6 && check_t <= 1e-6 && t_check <= 1e-6 && hat_t <= 1e-6 && mean <= 1e-8;
    Ok(outcome(
        pass,
        format!(
            "T T^ {hat:.1e}, Tv T {check_t:.1e}, T Tv {t_check:.1e}, T^ T {hat_t:.1e} (<= 1e-6); |int T^g| {mean:.1e} (<= 1e-8)"
        ),
    ))
}

fn solvability() -> Result<Outcome, FhtError> {
    let solver = AirfoilSolver::default();
    let one: RightHandSide = ChebyshevSeries::constant(c(1.0)).into();
    let rejected = match solver.solve_high(&one) {
        Err(FhtError::NotSolvable { residual }) => (residual - 1.0).abs() <= 1e-8,
        _ => false,
    };
    let mut worst = 0.0f64;
    for n in 1..=12 {
        let g: RightHandSide = ChebyshevSeries::basis_element(n, Basis::FirstKind).into();
        worst = worst.max(
            solver
                .verify_roundtrip(&g, Regime::High, c(0.0))?
                .max_residual,
        );
    }
    Ok(outcome(
        rejected && worst <= 1e-6,
        format!("g = 1 rejected with residual 1: {rejected}; T_1..T_12 round trip {worst:.1e} (<= 1e-6)"),
    ))
}

fn eigen_relation() -> Result<Outcome, FhtError> {
    let cfg = QuadratureConfig::default();
    let grid = chebyshev_points(20);
    let region = SpectralRegion::new(1.5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut lambdas = vec![c(0.0)];
    while lambdas.len() < 10 {
        let l = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.6..0.6));
        if region.contains(l) == Membership::Interior && gamma_of_lambda(l)? >= 1.55 {
            lambdas.push(l);
        }
    }
    let at_zero = eigen_residual(lambdas[0], &grid, &cfg)?;
    let mut worst = at_zero;
    for &l in &lambdas[1..] {
        worst = worst.max(eigen_residual(l, &grid, &cfg)?);
    }
    Ok(outcome(
        worst <= 1e-5 && at_zero <= 1e-8,
        format!(
            "10 lambdas: max residual {worst:.1e} (<= 1e-5), lambda = 0: {at_zero:.1e} (<= 1e-8)"
        ),
    ))
}

fn region_geometry() -> Result<Outcome, FhtError> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ps = [1.2, 1.5, 1.8, 3.0, 5.0];
    let mut conjugate_ok = true;
    let mut apex_ok = true;
    for &p in &ps {
        let q = p / (p - 1.0);
        for _ in 0..100 {
            let l = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            conjugate_ok &= region_contains(p, l)? == region_contains(q, l)?;
        }
        // the arcs cross the imaginary axis at i cot(pi/p) and i cot(pi/p');
        // the upper crossing is the apex
        let r = SpectralRegion::new(p)?;
        let cross = |s: f64| Complex64::new(0.0, (PI / s).tan().recip());
        apex_ok &= r.contains(cross(p)) == Membership::Boundary
            && r.contains(cross(q)) == Membership::Boundary
            && (r.apex() - cross(p.max(q))).norm() <= 1e-12;
    }
    // larger |p - 2| gives a larger region
    let nested = [1.9, 1.7, 1.5, 1.3, 1.1];
    let mut nesting_ok = true;
    for (k, &p) in nested.iter().enumerate() {
        for _ in 0..100 {
            let l = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.5..1.5));
            if region_contains(p, l)? != Membership::Outside {
                for &bigger in &nested[k + 1..] {
                    nesting_ok &= region_contains(bigger, l)? == Membership::Interior;
                }
            }
        }
    }
    Ok(outcome(
        conjugate_ok && apex_ok && nesting_ok,
        format!("R_p = R_p' {conjugate_ok}, apex on boundary {apex_ok}, nesting {nesting_ok}"),
    ))
}

fn lorentz(p: f64, r: f64) -> SpaceDescriptor {
    SpaceDescriptor::Lorentz { p, r }
}

fn indexed(s: f64, p_attained: bool, q_attained: bool) -> SpaceDescriptor {
    SpaceDescriptor::Indexed {
        p_x: s,
        q_x: s,
        p_attained,
        q_attained,
    }
}

fn tables() -> Result<Outcome, FhtError> {
    use SpectralSet::*;
    // (descriptor, point, residual, continuous);
    // the diagonal Lorentz rows repeat the Lebesgue ones
    let rows: Vec<(SpaceDescriptor, SpectralSet, SpectralSet, SpectralSet)> = vec![
        (
            lorentz(1.5, 1.0),
            Interior { p: 1.5 },
            Empty,
            Boundary { p: 1.5 },
        ),
        (
            lorentz(3.0, 1.0),
            Empty,
            RegionMinusEndpoints { p: 3.0 },
            EndpointsOnly,
        ),
        (
            lorentz(3.0, 4.0),
            Empty,
            Interior { p: 3.0 },
            Boundary { p: 3.0 },
        ),
        (lorentz(2.0, 1.0), Empty, OpenUnitInterval, EndpointsOnly),
        (lorentz(2.0, 3.0), Empty, Empty, ClosedUnitInterval),
        (
            SpaceDescriptor::Lebesgue { p: 1.5 },
            Interior { p: 1.5 },
            Empty,
            Boundary { p: 1.5 },
        ),
        (
            SpaceDescriptor::Lebesgue { p: 4.0 },
            Empty,
            Interior { p: 4.0 },
            Boundary { p: 4.0 },
        ),
        (
            SpaceDescriptor::Lebesgue { p: 2.0 },
            Empty,
            Empty,
            ClosedUnitInterval,
        ),
        (
            lorentz(1.5, 1.5),
            Interior { p: 1.5 },
            Empty,
            Boundary { p: 1.5 },
        ),
        (
            lorentz(4.0, 4.0),
            Empty,
            Interior { p: 4.0 },
            Boundary { p: 4.0 },
        ),
        (lorentz(2.0, 2.0), Empty, Empty, ClosedUnitInterval),
        (
            indexed(1.5, false, false),
            Interior { p: 1.5 },
            Empty,
            Boundary { p: 1.5 },
        ),
        (
            indexed(1.5, true, false),
            RegionMinusEndpoints { p: 1.5 },
            Empty,
            EndpointsOnly,
        ),
        (
            indexed(3.0, false, false),
            Empty,
            Interior { p: 3.0 },
            Boundary { p: 3.0 },
        ),
        (
            indexed(3.0, false, true),
            Empty,
            RegionMinusEndpoints { p: 3.0 },
            EndpointsOnly,
        ),
        (
            indexed(2.0, true, false),
            OpenUnitInterval,
            Empty,
            EndpointsOnly,
        ),
        (
            indexed(2.0, false, true),
            Empty,
            OpenUnitInterval,
            EndpointsOnly,
        ),
        (indexed(2.0, false, false), Empty, Empty, ClosedUnitInterval),
    ];
    let mut mismatches = Vec::new();
    let mut partition_failures = 0;
    for (d, point, residual, continuous) in &rows {
        let fs: FineSpectrum = classify_space(d)?;
        if (fs.point, fs.residual, fs.continuous) != (*point, *residual, *continuous) {
            mismatches.push(d.to_string());
        }
        if !check_partition(&fs, 200).pass() {
            partition_failures += 1;
        }
    }
    Ok(outcome(
        mismatches.is_empty() && partition_failures == 0,
        format!(
            "{} rows, mismatches {:?}, partition failures {partition_failures} (200 points each)",
            rows.len(),
            mismatches
        ),
    ))
}

fn suite_summary(reports: &[IdentityReport], tol: f64) -> (bool, f64, usize) {
    let worst = reports
        .iter()
        .map(|r| {
            if r.criterion == "rel" {
                r.max_rel_residual
            } else {
                r.max_abs_residual
            }
        })
        .fold(0.0, f64::max);
    let ok = reports.iter().all(|r| r.pass && r.tolerance <= tol);
    (ok, worst, reports.len())
}

fn laeng() -> Result<Outcome, FhtError> {
    let start = Instant::now();
    let reports = run_suite(Suite::Laeng, 42, &HarnessConfig::default())?;
    let el = start.elapsed();
    let random: Vec<IdentityReport> = reports
        .into_iter()
        .filter(|r| r.name.starts_with("laeng_random"))
        .collect();
    let (ok, worst, n) = suite_summary(&random, 1e-3);
    let grids_ok = random.iter().all(|r| r.grid_size >= 20);
    Ok(outcome(
        ok && n == 5 && grids_ok && within(el, 30.0),
        format!(
            "{n} unions, max rel error {worst:.1e} (<= 1e-3), {:.1}s (< 30s)",
            el.as_secs_f64()
        ),
    ))
}

fn parseval_pb() -> Result<Outcome, FhtError> {
    let start = Instant::now();
    let cfg = HarnessConfig::default();
    let parseval = run_suite(Suite::Parseval, 42, &cfg)?;
    let pb = run_suite(Suite::PoincareBertrand, 42, &cfg)?;
    let el = start.elapsed();
    let random: Vec<IdentityReport> = parseval
        .into_iter()
        .filter(|r| r.name.starts_with("parseval_random"))
        .collect();
    let (p_ok, p_worst, p_n) = suite_summary(&random, 1e-6);
    let (b_ok, b_worst, b_n) = suite_summary(&pb, 1e-4);
    Ok(outcome(
        p_ok && b_ok && p_n == 20 && within(el, 120.0),
        format!(
            "Parseval {p_n} pairs max {p_worst:.1e} (<= 1e-6); PB {b_n} reports max {b_worst:.1e} (<= 1e-4); {:.1}s (< 120s)",
            el.as_secs_f64()
        ),
    ))
}

fn norm_bound() -> Result<Outcome, FhtError> {
    let analytic_ok = (lp_operator_norm(1.5) - 3f64.sqrt()).abs() <= 1e-12
        && (lp_operator_norm(1.2) - (PI / 2.4).tan()).abs() <= 1e-12
        && (lp_operator_norm(1.8) - (PI / 3.6).tan()).abs() <= 1e-12;
    let probes = norm_probes(
        &NORM_EXPONENTS,
        NORM_FAMILY,
        42,
        &QuadratureConfig::default().with_tolerance(1e-10),
    )?;
    let mut ok = analytic_ok && NORM_FAMILY == 50;
    let mut parts = Vec::new();
    for r in &probes {
        let p = r.parameters["p"];
        let bound = (PI / (2.0 * p)).tan();
        ok &= r.sup_ratio <= bound * 1.001 && r.refined_sup_ratio <= bound * 1.001;
        parts.push(format!(
            "p={p}: {:.4} <= {:.4}",
            r.sup_ratio.max(r.refined_sup_ratio),
            bound * 1.001
        ));
    }
    Ok(outcome(
        ok,
        format!("{}; tan(pi/3) = sqrt 3: {analytic_ok}", parts.join(", ")),
    ))
}

fn determinism() -> Result<Outcome, FhtError> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fht"))
            .args([
                "identities",
                "--suite",
                "all",
                "--seed",
                "42",
                "--no-timestamp",
            ])
            .env_remove("FHT_CONFIG")
            .output()
            .map_err(|e| FhtError::Io(e.to_string()))
    };
    let a = run()?;
    let b = run()?;
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    Ok(outcome(
        same && a.status.code() == Some(0),
        format!(
            "{} bytes, identical {same}, exit {:?}",
            a.stdout.len(),
            a.status.code()
        ),
    ))
}

type Check = fn() -> Result<Outcome, FhtError>;

fn main() {
    let criteria: [(&str, Check); 11] = [
        ("closed-form fixtures", fixtures),
        ("spectral/quadrature cross-validation", cross_validation),
        ("inversion round trips", round_trips),
        ("solvability", solvability),
        ("eigen-relation", eigen_relation),
        ("region geometry", region_geometry),
        ("fine-spectrum tables", tables),
        ("level-set law", laeng),
        ("Parseval and Poincare-Bertrand", parseval_pb),
        ("norm bound", norm_bound),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (pass, summary) = match check() {
            Ok(o) => (o.pass, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<38} {}  {summary}",
            k + 1,
            name,
            if pass { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
