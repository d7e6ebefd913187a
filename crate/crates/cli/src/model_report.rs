//! End-to-end report for one model: kernels by spectral sum against closed
//! forms, Riesz means, fitted expansions against the exact tables, and
//! exact table transforms.

use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};

use riesz_core::coeff_transforms::io::{CoeffDocument, DocumentKind};
use riesz_core::coeff_transforms::{Coeff, KernelKind};
use riesz_core::green_functions::{
    fit_kernel_expansion, model_kernel, model_trace, sample_kernel, ExpansionEstimate, KernelSamples,
};
use riesz_core::models::{expected_coeffs, spectral_measure, Boundary, Manifold, Observable};
use riesz_core::riesz_engine::{geometric_grid, riesz_mean_in, DecayKernel, SpectralMeasure, Variable};
use riesz_core::{Error, ExactScalar};

use crate::output::{ensure_dir, out_path, read_config, sig17, write_csv, write_json, RunInfo, Sig17};
use crate::CliError;

const KERNEL_TRUNCATION: f64 = 1e-14;
const KERNEL_AGREEMENT: f64 = 1e-10;
const HEAT_SMAX: usize = 4;
const CYLINDER_SMAX: usize = 10;
const COMPARED_PER_KIND: usize = 3;
const COMPARED_MAX_ORDER: usize = 4;

#[derive(Args, Debug)]
pub struct ModelReportArgs {
    /// JSON config, e.g. {"manifold": "circle", "L": 1.0, "observable": "trace"}
    #[arg(long)]
    config: Option<PathBuf>,
    /// line, half-line, circle or interval
    #[arg(long)]
    manifold: Option<String>,
    /// Half-circumference of the circle or length of the interval
    #[arg(long = "L")]
    length: Option<f64>,
    /// trace, diagonal or off-diagonal
    #[arg(long)]
    observable: Option<String>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    y: Option<f64>,
    /// Half-line boundary condition: dirichlet or neumann
    #[arg(long)]
    boundary: Option<String>,
    /// Riesz orders to tabulate, comma separated
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u32>>,
    /// Relative tolerance for fitted coefficients
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    manifold: Option<String>,
    #[serde(rename = "L")]
    length: Option<f64>,
    observable: Option<String>,
    x: Option<f64>,
    y: Option<f64>,
    boundary: Option<String>,
    alpha: Option<Vec<u32>>,
    tol: Option<f64>,
    seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelConfig {
    pub manifold: String,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub length: Option<Sig17>,
    pub observable: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Sig17>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Sig17>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<String>,
    pub alpha: Vec<u32>,
    pub tol: Sig17,
}

#[derive(Serialize)]
struct KernelCheck {
    kind: KernelKind,
    t_min: Sig17,
    t_max: Sig17,
    samples: usize,
    max_difference: Sig17,
    truncation_bound: Sig17,
    pass: bool,
}

#[derive(Serialize)]
struct CoefficientCheck {
    s: usize,
    expected: String,
    expected_value: Sig17,
    estimate: Sig17,
    stderr: Sig17,
    relative_error: Sig17,
    pass: bool,
}

#[derive(Serialize)]
struct FitCheck {
    kind: KernelKind,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<(Sig17, Sig17)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition: Option<Sig17>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_norm: Option<Sig17>,
    coefficients: Vec<CoefficientCheck>,
}

#[derive(Serialize)]
struct TableSlot {
    s: usize,
    from_lambda: String,
    expected: String,
    status: &'static str,
}

#[derive(Serialize)]
struct TableCheck {
    status: String,
    slots: Vec<TableSlot>,
}

#[derive(Serialize)]
struct Report {
    run: RunInfo<ModelConfig>,
    manifold: String,
    observable: String,
    length_scale: Sig17,
    omega_cutoff: Sig17,
    kernel_checks: Vec<KernelCheck>,
    fits: Vec<FitCheck>,
    table_check: TableCheck,
    pass: bool,
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_boundary(text: &str) -> Result<Boundary, CliError> {
    match text.to_ascii_lowercase().as_str() {
        "dirichlet" => Ok(Boundary::Dirichlet),
        "neumann" => Ok(Boundary::Neumann),
        other => Err(CliError::Usage(format!("unknown boundary '{other}'"))),
    }
}

fn build_observable(kind: &str, x: Option<f64>, y: Option<f64>) -> Result<Observable, CliError> {
    let need_x = || x.ok_or_else(|| CliError::Usage(format!("observable {kind} needs --x")));
    match kind {
        "trace" => Ok(Observable::Trace),
        "diagonal" => {
            let x = need_x()?;
            match y {
                Some(y) if y != x => Ok(Observable::OffDiagonal { x, y }),
                _ => Ok(Observable::Diagonal { x }),
            }
        }
        "off-diagonal" => Ok(Observable::OffDiagonal {
            x: need_x()?,
            y: y.ok_or_else(|| CliError::Usage("off-diagonal observable needs --y".into()))?,
        }),
        other => Err(CliError::Usage(format!("unknown observable '{other}'"))),
    }
}

/// Half the shortest nonzero separation between a point and the images
/// that make up the kernel; sets the windows where the small-`t`
/// expansions are accurate.
fn length_scale(man: &Manifold, obs: &Observable) -> Result<f64, CliError> {
    let mut separations = Vec::new();
    match (*man, obs.points()) {
        (_, None) => separations.push(2.0 * man.length().expect("trace implies a compact model")),
        (Manifold::Line, Some((x, y))) => separations.push((x - y).abs()),
        (Manifold::HalfLine { .. }, Some((x, y))) => separations.extend([(x - y).abs(), x + y]),
        (Manifold::Circle { length }, Some((x, y))) => {
            let r = (x - y).abs();
            separations.extend([r, 2.0 * length - r, 2.0 * length]);
        }
        (Manifold::Interval { length }, Some((x, y))) => {
            separations.extend([(x - y).abs(), x + y, 2.0 * length - x - y, 2.0 * length]);
        }
    }
    let shortest = separations
        .into_iter()
        .filter(|&d| d > 0.0)
        .fold(f64::INFINITY, f64::min);
    if shortest.is_infinite() {
        if *man == Manifold::Line {
            return Ok(1.0);
        }
        return Err(CliError::Usage("points on the boundary give a vanishing kernel".into()));
    }
    Ok(0.5 * shortest)
}

fn closed_form(man: &Manifold, obs: &Observable, kind: KernelKind, t: f64) -> riesz_core::Result<f64> {
    match obs.points() {
        Some((x, y)) => model_kernel(man, kind, t, x, y),
        None => model_trace(man, kind, t),
    }
}

/// Smallest `omega` cutoff (by doubling) whose tail bound is below the
/// truncation tolerance at both smallest times.
fn build_measure(man: &Manifold, obs: &Observable, heat_t: f64, cylinder_t: f64) -> Result<SpectralMeasure, CliError> {
    let mut cutoff = (40.0 / cylinder_t).max((40.0 / heat_t).sqrt());
    for _ in 0..20 {
        let mu = spectral_measure(man, obs, cutoff).map_err(usage)?;
        let fine = match mu.envelope() {
            None => true,
            Some(env) => {
                env.tail_bound(DecayKernel::Heat, heat_t) <= KERNEL_TRUNCATION
                    && env.tail_bound(DecayKernel::Cylinder, cylinder_t) <= KERNEL_TRUNCATION
            }
        };
        if fine {
            return Ok(mu);
        }
        cutoff *= 2.0;
    }
    Err(CliError::Check(Error::TailBound(
        "no cutoff met the truncation tolerance".into(),
    )))
}

fn kernel_rows(
    man: &Manifold,
    obs: &Observable,
    samples: &KernelSamples,
    rows: &mut Vec<Vec<String>>,
) -> Result<KernelCheck, CliError> {
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for &(t, value) in &samples.points {
        let exact = closed_form(man, obs, samples.kind, t).map_err(CliError::Check)?;
        let diff = value - exact;
        worst = worst.max(diff.abs());
        pass &= diff.abs() <= KERNEL_AGREEMENT * exact.abs().max(1.0);
        rows.push(vec![
            kind_name(samples.kind).to_string(),
            sig17(t),
            sig17(value),
            sig17(exact),
            sig17(diff),
            sig17(samples.truncation_bound),
        ]);
    }
    Ok(KernelCheck {
        kind: samples.kind,
        t_min: Sig17(samples.points[0].0),
        t_max: Sig17(samples.points[samples.points.len() - 1].0),
        samples: samples.points.len(),
        max_difference: Sig17(worst),
        truncation_bound: Sig17(samples.truncation_bound),
        pass,
    })
}

fn kind_name(kind: KernelKind) -> &'static str {
    match kind {
        KernelKind::Heat => "heat",
        KernelKind::Cylinder => "cylinder",
    }
}

fn expected_kernel_coeffs(man: &Manifold, obs: &Observable, kind: KernelKind) -> riesz_core::Result<Vec<ExactScalar>> {
    match kind {
        KernelKind::Heat => match expected_coeffs(man, obs, DocumentKind::Heat, HEAT_SMAX)? {
            CoeffDocument::Heat(h) => Ok(h.b().to_vec()),
            _ => unreachable!("heat table requested"),
        },
        KernelKind::Cylinder => match expected_coeffs(man, obs, DocumentKind::Cylinder, CYLINDER_SMAX)? {
            CoeffDocument::Cylinder(c) => Ok(c
                .e()
                .iter()
                .map(|e| e.as_known().cloned().unwrap_or_default())
                .collect()),
            _ => unreachable!("cylinder table requested"),
        },
    }
}

fn fit_check(man: &Manifold, obs: &Observable, samples: &KernelSamples, tol: f64) -> Result<FitCheck, CliError> {
    let kind = samples.kind;
    let empty = |status: String| FitCheck {
        kind,
        status,
        window: None,
        condition: None,
        residual_norm: None,
        coefficients: Vec::new(),
    };
    let expected = match expected_kernel_coeffs(man, obs, kind) {
        Ok(e) => e,
        Err(Error::Unsupported(msg)) => return Ok(empty(format!("unsupported: {msg}"))),
        Err(e) => return Err(CliError::Check(e)),
    };
    let compared: Vec<usize> = (0..expected.len().min(COMPARED_MAX_ORDER + 1))
        .filter(|&s| !expected[s].is_zero())
        .take(COMPARED_PER_KIND)
        .collect();
    if compared.is_empty() {
        return Ok(empty("no nonzero coefficients to compare".into()));
    }
    let smax = expected.len() - 1;
    let est: ExpansionEstimate = fit_kernel_expansion(samples, 1, smax).map_err(CliError::Check)?;
    let coefficients = compared
        .into_iter()
        .map(|s| {
            let e = expected[s].to_f64();
            let got = est.coeffs[s].value;
            let rel = ((got.estimate - e) / e).abs();
            CoefficientCheck {
                s,
                expected: expected[s].to_string(),
                expected_value: Sig17(e),
                estimate: Sig17(got.estimate),
                stderr: Sig17(got.stderr),
                relative_error: Sig17(rel),
                pass: rel <= tol,
            }
        })
        .collect();
    Ok(FitCheck {
        kind,
        status: "fitted".into(),
        window: Some((Sig17(est.window.0), Sig17(est.window.1))),
        condition: Some(Sig17(est.condition)),
        residual_norm: Some(Sig17(est.residual_norm)),
        coefficients,
    })
}

fn table_check(man: &Manifold, obs: &Observable) -> Result<TableCheck, CliError> {
    let lambda = expected_coeffs(man, obs, DocumentKind::LambdaDiag, CYLINDER_SMAX);
    let omega = expected_coeffs(man, obs, DocumentKind::OmegaDiag, CYLINDER_SMAX);
    let (lambda, omega) = match (lambda, omega) {
        (Ok(l), Ok(o)) => (l, o),
        (Err(Error::Unsupported(msg)), _) | (_, Err(Error::Unsupported(msg))) => {
            return Ok(TableCheck {
                status: format!("unsupported: {msg}"),
                slots: Vec::new(),
            })
        }
        (Err(e), _) | (_, Err(e)) => return Err(CliError::Check(e)),
    };
    let derived = lambda.transform(DocumentKind::OmegaDiag).map_err(CliError::Check)?;
    let (CoeffDocument::OmegaDiag(derived), CoeffDocument::OmegaDiag(omega)) = (derived, omega) else {
        unreachable!("omega tables requested");
    };
    let show = |c: &Coeff| match c {
        Coeff::Known(v) => v.to_string(),
        Coeff::Undetermined => "undetermined".to_string(),
    };
    let slots: Vec<TableSlot> = derived
        .c()
        .iter()
        .zip(omega.c())
        .enumerate()
        .map(|(s, (from_lambda, expected))| TableSlot {
            s,
            from_lambda: show(from_lambda),
            expected: show(expected),
            status: match from_lambda {
                Coeff::Undetermined => "undetermined",
                known if known == expected => "match",
                _ => "mismatch",
            },
        })
        .collect();
    let status = if slots.iter().any(|s| s.status == "mismatch") {
        "mismatch"
    } else {
        "consistent"
    };
    Ok(TableCheck {
        status: status.into(),
        slots,
    })
}

fn mean_rows(mu: &SpectralMeasure, alphas: &[u32], scale: f64) -> Result<Vec<Vec<String>>, CliError> {
    let hi = (40.0 / scale).min(mu.atom_horizon());
    let grid = geometric_grid(1.0 / scale, hi, 64);
    let mut rows = Vec::new();
    for &alpha in alphas {
        for &w in &grid {
            let om = riesz_mean_in(mu, Variable::Omega, alpha, w).map_err(CliError::Check)?;
            let la = riesz_mean_in(mu, Variable::Lambda, alpha, w * w).map_err(CliError::Check)?;
            rows.push(vec![alpha.to_string(), "omega".into(), sig17(w), sig17(om)]);
            rows.push(vec![alpha.to_string(), "lambda".into(), sig17(w * w), sig17(la)]);
        }
    }
    Ok(rows)
}

fn default_observable(name: &str) -> (&'static str, Option<f64>) {
    match name {
        "interval" => ("trace", None),
        "half-line" | "halfline" => ("diagonal", Some(1.0)),
        _ => ("diagonal", Some(0.0)),
    }
}

pub fn run(args: ModelReportArgs) -> Result<bool, CliError> {
    let file: FileConfig = read_config(args.config.as_deref())?;
    let name = args
        .manifold
        .or(file.manifold)
        .ok_or_else(|| CliError::Usage("--manifold is required".into()))?
        .to_ascii_lowercase();
    let length = args.length.or(file.length);
    let boundary = args.boundary.or(file.boundary);
    let (default_obs, default_x) = default_observable(&name);
    let observable = args
        .observable
        .or(file.observable)
        .unwrap_or_else(|| default_obs.to_string());
    let x = args.x.or(file.x).or(default_x);
    let y = args.y.or(file.y);
    let alpha = args.alpha.or(file.alpha).unwrap_or_else(|| vec![0, 1, 2]);
    let tol = args.tol.or(file.tol).unwrap_or(1e-3);
    let seed = args.seed.or(file.seed).unwrap_or(0);
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage("--tol must be positive".into()));
    }

    let bc = boundary.as_deref().map(parse_boundary).transpose()?;
    let man = Manifold::parse(&name, length, bc).map_err(usage)?;
    let obs = build_observable(&observable, x, y)?;
    obs.check(&man).map_err(usage)?;
    let config = ModelConfig {
        manifold: name,
        length: length.map(Sig17),
        observable,
        x: obs.points().map(|p| Sig17(p.0)),
        y: obs.points().filter(|p| p.0 != p.1).map(|p| Sig17(p.1)),
        boundary,
        alpha: alpha.clone(),
        tol: Sig17(tol),
    };

    let scale = length_scale(&man, &obs)?;
    let heat_ts = geometric_grid(0.002 * scale * scale, 0.04 * scale * scale, 64);
    let cylinder_ts = geometric_grid(0.01 * scale, 0.5 * scale, 128);
    let mu = build_measure(&man, &obs, heat_ts[0], cylinder_ts[0])?;

    let mut kernel_csv = Vec::new();
    let mut kernel_checks = Vec::new();
    let mut fits = Vec::new();
    for (kind, ts) in [(KernelKind::Heat, &heat_ts), (KernelKind::Cylinder, &cylinder_ts)] {
        let samples = sample_kernel(&mu, kind, ts, KERNEL_TRUNCATION).map_err(CliError::Check)?;
        kernel_checks.push(kernel_rows(&man, &obs, &samples, &mut kernel_csv)?);
        fits.push(fit_check(&man, &obs, &samples, tol)?);
    }
    let table = table_check(&man, &obs)?;
    let means = mean_rows(&mu, &alpha, scale)?;

    let pass = kernel_checks.iter().all(|k| k.pass)
        && fits.iter().all(|f| f.coefficients.iter().all(|c| c.pass))
        && table.status != "mismatch";
    for k in &kernel_checks {
        println!(
            "{:<8} kernel: max |sum - closed form| = {}  {}",
            kind_name(k.kind),
            sig17(k.max_difference.0),
            if k.pass { "pass" } else { "FAIL" }
        );
    }
    for f in &fits {
        for c in &f.coefficients {
            println!(
                "{:<8} s = {}: fit {} vs {} = {}  {}",
                kind_name(f.kind),
                c.s,
                sig17(c.estimate.0),
                c.expected,
                sig17(c.expected_value.0),
                if c.pass { "pass" } else { "FAIL" }
            );
        }
        if f.coefficients.is_empty() {
            println!("{:<8} fit: {}", kind_name(f.kind), f.status);
        }
    }
    println!("tables: {}", table.status);

    let report = Report {
        run: RunInfo::new(seed, config),
        manifold: man.to_string(),
        observable: obs.name().to_string(),
        length_scale: Sig17(scale),
        omega_cutoff: Sig17(mu.atom_horizon()),
        kernel_checks,
        fits,
        table_check: table,
        pass,
    };
    if let Some(dir) = args.out {
        ensure_dir(&dir)?;
        write_json(&out_path(&dir, "report.json"), &report)?;
        write_csv(
            &out_path(&dir, "kernels.csv"),
            &["kind", "t", "value", "closed_form", "difference", "truncation_bound"],
            &kernel_csv,
        )?;
        write_csv(
            &out_path(&dir, "means.csv"),
            &["alpha", "variable", "x", "value"],
            &means,
        )?;
    }
    Ok(pass)
}
