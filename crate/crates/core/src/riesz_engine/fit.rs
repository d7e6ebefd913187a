//! Least-squares extraction of asymptotic coefficients from sampled means.

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::means::MeanSamples;
use crate::error::{Error, Result};
use crate::exact_scalar::Rational;

/// One basis function `x^power (ln x)^{log}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisTerm {
    pub power: Rational,
    pub log: bool,
}

impl BasisTerm {
    pub fn power(power: Rational) -> Self {
        Self { power, log: false }
    }

    pub fn log(power: Rational) -> Self {
        Self { power, log: true }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p = self.power.to_f64().unwrap_or(f64::NAN);
        let base = x.powf(p);
        if self.log {
            base * x.ln()
        } else {
            base
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    #[default]
    None,
    /// Rows divided by `x^p_max`, equalising the relative size of samples
    /// taken over several decades.
    Geometric,
    /// Rows divided by `|y|`: relative least squares.
    Relative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitSpec {
    terms: Vec<BasisTerm>,
    window: (f64, f64),
    weighting: Weighting,
    misfit_tolerance: f64,
}

impl FitSpec {
    pub fn new(terms: Vec<BasisTerm>, window: (f64, f64), weighting: Weighting) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("fit basis is empty".into()));
        }
        let mut sorted = terms.clone();
        sorted.sort();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidArgument("fit basis repeats a (power, log) pair".into()));
        }
        if !(window.0 > 0.0 && window.1 > window.0) {
            return Err(Error::InvalidArgument(format!(
                "fit window must satisfy 0 < lo < hi, got ({}, {})",
                window.0, window.1
            )));
        }
        Ok(Self {
            terms,
            window,
            weighting,
            misfit_tolerance: 1e-6,
        })
    }

    /// Relative residual above which a fit is flagged as a misfit.
    pub fn with_misfit_tolerance(mut self, tol: f64) -> Self {
        self.misfit_tolerance = tol;
        self
    }

    pub fn terms(&self) -> &[BasisTerm] {
        &self.terms
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub coefficients: Vec<f64>,
    /// One-sigma estimates from the residual variance.
    pub std_errors: Vec<f64>,
    /// `|A c - y| / |y|` in the weighted norm.
    pub residual_norm: f64,
    /// Ratio of extreme singular values of the column-scaled design.
    pub condition: f64,
    pub samples_used: usize,
    pub misfit: bool,
}

impl FitResult {
    pub fn coefficient(&self, spec: &FitSpec, term: &BasisTerm) -> Option<f64> {
        spec.terms.iter().position(|t| t == term).map(|i| self.coefficients[i])
    }
}

pub fn asymptotic_fit(samples: &MeanSamples, spec: &FitSpec) -> Result<FitResult> {
    fit_points(&samples.points, spec)
}

/// Least squares on raw `(x, y)` pairs.
pub fn fit_points(points: &[(f64, f64)], spec: &FitSpec) -> Result<FitResult> {
    let (lo, hi) = spec.window;
    let used: Vec<(f64, f64)> = points.iter().copied().filter(|(x, _)| *x >= lo && *x <= hi).collect();
    let (n, p) = (used.len(), spec.terms.len());
    if n < p {
        return Err(Error::InvalidArgument(format!(
            "{n} samples in window for {p} basis functions"
        )));
    }
    let p_max = spec
        .terms
        .iter()
        .map(|t| t.power.to_f64().unwrap_or(0.0))
        .fold(f64::NEG_INFINITY, f64::max);
    if spec.weighting == Weighting::Relative && used.iter().any(|&(_, y)| y == 0.0) {
        return Err(Error::InvalidArgument(
            "relative weighting needs nonzero samples".into(),
        ));
    }
    let row_scale = |(x, y): (f64, f64)| match spec.weighting {
        Weighting::None => 1.0,
        Weighting::Geometric => x.powf(-p_max),
        Weighting::Relative => 1.0 / y.abs(),
    };
    let mut a = DMatrix::from_fn(n, p, |i, j| spec.terms[j].eval(used[i].0) * row_scale(used[i]));
    let y = DVector::from_fn(n, |i, _| used[i].1 * row_scale(used[i]));

    let norms: Vec<f64> = (0..p).map(|j| a.column(j).norm()).collect();
    if norms.iter().any(|&c| c == 0.0 || !c.is_finite()) {
        return Err(Error::RankDeficient { rank: 0, columns: p });
    }
    for (j, c) in norms.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / c);
    }

    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let s_max = sv.max();
    let s_min = sv.min();
    let threshold = 1e-14 * n as f64 * s_max;
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    if rank < p {
        return Err(Error::RankDeficient { rank, columns: p });
    }
    let scaled = svd
        .solve(&y, threshold)
        .map_err(|e| Error::InvalidArgument(format!("least-squares solve failed: {e}")))?;

    let residual = &a * &scaled - &y;
    let y_norm = y.norm();
    let residual_norm = if y_norm > 0.0 {
        residual.norm() / y_norm
    } else {
        residual.norm()
    };

    // diag((A^T A)^-1) = sum_k (V_jk / s_k)^2
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let dof = (n - p).max(1) as f64;
    let variance = residual.norm_squared() / dof;
    let std_errors = (0..p)
        .map(|j| {
            let d: f64 = (0..p).map(|k| (v_t[(k, j)] / sv[k]).powi(2)).sum();
            (variance * d).sqrt() / norms[j]
        })
        .collect();
    let coefficients = (0..p).map(|j| scaled[j] / norms[j]).collect();

    Ok(FitResult {
        coefficients,
        std_errors,
        residual_norm,
        condition: s_max / s_min,
        samples_used: n,
        misfit: residual_norm > spec.misfit_tolerance,
    })
}
