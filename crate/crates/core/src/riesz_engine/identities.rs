//! Numeric residuals of the two change-of-variable formulas for Riesz means.

use std::cell::RefCell;

use num_traits::ToPrimitive;

use super::means::power_mean;
use super::measure::{change_variable, SpectralMeasure, Variable};
use crate::coeff_transforms::{hardy_kernel_coeffs, hormander_weights};
use crate::error::{Error, Result};
use crate::exact_scalar::Rational;
use crate::quadrature::{integrate_piecewise, QuadratureOptions};

fn in_lambda(mu: &SpectralMeasure) -> SpectralMeasure {
    match mu.variable() {
        Variable::Lambda => mu.clone(),
        Variable::Omega => change_variable(mu),
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `R^alpha_lambda(x) - [k^alpha R^alpha_w(x) + int_0^x J(x, sigma) R^alpha_w(sigma) dsigma]`
/// with `w = lambda^(1/k)`, all means written at points of `lambda`.
pub fn hardy_identity_residual(mu: &SpectralMeasure, k: &Rational, alpha: u32, x: f64) -> Result<f64> {
    hardy_identity_residual_with(mu, k, alpha, x, &QuadratureOptions::with_rel_tol(1e-13))
}

pub fn hardy_identity_residual_with(
    mu: &SpectralMeasure,
    k: &Rational,
    alpha: u32,
    x: f64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    let kernel: Vec<(i32, f64)> = hardy_kernel_coeffs(k, alpha)?
        .into_iter()
        .map(|(j, c)| (j as i32, to_f64(&c)))
        .collect();
    let mu = in_lambda(mu);
    let kf = to_f64(k);
    let q = 1.0 / kf;
    let lhs = power_mean(&mu, alpha, x, 1.0, opts)?;
    let head = kf.powi(alpha as i32) * power_mean(&mu, alpha, x, q, opts)?;

    let failure = RefCell::new(None::<Error>);
    let integrand = |sigma: f64| {
        if sigma <= 0.0 {
            return 0.0;
        }
        let mean = match power_mean(&mu, alpha, sigma, q, opts) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return 0.0;
            }
        };
        let j_value: f64 = kernel.iter().map(|&(j, c)| c * (sigma / x).powi(j) / x).sum();
        j_value * mean
    };
    let mut cuts = vec![0.0];
    cuts.extend(mu.atoms().iter().map(|a| a.position).filter(|&p| p > 0.0 && p < x));
    cuts.push(x);
    let tail = integrate_piecewise(integrand, &cuts, opts)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(lhs - head - tail.value)
}

/// `R^alpha_lambda(x) - sum_beta b_beta R^beta_w(x)`, `w = lambda^(1/k)`.
pub fn hormander_identity_residual(mu: &SpectralMeasure, k: u32, alpha: u32, x: f64) -> Result<f64> {
    let weights = hormander_weights(k, alpha)?;
    let mu = in_lambda(mu);
    let opts = QuadratureOptions::with_rel_tol(1e-13);
    let q = 1.0 / k as f64;
    let lhs = power_mean(&mu, alpha, x, 1.0, &opts)?;
    let mut rhs = 0.0;
    for (beta, b) in &weights {
        rhs += to_f64(b) * power_mean(&mu, *beta, x, q, &opts)?;
    }
    Ok(lhs - rhs)
}
