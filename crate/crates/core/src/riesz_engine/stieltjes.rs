//! Riesz means of `f = int a dmu` computed from the means of `mu` and
//! derivatives of the smooth weight `a`.

use std::cell::RefCell;

use super::means::power_mean;
use super::measure::SpectralMeasure;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_piecewise, QuadratureOptions};

/// A smooth weight with derivative evaluators.
pub trait StieltjesWeight {
    fn value(&self, sigma: f64) -> f64;
    /// `d^order a / dsigma^order`, `None` when unavailable.
    fn derivative(&self, order: usize, sigma: f64) -> Option<f64>;
}

/// `a = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitWeight;

/// `a(sigma) = sigma`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LinearWeight;

/// `a(sigma) = exp(-rate sigma)`.
#[derive(Clone, Copy, Debug)]
pub struct ExpWeight {
    pub rate: f64,
}

impl StieltjesWeight for UnitWeight {
    fn value(&self, _: f64) -> f64 {
        1.0
    }
    fn derivative(&self, _: usize, _: f64) -> Option<f64> {
        Some(0.0)
    }
}

impl StieltjesWeight for LinearWeight {
    fn value(&self, sigma: f64) -> f64 {
        sigma
    }
    fn derivative(&self, order: usize, _: f64) -> Option<f64> {
        Some(if order == 1 { 1.0 } else { 0.0 })
    }
}

impl StieltjesWeight for ExpWeight {
    fn value(&self, sigma: f64) -> f64 {
        (-self.rate * sigma).exp()
    }
    fn derivative(&self, order: usize, sigma: f64) -> Option<f64> {
        Some((-self.rate).powi(order as i32) * self.value(sigma))
    }
}

/// `R^alpha f(x)` for `f(x) = int_{[0, x)} a dmu`:
///
/// `a(x) M(x) + x^-alpha sum_{j=1}^{alpha+1} (-1)^j C(alpha+1, j)/(j-1)! int_0^x (x-s)^(j-1) s^alpha a^(j)(s) M(s) ds`
///
/// with `M = R^alpha mu`.
pub fn stieltjes_mean<W: StieltjesWeight + ?Sized>(
    weight: &W,
    mu: &SpectralMeasure,
    alpha: u32,
    x: f64,
) -> Result<f64> {
    let order = alpha as usize + 1;
    for j in 1..=order {
        if weight.derivative(j, x).is_none() {
            return Err(Error::MissingDerivative(j));
        }
    }
    let opts = QuadratureOptions::with_rel_tol(1e-13);
    let head = weight.value(x) * power_mean(mu, alpha, x, 1.0, &opts)?;

    let mut coeffs = Vec::with_capacity(order);
    let (mut binom, mut fact) = (1.0, 1.0);
    for j in 1..=order {
        binom *= (order + 1 - j) as f64 / j as f64;
        if j > 1 {
            fact *= (j - 1) as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * binom / fact);
    }

    let failure = RefCell::new(None::<Error>);
    let integrand = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        let mean = match power_mean(mu, alpha, s, 1.0, &opts) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return 0.0;
            }
        };
        if mean == 0.0 {
            return 0.0;
        }
        let mut poly = 0.0;
        for (i, c) in coeffs.iter().enumerate() {
            let j = i + 1;
            match weight.derivative(j, s) {
                Some(d) => poly += c * (x - s).powi(i as i32) * d,
                None => {
                    failure.borrow_mut().get_or_insert(Error::MissingDerivative(j));
                    return 0.0;
                }
            }
        }
        poly * s.powi(alpha as i32) * mean
    };
    let mut cuts = vec![0.0];
    cuts.extend(mu.atoms().iter().map(|a| a.position).filter(|&p| p > 0.0 && p < x));
    cuts.push(x);
    let body = integrate_piecewise(integrand, &cuts, &opts)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(head + body.value / x.powi(alpha as i32))
}
