//! Riesz means and Riesz integrals of spectral measures.

use serde::{Deserialize, Serialize};

use super::measure::{Density, DensityProfile, SpectralMeasure, Variable};
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate, integrate_decaying, integrate_piecewise, integrate_to_infinity, Integral, QuadratureOptions,
};

/// `int k(sigma) rho(w) dw` over `sigma < upper` (all `sigma` when `upper`
/// is `None`), `sigma` being the point in `variable` and `w` the density's
/// native coordinate.
pub fn density_integral<K: Fn(f64) -> f64>(
    d: &Density,
    variable: Variable,
    upper: Option<f64>,
    kernel: K,
    opts: &QuadratureOptions,
) -> Result<Integral> {
    let native = d.variable;
    let w_max = upper.map(|x| variable.convert(native, x));
    let at = |w: f64| native.convert(variable, w);
    match &d.profile {
        DensityProfile::PowerLaw { coefficient, exponent } => {
            let e1 = exponent + 1.0;
            let f = |u: f64| kernel(at(u.max(0.0).powf(1.0 / e1))) * coefficient / e1;
            match w_max {
                Some(w) => integrate(f, 0.0, w.powf(e1), opts),
                None => integrate_to_infinity(f, 0.0, opts),
            }
        }
        DensityProfile::Cosines { .. } => {
            let f = |w: f64| kernel(at(w)) * d.profile.value(w);
            match w_max {
                Some(w) => integrate_piecewise(f, &[0.0, w], opts),
                None => integrate_decaying(f, 0.0, 1.0, opts),
            }
        }
        DensityProfile::Table { points } => {
            let top = w_max.unwrap_or(f64::INFINITY);
            let mut cuts: Vec<f64> = points.iter().map(|p| p.0).filter(|&x| x < top).collect();
            if cuts.is_empty() {
                return Ok(Integral::zero());
            }
            cuts.push(top.min(points[points.len() - 1].0));
            integrate_piecewise(|w| kernel(at(w)) * d.profile.value(w), &cuts, opts)
        }
    }
}

fn check_argument(mu: &SpectralMeasure, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "argument must be positive and finite, got {x}"
        )));
    }
    if x > mu.atom_horizon() {
        return Err(Error::TailBound(format!(
            "argument {x} lies beyond the atom cutoff {}",
            mu.atom_horizon()
        )));
    }
    Ok(())
}

/// `int_{sigma < x} (1 - (sigma/x)^q)^alpha dmu(sigma)`; `q = 1` is the
/// ordinary Riesz mean, `q = 1/k` the mean in `omega = lambda^(1/k)`.
///
/// Atoms exactly at `x` are excluded (left continuity).
pub fn power_mean(mu: &SpectralMeasure, alpha: u32, x: f64, q: f64, opts: &QuadratureOptions) -> Result<f64> {
    check_argument(mu, x)?;
    let factor = |sigma: f64| {
        if sigma >= x {
            0.0
        } else {
            (1.0 - (sigma / x).powf(q)).powi(alpha as i32)
        }
    };
    let atoms: f64 = mu
        .atoms()
        .iter()
        .take_while(|a| a.position < x)
        .map(|a| a.weight * factor(a.position))
        .sum();
    let density = match mu.density() {
        Some(d) => density_integral(d, mu.variable(), Some(x), factor, opts)?.value,
        None => 0.0,
    };
    Ok(atoms + density)
}

/// `R^alpha mu(x)` in the measure's own variable.
pub fn riesz_mean(mu: &SpectralMeasure, alpha: u32, x: f64) -> Result<f64> {
    power_mean(mu, alpha, x, 1.0, &QuadratureOptions::default())
}

/// `R^alpha mu` taken with respect to `variable` at the point `x` of that variable.
pub fn riesz_mean_in(mu: &SpectralMeasure, variable: Variable, alpha: u32, x: f64) -> Result<f64> {
    let own = variable.convert(mu.variable(), x);
    let q = match (mu.variable(), variable) {
        (Variable::Lambda, Variable::Omega) => 0.5,
        (Variable::Omega, Variable::Lambda) => 2.0,
        _ => 1.0,
    };
    power_mean(mu, alpha, own, q, &QuadratureOptions::default())
}

/// The Riesz integral `(1/alpha!) int_0^x (x - sigma)^alpha dmu(sigma)`.
pub fn riesz_integral(mu: &SpectralMeasure, alpha: u32, x: f64) -> Result<f64> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("Riesz integral needs alpha >= 1".into()));
    }
    check_argument(mu, x)?;
    let kernel = |sigma: f64| {
        if sigma >= x {
            0.0
        } else {
            (x - sigma).powi(alpha as i32)
        }
    };
    let atoms: f64 = mu
        .atoms()
        .iter()
        .take_while(|a| a.position < x)
        .map(|a| a.weight * kernel(a.position))
        .sum();
    let density = match mu.density() {
        Some(d) => density_integral(d, mu.variable(), Some(x), kernel, &QuadratureOptions::default())?.value,
        None => 0.0,
    };
    let norm: f64 = (1..=alpha).map(f64::from).product();
    Ok((atoms + density) / norm)
}

/// Riesz means of one order on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanSamples {
    pub alpha: u32,
    pub variable: Variable,
    pub points: Vec<(f64, f64)>,
}

pub fn sample_means(mu: &SpectralMeasure, variable: Variable, alpha: u32, xs: &[f64]) -> Result<MeanSamples> {
    if xs.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::InvalidArgument("sample points must increase strictly".into()));
    }
    let points = xs
        .iter()
        .map(|&x| Ok((x, riesz_mean_in(mu, variable, alpha, x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeanSamples {
        alpha,
        variable,
        points,
    })
}

/// `n` points spaced geometrically over `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| lo * (ratio * i as f64).exp()).collect()
}
