//! Heat and cylinder kernels `int exp(-lambda t) dmu`, `int exp(-omega t) dmu`
//! of spectral measures, with certified truncation.

use serde::{Deserialize, Serialize};

use crate::coeff_transforms::KernelKind;
use crate::error::{Error, Result};
use crate::quadrature::QuadratureOptions;
use crate::riesz_engine::{density_integral, DecayKernel, SpectralMeasure, Variable};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    /// Bound on the contribution of the atoms beyond the listed ones.
    pub truncation_bound: f64,
}

fn decay(kind: KernelKind, t: f64, lambda: f64) -> f64 {
    match kind {
        KernelKind::Heat => (-lambda * t).exp(),
        KernelKind::Cylinder => (-lambda.sqrt() * t).exp(),
    }
}

/// The kernel of `kind` at `t`; fails when the omitted atoms could
/// contribute more than `tol`.
pub fn kernel_from_measure(mu: &SpectralMeasure, kind: KernelKind, t: f64, tol: f64) -> Result<KernelValue> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("need t > 0, got {t}")));
    }
    let truncation_bound = match mu.envelope() {
        Some(env) => {
            let k = match kind {
                KernelKind::Heat => DecayKernel::Heat,
                KernelKind::Cylinder => DecayKernel::Cylinder,
            };
            let bound = env.tail_bound(k, t);
            if !(bound <= tol) {
                return Err(Error::TailBound(format!(
                    "omitted atoms beyond {} may contribute {bound:e} > {tol:e} at t = {t}",
                    env.cutoff
                )));
            }
            bound
        }
        None => 0.0,
    };
    let to_lambda = |sigma: f64| mu.variable().convert(Variable::Lambda, sigma);
    let atoms: f64 = mu
        .atoms()
        .iter()
        .rev()
        .map(|a| a.weight * decay(kind, t, to_lambda(a.position)))
        .sum();
    let density = match mu.density() {
        Some(d) => {
            let opts = QuadratureOptions::with_rel_tol(1e-13);
            density_integral(d, mu.variable(), None, |sigma| decay(kind, t, to_lambda(sigma)), &opts)?.value
        }
        None => 0.0,
    };
    Ok(KernelValue {
        value: atoms + density,
        truncation_bound,
    })
}

/// `K(t) = int exp(-lambda t) dmu(lambda)`.
pub fn heat_trace(mu: &SpectralMeasure, t: f64, tol: f64) -> Result<f64> {
    Ok(kernel_from_measure(mu, KernelKind::Heat, t, tol)?.value)
}

/// `T(t) = int exp(-omega t) dmu(omega)`.
pub fn cylinder_trace(mu: &SpectralMeasure, t: f64, tol: f64) -> Result<f64> {
    Ok(kernel_from_measure(mu, KernelKind::Cylinder, t, tol)?.value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSamples {
    pub kind: KernelKind,
    pub points: Vec<(f64, f64)>,
    /// Largest truncation bound over the samples.
    pub truncation_bound: f64,
}

pub fn sample_kernel(mu: &SpectralMeasure, kind: KernelKind, ts: &[f64], tol: f64) -> Result<KernelSamples> {
    if ts.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::InvalidArgument("t grid must increase strictly".into()));
    }
    let mut points = Vec::with_capacity(ts.len());
    let mut truncation_bound: f64 = 0.0;
    for &t in ts {
        let v = kernel_from_measure(mu, kind, t, tol)?;
        truncation_bound = truncation_bound.max(v.truncation_bound);
        points.push((t, v.value));
    }
    Ok(KernelSamples {
        kind,
        points,
        truncation_bound,
    })
}
