//! Least-squares estimates of small-`t` kernel expansion coefficients.

use serde::{Deserialize, Serialize};

use super::traces::KernelSamples;
use crate::coeff_transforms::{is_log_slot, KernelKind};
use crate::error::{Error, Result};
use crate::exact_scalar::{int, rat};
use crate::riesz_engine::{fit_points, BasisTerm, FitSpec, Weighting};

/// Default geometric sampling window in `t`.
pub const DEFAULT_FIT_WINDOW: (f64, f64) = (0.02, 0.5);
pub const DEFAULT_FIT_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlotEstimate {
    pub s: usize,
    #[serde(flatten)]
    pub value: Estimate,
    /// Coefficient of the `ln t` companion at log slots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log: Option<Estimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionEstimate {
    pub m: u32,
    pub kind: KernelKind,
    pub coeffs: Vec<SlotEstimate>,
    pub window: (f64, f64),
    pub condition: f64,
    pub residual_norm: f64,
}

impl ExpansionEstimate {
    pub fn value(&self, s: usize) -> Option<f64> {
        self.coeffs.get(s).map(|c| c.value.estimate)
    }
}

/// Which kernel-basis functions to include beyond the plain powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionBasis {
    /// Include `t^(s-m) ln t` at the log slots of a cylinder expansion.
    pub log_terms: bool,
}

impl Default for ExpansionBasis {
    fn default() -> Self {
        Self { log_terms: true }
    }
}

/// Heat: `sum b_s t^((s-m)/2)`. Cylinder: `sum e_s t^(s-m)` plus
/// `f_s t^(s-m) ln t` at log slots. Fitted in relative least squares.
pub fn fit_kernel_expansion(samples: &KernelSamples, m: u32, smax: usize) -> Result<ExpansionEstimate> {
    fit_kernel_expansion_with(samples, m, smax, ExpansionBasis::default())
}

pub fn fit_kernel_expansion_with(
    samples: &KernelSamples,
    m: u32,
    smax: usize,
    basis: ExpansionBasis,
) -> Result<ExpansionEstimate> {
    if m == 0 {
        return Err(Error::InvalidArgument("dimension m must be positive".into()));
    }
    let (first, last) = match (samples.points.first(), samples.points.last()) {
        (Some(a), Some(b)) => (a.0, b.0),
        _ => return Err(Error::InvalidArgument("no kernel samples".into())),
    };
    let mi = m as i64;
    let mut terms = Vec::new();
    let mut slots = Vec::new();
    for s in 0..=smax {
        let si = s as i64;
        match samples.kind {
            KernelKind::Heat => {
                terms.push(BasisTerm::power(rat(si - mi, 2)));
                slots.push((s, false));
            }
            KernelKind::Cylinder => {
                terms.push(BasisTerm::power(int(si - mi)));
                slots.push((s, false));
                if basis.log_terms && is_log_slot(m, s) {
                    terms.push(BasisTerm::log(int(si - mi)));
                    slots.push((s, true));
                }
            }
        }
    }
    let spec = FitSpec::new(terms, (first, last), Weighting::Relative)?;
    let fit = fit_points(&samples.points, &spec)?;
    let mut coeffs: Vec<SlotEstimate> = Vec::with_capacity(smax + 1);
    for (i, &(s, log)) in slots.iter().enumerate() {
        let e = Estimate {
            estimate: fit.coefficients[i],
            stderr: fit.std_errors[i],
        };
        if log {
            coeffs[s].log = Some(e);
        } else {
            coeffs.push(SlotEstimate { s, value: e, log: None });
        }
    }
    Ok(ExpansionEstimate {
        m,
        kind: samples.kind,
        coeffs,
        window: (first, last),
        condition: fit.condition,
        residual_norm: fit.residual_norm,
    })
}
