//! Maps between diagonal (`alpha = s`) coefficient families and kernel
//! expansion coefficients.

use super::brackets::{
    lambda_from_omega_factor, lambda_log_bracket, log_coefficient_factor, omega_from_lambda_factor,
    diagonal_log_factor,
};
use super::{is_log_slot, Coeff, CylinderExpansion, DiagonalLambdaCoeffs, DiagonalOmegaCoeffs, HeatExpansion};
use crate::error::{Error, Result};
use crate::exact_scalar::{factorial, gamma_half, int, psi_eval, ExactScalar, Rational};

/// `Gamma(m/2 + s/2 + 1) / Gamma(s + 1)`.
fn heat_factor(m: u32, s: usize) -> ExactScalar {
    let g = gamma_half(m as i64 + s as i64 + 2).finite().expect("positive argument");
    g.scale(&factorial(s as u64).recip())
}

/// `m! / s!`.
fn cylinder_factor(m: u32, s: usize) -> Rational {
    factorial(m as u64) / factorial(s as u64)
}

pub fn heat_from_lambda_diag(d: &DiagonalLambdaCoeffs) -> Result<HeatExpansion> {
    let b = d
        .a()
        .iter()
        .enumerate()
        .map(|(s, a)| heat_factor(d.m(), s).try_mul(a))
        .collect::<Result<Vec<_>>>()?;
    HeatExpansion::new(d.m(), b)
}

pub fn lambda_diag_from_heat(h: &HeatExpansion) -> Result<DiagonalLambdaCoeffs> {
    let a = h
        .b()
        .iter()
        .enumerate()
        .map(|(s, b)| b.try_div(&heat_factor(h.m(), s)))
        .collect::<Result<Vec<_>>>()?;
    DiagonalLambdaCoeffs::new(h.m(), a)
}

pub fn omega_diag_from_lambda_diag(d: &DiagonalLambdaCoeffs) -> Result<DiagonalOmegaCoeffs> {
    let m = d.m();
    let mut c = Vec::with_capacity(d.a().len());
    let mut dd = Vec::with_capacity(d.a().len());
    for (s, a) in d.a().iter().enumerate() {
        let (mi, si) = (m as i64, s as i64);
        if is_log_slot(m, s) {
            let factor = log_coefficient_factor(si, mi, si)?;
            let direct = diagonal_log_factor(mi, si)?;
            if factor != direct {
                return Err(Error::Cancellation(format!(
                    "diagonal log factor mismatch at m = {m}, s = {s}: {factor} vs {direct}"
                )));
            }
            c.push(Coeff::Undetermined);
            dd.push(a.scale(&factor));
        } else {
            c.push(Coeff::Known(a.scale(&omega_from_lambda_factor(si, mi, si)?)));
            dd.push(ExactScalar::zero());
        }
    }
    DiagonalOmegaCoeffs::new(m, c, dd)
}

pub fn lambda_diag_from_omega_diag(d: &DiagonalOmegaCoeffs) -> Result<DiagonalLambdaCoeffs> {
    let m = d.m();
    let a = (0..d.c().len())
        .map(|s| {
            let (mi, si) = (m as i64, s as i64);
            if is_log_slot(m, s) {
                Ok(d.d()[s].scale(&lambda_log_bracket(si, mi, si)?))
            } else {
                Ok(d.c()[s].known(s)?.scale(&lambda_from_omega_factor(si, mi, si)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    DiagonalLambdaCoeffs::new(m, a)
}

pub fn cylinder_from_omega_diag(d: &DiagonalOmegaCoeffs) -> Result<CylinderExpansion> {
    let m = d.m();
    let psi = psi_eval(&int(m as i64 + 1))?;
    let mut e = Vec::with_capacity(d.c().len());
    let mut f = Vec::with_capacity(d.c().len());
    for s in 0..d.c().len() {
        let k = cylinder_factor(m, s);
        if is_log_slot(m, s) {
            let dss = &d.d()[s];
            let shift = psi.try_mul(dss)?;
            e.push(d.c()[s].map(|c| Ok((c + &shift).scale(&k)))?);
            f.push(dss.scale(&-k));
        } else {
            e.push(Coeff::Known(d.c()[s].known(s)?.scale(&k)));
            f.push(ExactScalar::zero());
        }
    }
    CylinderExpansion::new(m, e, f)
}

pub fn omega_diag_from_cylinder(x: &CylinderExpansion) -> Result<DiagonalOmegaCoeffs> {
    let m = x.m();
    let psi = psi_eval(&int(m as i64 + 1))?;
    let mut c = Vec::with_capacity(x.e().len());
    let mut d = Vec::with_capacity(x.e().len());
    for s in 0..x.e().len() {
        let inv = cylinder_factor(m, s).recip();
        if is_log_slot(m, s) {
            let dss = x.f()[s].scale(&-inv.clone());
            let shift = psi.try_mul(&dss)?;
            c.push(x.e()[s].map(|e| Ok(&e.scale(&inv) - &shift))?);
            d.push(dss);
        } else {
            c.push(Coeff::Known(x.e()[s].known(s)?.scale(&inv)));
            d.push(ExactScalar::zero());
        }
    }
    DiagonalOmegaCoeffs::new(m, c, d)
}
