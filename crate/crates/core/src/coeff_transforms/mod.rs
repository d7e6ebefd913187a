//! Exact coefficient algebra linking lambda-means, omega-means and the heat
//! and cylinder kernel expansions.

mod brackets;
mod consistency;
mod diagonal;
pub mod io;
mod kernels;
mod linear;
mod pipeline;
mod tables;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_scalar::ExactScalar;

pub use brackets::{
    lambda_bracket, lambda_log_bracket, log_coefficient_factor, omega_bracket, omega_low_order_factor,
    diagonal_log_factor,
};
pub use consistency::{verify_consistency, Branch, ConsistencyReport};
pub use diagonal::{
    cylinder_from_omega_diag, heat_from_lambda_diag, lambda_diag_from_heat, lambda_diag_from_omega_diag,
    omega_diag_from_cylinder, omega_diag_from_lambda_diag,
};
pub use kernels::{hardy_kernel_coeffs, hormander_weights};
pub use linear::{LinearForm, Symbol};
pub use pipeline::{
    cylinder_pipeline_from_lambda, cylinder_pipeline_symbolic, heat_pipeline_from_omega, heat_pipeline_symbolic,
    moment_map, MomentVariable, SymbolicTerm,
};
pub use tables::{
    lambda_full_from_omega, lambda_table_from_diag, omega_full_from_lambda, omega_table_from_diag, CoeffTable,
    LambdaTable, OmegaRow, OmegaTable,
};

/// Whether slot `s` carries a logarithm in dimension `m`: `s > m` and `s - m` odd.
pub fn is_log_slot(m: u32, s: usize) -> bool {
    let (m, s) = (m as i64, s as i64);
    s > m && (s - m) % 2 == 1
}

/// A coefficient that is either known exactly or not recoverable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Known(ExactScalar),
    Undetermined,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Known(ExactScalar::zero())
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self, Coeff::Undetermined)
    }

    /// The value, or an error naming slot `s` when undetermined.
    pub fn known(&self, s: usize) -> Result<&ExactScalar> {
        match self {
            Coeff::Known(v) => Ok(v),
            Coeff::Undetermined => Err(Error::Undetermined { s }),
        }
    }

    pub fn as_known(&self) -> Option<&ExactScalar> {
        match self {
            Coeff::Known(v) => Some(v),
            Coeff::Undetermined => None,
        }
    }

    pub fn map<F>(&self, f: F) -> Result<Coeff>
    where
        F: FnOnce(&ExactScalar) -> Result<ExactScalar>,
    {
        match self {
            Coeff::Known(v) => Ok(Coeff::Known(f(v)?)),
            Coeff::Undetermined => Ok(Coeff::Undetermined),
        }
    }
}

impl From<ExactScalar> for Coeff {
    fn from(v: ExactScalar) -> Self {
        Coeff::Known(v)
    }
}

fn check_dimension(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("dimension m must be at least 1".into()));
    }
    Ok(())
}

/// Diagonal lambda-mean coefficients `a_ss`, `s = 0..=S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalLambdaCoeffs {
    m: u32,
    a: Vec<ExactScalar>,
}

impl DiagonalLambdaCoeffs {
    pub fn new(m: u32, a: Vec<ExactScalar>) -> Result<Self> {
        check_dimension(m)?;
        Ok(Self { m, a })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> &[ExactScalar] {
        &self.a
    }

    pub fn max_order(&self) -> usize {
        self.a.len().saturating_sub(1)
    }
}

/// Diagonal omega-mean coefficients `c_ss` and `d_ss`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalOmegaCoeffs {
    m: u32,
    c: Vec<Coeff>,
    d: Vec<ExactScalar>,
}

impl DiagonalOmegaCoeffs {
    /// Validates that `d` vanishes off the log slots and that only log slots
    /// are undetermined.
    pub fn new(m: u32, c: Vec<Coeff>, d: Vec<ExactScalar>) -> Result<Self> {
        check_dimension(m)?;
        if c.len() != d.len() {
            return Err(Error::InvalidArgument(format!(
                "c has {} entries but d has {}",
                c.len(),
                d.len()
            )));
        }
        for s in 0..c.len() {
            if !is_log_slot(m, s) {
                if !d[s].is_zero() {
                    return Err(Error::InvalidArgument(format!("d at s = {s} must vanish for m = {m}")));
                }
                if c[s].is_undetermined() {
                    return Err(Error::InvalidArgument(format!(
                        "c at s = {s} cannot be undetermined for m = {m}"
                    )));
                }
            }
        }
        Ok(Self { m, c, d })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn c(&self) -> &[Coeff] {
        &self.c
    }

    pub fn d(&self) -> &[ExactScalar] {
        &self.d
    }

    pub fn max_order(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    /// Changes the log scale `ln w -> ln(kappa w)` with `ln kappa = shift`:
    /// `c_ss -> c_ss - shift * d_ss`.
    pub fn rescale_log(&self, shift: &ExactScalar) -> Result<Self> {
        let c = self
            .c
            .iter()
            .zip(&self.d)
            .map(|(c, d)| c.map(|v| Ok(v - &shift.try_mul(d)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            m: self.m,
            c,
            d: self.d.clone(),
        })
    }
}

/// Heat kernel expansion coefficients `b_s` of `t^(-m/2 + s/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeatExpansion {
    m: u32,
    b: Vec<ExactScalar>,
}

impl HeatExpansion {
    pub fn new(m: u32, b: Vec<ExactScalar>) -> Result<Self> {
        check_dimension(m)?;
        Ok(Self { m, b })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn b(&self) -> &[ExactScalar] {
        &self.b
    }
}

/// Cylinder kernel expansion: `e_s t^(-m+s)` plus `f_s t^(-m+s) ln t` at log slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderExpansion {
    m: u32,
    e: Vec<Coeff>,
    f: Vec<ExactScalar>,
}

impl CylinderExpansion {
    pub fn new(m: u32, e: Vec<Coeff>, f: Vec<ExactScalar>) -> Result<Self> {
        check_dimension(m)?;
        if e.len() != f.len() {
            return Err(Error::InvalidArgument(format!(
                "e has {} entries but f has {}",
                e.len(),
                f.len()
            )));
        }
        for s in 0..e.len() {
            if !is_log_slot(m, s) {
                if !f[s].is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "log coefficient at s = {s} must vanish for m = {m}"
                    )));
                }
                if e[s].is_undetermined() {
                    return Err(Error::InvalidArgument(format!(
                        "e at s = {s} cannot be undetermined for m = {m}"
                    )));
                }
            }
        }
        Ok(Self { m, e, f })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> &[Coeff] {
        &self.e
    }

    pub fn f(&self) -> &[ExactScalar] {
        &self.f
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Heat,
    Cylinder,
}

/// Either kind of kernel expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelExpansion {
    Heat(HeatExpansion),
    Cylinder(CylinderExpansion),
}

impl KernelExpansion {
    pub fn kind(&self) -> KernelKind {
        match self {
            KernelExpansion::Heat(_) => KernelKind::Heat,
            KernelExpansion::Cylinder(_) => KernelKind::Cylinder,
        }
    }

    pub fn m(&self) -> u32 {
        match self {
            KernelExpansion::Heat(h) => h.m,
            KernelExpansion::Cylinder(c) => c.m,
        }
    }
}

/// One term `coefficient * t^power * (ln t)^{0|1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTerm {
    pub power: crate::exact_scalar::Rational,
    pub has_log: bool,
    pub coefficient: ExactScalar,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_slots() {
        assert!(is_log_slot(1, 2));
        assert!(!is_log_slot(1, 3));
        assert!(!is_log_slot(1, 0));
        assert!(is_log_slot(2, 3));
        assert!(is_log_slot(2, 5));
        assert!(!is_log_slot(3, 2));
    }

    #[test]
    fn omega_diag_validation() {
        let zero = ExactScalar::zero();
        assert!(DiagonalOmegaCoeffs::new(
            1,
            vec![Coeff::zero(), Coeff::Undetermined],
            vec![zero.clone(), zero.clone()]
        )
        .is_err());
        assert!(DiagonalOmegaCoeffs::new(
            1,
            vec![Coeff::zero(), Coeff::zero(), Coeff::Undetermined],
            vec![zero.clone(), zero.clone(), ExactScalar::one()]
        )
        .is_ok());
        assert!(DiagonalOmegaCoeffs::new(1, vec![Coeff::zero()], vec![ExactScalar::one()]).is_err());
        assert!(DiagonalLambdaCoeffs::new(0, vec![]).is_err());
    }

    #[test]
    fn log_rescaling_shifts_c_by_d() {
        let d = DiagonalOmegaCoeffs::new(
            1,
            vec![Coeff::zero(), Coeff::zero(), Coeff::Known(ExactScalar::from(3))],
            vec![ExactScalar::zero(), ExactScalar::zero(), ExactScalar::from(2)],
        )
        .unwrap();
        let r = d.rescale_log(&ExactScalar::ln2()).unwrap();
        let expected = &ExactScalar::from(3) - &ExactScalar::ln2().scale(&crate::exact_scalar::int(2));
        assert_eq!(r.c()[2], Coeff::Known(expected));
    }
}
