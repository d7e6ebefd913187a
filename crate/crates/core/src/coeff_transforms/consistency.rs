//! The consistency identities between the two directions of the
//! lambda/omega coefficient maps.

use serde::Serialize;

use super::brackets::{lambda_from_omega_factor, lambda_log_bracket, log_coefficient_factor, omega_from_lambda_factor};
use crate::error::{Error, Result};
use crate::exact_scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `s > m` and `s - m` odd.
    OddPositive,
    /// `s <= m` or `s - m` even.
    Regular,
}

/// Evaluated left sides of the three identities on the branch selected by `s - m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub alpha: u32,
    pub m: u32,
    pub s: u32,
    pub branch: Branch,
    /// Product of the log bracket and the log factor; expected 1.
    pub log_product: Option<Rational>,
    /// Product of the two regular brackets; expected 1.
    pub regular_product: Option<Rational>,
    /// The lambda bracket plus `2^alpha` at odd-positive slots; expected 0.
    pub coincidence: Option<Rational>,
}

impl ConsistencyReport {
    pub fn passes(&self) -> bool {
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        match self.branch {
            Branch::Regular => self.regular_product.as_ref() == Some(&one),
            Branch::OddPositive => self.log_product.as_ref() == Some(&one) && self.coincidence.as_ref() == Some(&zero),
        }
    }
}

/// Evaluates the identities for one `(alpha, m, s)`.
///
/// `s` may exceed `alpha` as long as every factor is defined; undefined
/// factors are reported as pole errors.
pub fn verify_consistency(alpha: u32, m: u32, s: u32) -> Result<ConsistencyReport> {
    if alpha == 0 || m == 0 {
        return Err(Error::InvalidArgument("need alpha >= 1 and m >= 1".into()));
    }
    let (a, mi, si) = (alpha as i64, m as i64, s as i64);
    let odd_positive = si > mi && (si - mi) % 2 == 1;
    let mut report = ConsistencyReport {
        alpha,
        m,
        s,
        branch: if odd_positive {
            Branch::OddPositive
        } else {
            Branch::Regular
        },
        log_product: None,
        regular_product: None,
        coincidence: None,
    };
    if odd_positive {
        report.log_product = Some(lambda_log_bracket(a, mi, si)? * log_coefficient_factor(a, mi, si)?);
        report.coincidence = Some(lambda_from_omega_factor(a, mi, si)?);
    } else {
        report.regular_product = Some(lambda_from_omega_factor(a, mi, si)? * omega_from_lambda_factor(a, mi, si)?);
    }
    Ok(report)
}
