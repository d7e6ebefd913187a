//! Dense tables of mean coefficients for all orders up to `alpha_max`.

use num_traits::Zero;

use super::brackets::{
    lambda_from_omega_factor, lambda_log_bracket, log_coefficient_factor, omega_from_lambda_factor,
    omega_low_order_factor,
};
use super::{is_log_slot, Coeff, DiagonalLambdaCoeffs, DiagonalOmegaCoeffs};
use crate::error::{Error, Result};
use crate::exact_scalar::{factorial, gamma_ratio, int, psi_eval, rat, ExactScalar, Rational};

/// Lambda-mean coefficients `a[alpha][s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTable {
    m: u32,
    a: Vec<Vec<ExactScalar>>,
}

/// Omega-mean coefficients `c[alpha][s]`, `d[alpha][s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTable {
    m: u32,
    c: Vec<Vec<Coeff>>,
    d: Vec<Vec<ExactScalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffTable {
    Lambda(LambdaTable),
    Omega(OmegaTable),
}

/// One order of omega-mean coefficients derived from lambda-means.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaRow {
    pub c: Vec<Coeff>,
    pub d: Vec<ExactScalar>,
    pub undetermined: Vec<usize>,
}

fn rectangular<T>(rows: &[Vec<T>]) -> Result<usize> {
    let width = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::InvalidArgument("table rows differ in length".into()));
    }
    Ok(width)
}

impl LambdaTable {
    /// Builds a table and checks the order-lowering recursion
    /// `alpha a[alpha-1][s] = (m/2 - s/2 + alpha) a[alpha][s]`.
    pub fn new(m: u32, a: Vec<Vec<ExactScalar>>) -> Result<Self> {
        super::check_dimension(m)?;
        rectangular(&a)?;
        let t = Self { m, a };
        t.validate()?;
        Ok(t)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha_max(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn s_max(&self) -> usize {
        self.a.first().map(Vec::len).unwrap_or(0).saturating_sub(1)
    }

    pub fn get(&self, alpha: usize, s: usize) -> &ExactScalar {
        &self.a[alpha][s]
    }

    pub fn rows(&self) -> &[Vec<ExactScalar>] {
        &self.a
    }

    fn validate(&self) -> Result<()> {
        let m = self.m as i64;
        for alpha in 1..self.a.len() {
            for s in 0..self.a[alpha].len() {
                let factor = rat(m - s as i64, 2) + int(alpha as i64);
                let lhs = self.a[alpha - 1][s].scale(&int(alpha as i64));
                let rhs = self.a[alpha][s].scale(&factor);
                if lhs != rhs {
                    return Err(Error::Recursion(format!(
                        "lambda table fails at alpha = {alpha}, s = {s}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl OmegaTable {
    /// Builds a table and checks the order-lowering recursions for `c` and `d`.
    pub fn new(m: u32, c: Vec<Vec<Coeff>>, d: Vec<Vec<ExactScalar>>) -> Result<Self> {
        super::check_dimension(m)?;
        let wc = rectangular(&c)?;
        let wd = rectangular(&d)?;
        if c.len() != d.len() || wc != wd {
            return Err(Error::InvalidArgument("c and d tables differ in shape".into()));
        }
        let t = Self { m, c, d };
        t.validate()?;
        Ok(t)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha_max(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn s_max(&self) -> usize {
        self.c.first().map(Vec::len).unwrap_or(0).saturating_sub(1)
    }

    pub fn c(&self, alpha: usize, s: usize) -> &Coeff {
        &self.c[alpha][s]
    }

    pub fn d(&self, alpha: usize, s: usize) -> &ExactScalar {
        &self.d[alpha][s]
    }

    fn validate(&self) -> Result<()> {
        let m = self.m as i64;
        for (alpha, row) in self.c.iter().enumerate() {
            for (s, c) in row.iter().enumerate() {
                if c.is_undetermined() && !is_log_slot(self.m, s) {
                    return Err(Error::Recursion(format!(
                        "undetermined entry at alpha = {alpha}, s = {s} outside a log slot"
                    )));
                }
            }
        }
        for alpha in 1..self.c.len() {
            let a = alpha as i64;
            for s in 0..self.c[alpha].len() {
                let factor = int(m - s as i64 + a);
                let fail = || Error::Recursion(format!("omega table fails at alpha = {alpha}, s = {s}"));
                let d_hi = &self.d[alpha][s];
                let d_lo = &self.d[alpha - 1][s];
                if !is_log_slot(self.m, s) && (!d_hi.is_zero() || !d_lo.is_zero()) {
                    return Err(fail());
                }
                if d_lo.scale(&int(a)) != d_hi.scale(&factor) {
                    return Err(fail());
                }
                match (&self.c[alpha - 1][s], &self.c[alpha][s]) {
                    (Coeff::Known(lo), Coeff::Known(hi)) => {
                        if lo.scale(&int(a)) != &hi.scale(&factor) + d_hi {
                            return Err(fail());
                        }
                    }
                    (Coeff::Known(lo), Coeff::Undetermined) => {
                        if !factor.is_zero() || lo.scale(&int(a)) != *d_hi {
                            return Err(fail());
                        }
                    }
                    (Coeff::Undetermined, Coeff::Undetermined) => {
                        if factor.is_zero() {
                            return Err(fail());
                        }
                    }
                    (Coeff::Undetermined, Coeff::Known(_)) => return Err(fail()),
                }
            }
        }
        Ok(())
    }
}

/// `alpha!/s! * Gamma(m/2+s/2+1)/Gamma(m/2-s/2+alpha+1)`, zero at denominator poles.
fn lambda_order_factor(m: i64, s: i64, alpha: i64) -> Result<Rational> {
    let ratio = gamma_ratio(&(rat(m + s, 2) + int(1)), s - alpha)?;
    Ok(factorial(alpha as u64) / factorial(s as u64) * ratio)
}

/// `alpha! m! / ((m-s+alpha)! s!)`, zero at denominator poles.
fn omega_order_factor(m: i64, s: i64, alpha: i64) -> Result<Rational> {
    let ratio = gamma_ratio(&int(m + 1), s - alpha)?;
    Ok(factorial(alpha as u64) / factorial(s as u64) * ratio)
}

pub fn lambda_table_from_diag(d: &DiagonalLambdaCoeffs, alpha_max: usize) -> Result<LambdaTable> {
    if alpha_max < d.max_order() {
        return Err(Error::InvalidArgument(format!(
            "alpha_max = {alpha_max} is below the diagonal length {}",
            d.max_order()
        )));
    }
    let m = d.m() as i64;
    let a = (0..=alpha_max)
        .map(|alpha| {
            d.a()
                .iter()
                .enumerate()
                .map(|(s, ass)| Ok(ass.scale(&lambda_order_factor(m, s as i64, alpha as i64)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    LambdaTable::new(d.m(), a)
}

pub fn omega_table_from_diag(d: &DiagonalOmegaCoeffs, alpha_max: usize) -> Result<OmegaTable> {
    let m = d.m() as i64;
    let psi_m = psi_eval(&int(m + 1))?;
    let mut c_rows = Vec::with_capacity(alpha_max + 1);
    let mut d_rows = Vec::with_capacity(alpha_max + 1);
    for alpha in 0..=alpha_max {
        let a = alpha as i64;
        let mut c_row = Vec::with_capacity(d.c().len());
        let mut d_row = Vec::with_capacity(d.c().len());
        for s in 0..d.c().len() {
            let si = s as i64;
            let factor = omega_order_factor(m, si, a)?;
            if !is_log_slot(d.m(), s) {
                c_row.push(Coeff::Known(d.c()[s].known(s)?.scale(&factor)));
                d_row.push(ExactScalar::zero());
                continue;
            }
            let dss = &d.d()[s];
            d_row.push(dss.scale(&factor));
            if m - si + a >= 0 {
                let psi_diff = &psi_m - &psi_eval(&int(m - si + a + 1))?;
                let shift = psi_diff.try_mul(dss)?;
                c_row.push(d.c()[s].map(|c| Ok((c + &shift).scale(&factor)))?);
            } else {
                c_row.push(Coeff::Known(dss.scale(&omega_low_order_factor(m, si, a)?)));
            }
        }
        c_rows.push(c_row);
        d_rows.push(d_row);
    }
    OmegaTable::new(d.m(), c_rows, d_rows)
}

/// Omega-mean coefficients of order `alpha` from the lambda-means of the same order.
pub fn omega_full_from_lambda(t: &LambdaTable, alpha: usize) -> Result<OmegaRow> {
    if alpha > t.alpha_max() {
        return Err(Error::InvalidArgument(format!(
            "table stops at order {}, asked for {alpha}",
            t.alpha_max()
        )));
    }
    let m = t.m() as i64;
    let top = alpha.min(t.s_max());
    let mut row = OmegaRow {
        c: Vec::with_capacity(top + 1),
        d: Vec::with_capacity(top + 1),
        undetermined: Vec::new(),
    };
    for s in 0..=top {
        let (a, si) = (alpha as i64, s as i64);
        let value = t.get(alpha, s);
        if is_log_slot(t.m(), s) {
            row.d.push(value.scale(&log_coefficient_factor(a, m, si)?));
            row.c.push(Coeff::Undetermined);
            row.undetermined.push(s);
        } else {
            row.d.push(ExactScalar::zero());
            row.c
                .push(Coeff::Known(value.scale(&omega_from_lambda_factor(a, m, si)?)));
        }
    }
    Ok(row)
}

/// Lambda-mean coefficients of order `alpha` from the omega-means of the same order.
pub fn lambda_full_from_omega(t: &OmegaTable, alpha: usize) -> Result<Vec<ExactScalar>> {
    if alpha > t.alpha_max() {
        return Err(Error::InvalidArgument(format!(
            "table stops at order {}, asked for {alpha}",
            t.alpha_max()
        )));
    }
    let m = t.m() as i64;
    (0..=alpha.min(t.s_max()))
        .map(|s| {
            let (a, si) = (alpha as i64, s as i64);
            if is_log_slot(t.m(), s) {
                Ok(t.d(alpha, s).scale(&lambda_log_bracket(a, m, si)?))
            } else {
                Ok(t.c(alpha, s).known(s)?.scale(&lambda_from_omega_factor(a, m, si)?))
            }
        })
        .collect()
}
