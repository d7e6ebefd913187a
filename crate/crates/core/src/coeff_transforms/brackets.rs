//! Rational factors converting between lambda-mean and omega-mean
//! coefficients of a fixed order.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_scalar::{factorial, gamma_ratio, int, pow2, rat, Rational};

fn signed_unit(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn fact(n: i64, what: &str) -> Result<Rational> {
    if n < 0 {
        return Err(Error::Pole(format!("factorial of {n} in {what}")));
    }
    Ok(factorial(n as u64))
}

fn nonzero_recip(x: Rational, what: &str) -> Result<Rational> {
    if x.is_zero() {
        return Err(Error::Pole(format!("vanishing denominator in {what}")));
    }
    Ok(x.recip())
}

/// Sum over `j = [alpha/2]..alpha-1` of
/// `(-1)^(alpha-j) (m/2 - s/2 + j + 1)^(-power) / (j! (alpha-1-j)!) * Gamma(2j+2)/Gamma(2j+2-alpha)`.
fn lambda_sum(alpha: i64, m: i64, s: i64, power: i32) -> Result<Rational> {
    let mut acc = Rational::zero();
    for j in (alpha / 2)..alpha {
        let base = rat(m - s, 2) + int(j + 1);
        let inv = nonzero_recip(base, "lambda bracket")?;
        let weight =
            signed_unit(alpha - j) * inv.pow(power) / (factorial(j as u64) * factorial((alpha - 1 - j) as u64));
        acc += weight * gamma_ratio(&int(2 * j + 2), alpha)?;
    }
    Ok(acc)
}

/// Bracket turning `c_{alpha s}` into `a_{alpha s}` (without the `2^alpha` term).
pub fn lambda_bracket(alpha: i64, m: i64, s: i64) -> Result<Rational> {
    lambda_sum(alpha, m, s, 1)
}

/// Bracket turning `d_{alpha s}` into `a_{alpha s}` at log slots.
pub fn lambda_log_bracket(alpha: i64, m: i64, s: i64) -> Result<Rational> {
    Ok(lambda_sum(alpha, m, s, 2)? * rat(-1, 2))
}

/// Bracket turning `a_{alpha s}` into `c_{alpha s}` (without the `2^-alpha` term).
pub fn omega_bracket(alpha: i64, m: i64, s: i64) -> Result<Rational> {
    let mut acc = Rational::zero();
    for j in (0..alpha).step_by(2) {
        let inv = nonzero_recip(int(m - s + j + 1), "omega bracket")?;
        let weight = signed_unit(alpha - j) * inv / (factorial(j as u64) * factorial((alpha - 1 - j) as u64));
        acc += weight * gamma_ratio(&rat(j + 1, 2), alpha)?;
    }
    Ok(acc)
}

/// Factor turning `a_{alpha s}` into `d_{alpha s}` at log slots.
pub fn log_coefficient_factor(alpha: i64, m: i64, s: i64) -> Result<Rational> {
    let denom = fact(s - m - 1, "log coefficient factor")? * fact(m - s + alpha, "log coefficient factor")?;
    Ok(signed_unit(alpha + m - s + 1) * gamma_ratio(&rat(s - m, 2), alpha)? / denom)
}

/// The diagonal log factor written with `Gamma(-m/2 - s/2)` in the
/// denominator; must equal `log_coefficient_factor(s, m, s)`.
pub fn diagonal_log_factor(m: i64, s: i64) -> Result<Rational> {
    let denom = fact(s - m - 1, "diagonal log factor")? * fact(m, "diagonal log factor")?;
    // Gamma((s-m)/2) / Gamma(-(m+s)/2) = gamma_ratio((s-m)/2, s)
    Ok(signed_unit(m + 1) * gamma_ratio(&rat(s - m, 2), s)? / denom)
}

/// Coefficient of `d_ss` in `c_{alpha s}` for `alpha < s - m`, `s - m` odd:
/// `(-1)^(s-m-alpha-1) (s-m-alpha-1)! alpha! m! / s!`.
pub fn omega_low_order_factor(m: i64, s: i64, alpha: i64) -> Result<Rational> {
    let n = s - m - alpha - 1;
    let f = fact(n, "low order omega factor")?;
    Ok(signed_unit(n) * f * factorial(alpha as u64) * factorial(m as u64) / factorial(s as u64))
}

/// Full lambda-from-omega factor `lambda_bracket + 2^alpha`.
pub(crate) fn lambda_from_omega_factor(alpha: i64, m: i64, s: i64) -> Result<Rational> {
    Ok(lambda_bracket(alpha, m, s)? + pow2(alpha))
}

/// Full omega-from-lambda factor `omega_bracket + 2^-alpha`.
pub(crate) fn omega_from_lambda_factor(alpha: i64, m: i64, s: i64) -> Result<Rational> {
    Ok(omega_bracket(alpha, m, s)? + pow2(-alpha))
}
