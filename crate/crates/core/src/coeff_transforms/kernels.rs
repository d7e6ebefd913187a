//! Coefficients of the two change-of-variable formulas for Riesz means.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_scalar::{binomial, factorial, falling_ratio, int, Rational};

/// Coefficients of `sigma^j lambda^(-j-1)`, `j = 0..alpha-1`, in the kernel
/// relating means in `lambda` and in `w = lambda^(1/k)`.
pub fn hardy_kernel_coeffs(k: &Rational, alpha: u32) -> Result<Vec<(u32, Rational)>> {
    if *k <= Rational::zero() || k.is_one() {
        return Err(Error::InvalidArgument(format!("need k > 0, k != 1, got {k}")));
    }
    if alpha == 0 {
        return Err(Error::InvalidArgument("need alpha >= 1".into()));
    }
    let a = alpha as i64;
    (0..alpha)
        .map(|j| {
            let ji = j as i64;
            let sign = if (a - ji) % 2 == 0 { int(1) } else { int(-1) };
            let x = k * int(ji + 1);
            let ratio = falling_ratio(&x, a)?;
            let denom = factorial(j as u64) * factorial((a - 1 - ji) as u64);
            Ok((j, sign * ratio / denom))
        })
        .collect()
}

/// Coefficients `b_beta` of `v^beta` in `[sum_{j=1}^{k} (-1)^(j-1) C(k,j) v^j]^alpha`,
/// `beta = alpha..alpha*k`.
pub fn hormander_weights(k: u32, alpha: u32) -> Result<BTreeMap<u32, Rational>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need integer k >= 2, got {k}")));
    }
    let base: Vec<Rational> = (0..=k)
        .map(|j| {
            if j == 0 {
                Rational::zero()
            } else {
                let sign = if j % 2 == 1 { int(1) } else { int(-1) };
                sign * binomial(k as u64, j as u64)
            }
        })
        .collect();
    let mut poly = vec![Rational::one()];
    for _ in 0..alpha {
        let mut next = vec![Rational::zero(); poly.len() + base.len() - 1];
        for (i, p) in poly.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += p * b;
            }
        }
        poly = next;
    }
    Ok(poly
        .into_iter()
        .enumerate()
        .filter(|(beta, _)| *beta as u32 >= alpha)
        .map(|(beta, b)| (beta as u32, b))
        .collect())
}
