//! Derivatives of the Laplace weights `exp(-w^2 t)` and `exp(-t sqrt(lambda))`.

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_scalar::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    /// `exp(-w^2 t)` as a function of `w`.
    Gaussian,
    /// `exp(-t sqrt(lambda))` as a function of `lambda`.
    SqrtExp,
}

/// `z_i` with `d^j/dw^j exp(-w^2 t) = exp(-w^2 t) sum_i z_i w^(j-2i) t^(j-i)`.
pub fn gaussian_derivative_coeffs(j: usize) -> Vec<Rational> {
    let mut z = vec![int(1)];
    for order in 0..j {
        let mut next = vec![Rational::zero(); order.div_ceil(2) + 1];
        for (i, c) in z.iter().enumerate() {
            let power = (order - 2 * i) as i64;
            if power > 0 {
                next[i + 1] += c * int(power);
            }
            next[i] += c * int(-2);
        }
        z = next;
    }
    z
}

/// `y_i` with `d^j/dl^j exp(-t sqrt(l)) = exp(-t sqrt(l)) sum_i y_i t^i l^(-j+i/2)`.
pub fn sqrt_exp_derivative_coeffs(j: usize) -> Vec<Rational> {
    let mut y = vec![int(1)];
    for order in 0..j {
        let mut next = vec![Rational::zero(); order + 2];
        for (i, c) in y.iter().enumerate() {
            let exponent = rat(i as i64 - 2 * order as i64, 2);
            next[i] += c * exponent;
            next[i + 1] += c * rat(-1, 2);
        }
        y = next;
    }
    y
}

/// Value of the `j`-th derivative of the weight at `point` (`w` or `lambda`).
pub fn weight_derivs(kind: WeightKind, j: usize, t: f64, point: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("need t > 0, got {t}")));
    }
    match kind {
        WeightKind::Gaussian => {
            let z = gaussian_derivative_coeffs(j);
            let poly: f64 = z
                .iter()
                .enumerate()
                .map(|(i, c)| c.to_f64().unwrap_or(f64::NAN) * point.powi((j - 2 * i) as i32) * t.powi((j - i) as i32))
                .sum();
            Ok(poly * (-point * point * t).exp())
        }
        WeightKind::SqrtExp => {
            if !(point > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "sqrt-exp weight needs a positive point, got {point}"
                )));
            }
            let y = sqrt_exp_derivative_coeffs(j);
            let root = point.sqrt();
            let poly: f64 = y
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    c.to_f64().unwrap_or(f64::NAN) * t.powi(i as i32) * point.powf(-(j as f64) + i as f64 / 2.0)
                })
                .sum();
            Ok(poly * (-t * root).exp())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_tables() {
        assert_eq!(gaussian_derivative_coeffs(1), vec![int(-2)]);
        assert_eq!(gaussian_derivative_coeffs(2), vec![int(4), int(-2)]);
        assert_eq!(gaussian_derivative_coeffs(4), vec![int(16), int(-48), int(12)]);
    }

    #[test]
    fn sqrt_exp_tables() {
        assert_eq!(sqrt_exp_derivative_coeffs(1), vec![int(0), rat(-1, 2)]);
        assert_eq!(sqrt_exp_derivative_coeffs(2), vec![int(0), rat(1, 4), rat(1, 4)]);
        let y3 = sqrt_exp_derivative_coeffs(3);
        assert_eq!(y3, vec![int(0), rat(-3, 8), rat(-3, 8), rat(-1, 8)]);
    }

    #[test]
    fn values_match_closed_forms() {
        let (t, w) = (0.7, 1.3);
        let g1 = weight_derivs(WeightKind::Gaussian, 1, t, w).unwrap();
        assert!((g1 - (-2.0 * w * t * (-w * w * t).exp())).abs() < 1e-15);
        let l = 2.5;
        let s2 = weight_derivs(WeightKind::SqrtExp, 2, t, l).unwrap();
        let expected = (-t * l.sqrt()).exp() * (0.25 * t * t / l + 0.25 * t * l.powf(-1.5));
        assert!((s2 - expected).abs() < 1e-15);
        assert!(weight_derivs(WeightKind::SqrtExp, 1, t, 0.0).is_err());
    }

    fn finite_difference<F: Fn(f64) -> f64>(f: F, x: f64, order: usize, h: f64) -> f64 {
        // central difference of the given order, Richardson-extrapolated once
        let stencil = |h: f64| -> f64 {
            (0..=order)
                .map(|k| {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    let c = (1..=k).fold(1.0, |acc, i| acc * (order + 1 - i) as f64 / i as f64);
                    sign * c * f(x + (order as f64 / 2.0 - k as f64) * h)
                })
                .sum::<f64>()
                / h.powi(order as i32)
        };
        (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0
    }

    #[test]
    fn finite_differences_agree() {
        let t = 0.6;
        for j in 1..=4 {
            let h = 0.02;
            let fd = finite_difference(|w| (-w * w * t).exp(), 0.9, j, h);
            let exact = weight_derivs(WeightKind::Gaussian, j, t, 0.9).unwrap();
            assert!((fd - exact).abs() < 1e-6 * exact.abs().max(1.0), "gaussian j = {j}");
            let fd = finite_difference(|l| (-t * l.sqrt()).exp(), 2.0, j, h);
            let exact = weight_derivs(WeightKind::SqrtExp, j, t, 2.0).unwrap();
            assert!((fd - exact).abs() < 1e-6 * exact.abs().max(1.0), "sqrt-exp j = {j}");
        }
    }
}
