//! Exact checks of the product identity between the two lambda/omega
//! bracket factors, their Pochhammer closed forms, and the terminating
//! `3F2` transformation behind them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_scalar::{factorial, gamma_ratio, int, pochhammer, pow2, rat, ExactScalar, Rational};

fn check_order(alpha: u32) -> Result<()> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("order alpha must be at least 1".into()));
    }
    Ok(())
}

fn signed_unit(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn pole_free_recip(x: Rational, z: &Rational) -> Result<Rational> {
    if x.is_zero() {
        return Err(Error::Pole(format!("z = {z} is a pole")));
    }
    Ok(x.recip())
}

/// `sum_{j=[alpha/2]}^{alpha-1} (-1)^(alpha-j) (z/2+j+1)^(-1) / (j!(alpha-1-j)!) * Gamma(2j+2)/Gamma(2j+2-alpha)`.
pub fn first_factor_sum(alpha: u32, z: &Rational) -> Result<Rational> {
    check_order(alpha)?;
    let a = alpha as i64;
    let mut acc = Rational::zero();
    for j in (a / 2)..a {
        let inv = pole_free_recip(z / int(2) + int(j + 1), z)?;
        acc += signed_unit(a - j) * inv * gamma_ratio(&int(2 * j + 2), a)?
            / (factorial(j as u64) * factorial((a - 1 - j) as u64));
    }
    Ok(acc)
}

/// Pochhammer form of [`first_factor_sum`].
pub fn first_factor_closed(alpha: u32, z: &Rational) -> Result<Rational> {
    check_order(alpha)?;
    let a = alpha as i64;
    let half_z = z / int(2);
    let (len, lower) = if alpha.is_multiple_of(2) {
        (alpha / 2, &half_z + rat(a, 2) + int(1))
    } else {
        (alpha.div_ceil(2), &half_z + rat(a + 1, 2))
    };
    let upper = pochhammer(&(&half_z + rat(1, 2)), len as u64);
    let ratio = upper * pole_free_recip(pochhammer(&lower, len as u64), z)?;
    Ok(pow2(a) * ratio - pow2(a))
}

/// `sum_{j even} (-1)^(alpha-j) (z+j+1)^(-1) / (j!(alpha-1-j)!) * Gamma((j+1)/2)/Gamma((j+1)/2-alpha)`.
pub fn second_factor_sum(alpha: u32, z: &Rational) -> Result<Rational> {
    check_order(alpha)?;
    let a = alpha as i64;
    let mut acc = Rational::zero();
    for j in (0..a).step_by(2) {
        let inv = pole_free_recip(z + int(j + 1), z)?;
        acc += signed_unit(a - j) * inv * gamma_ratio(&rat(j + 1, 2), a)?
            / (factorial(j as u64) * factorial((a - 1 - j) as u64));
    }
    Ok(acc)
}

/// Pochhammer form of [`second_factor_sum`].
pub fn second_factor_closed(alpha: u32, z: &Rational) -> Result<Rational> {
    check_order(alpha)?;
    let a = alpha as i64;
    let half_z = z / int(2);
    let (len, upper) = if alpha.is_multiple_of(2) {
        (alpha / 2, &half_z + rat(a, 2) + int(1))
    } else {
        (alpha.div_ceil(2), &half_z + rat(a + 1, 2))
    };
    let lower = pochhammer(&(&half_z + rat(1, 2)), len as u64);
    let ratio = pochhammer(&upper, len as u64) * pole_free_recip(lower, z)?;
    Ok(pow2(-a) * ratio - pow2(-a))
}

/// `(first_factor_sum + 2^alpha) * (second_factor_sum + 2^-alpha)`; equals 1.
pub fn verify_a1(alpha: u32, z: &Rational) -> Result<ExactScalar> {
    let a = alpha as i64;
    let first = first_factor_sum(alpha, z)? + pow2(a);
    let second = second_factor_sum(alpha, z)? + pow2(-a);
    Ok(ExactScalar::rational(first * second))
}

/// A terminating `3F2(a1, a2, a3; b1, b2; 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricSpec {
    numerators: [Rational; 3],
    denominators: [Rational; 2],
    terms: u64,
}

fn nonpositive_integer(q: &Rational) -> Option<u64> {
    (q.is_integer() && *q <= Rational::zero()).then(|| (-q).to_integer().try_into().ok())?
}

impl HypergeometricSpec {
    /// Requires a nonpositive-integer numerator `-n` and no denominator in
    /// `{0, -1, ..., -n+1}`.
    pub fn new(numerators: [Rational; 3], denominators: [Rational; 2]) -> Result<Self> {
        let n = numerators.iter().filter_map(nonpositive_integer).min().ok_or_else(|| {
            Error::InvalidArgument("series does not terminate: no nonpositive integer numerator".into())
        })?;
        for b in &denominators {
            if pochhammer(b, n).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "denominator parameter {b} vanishes within {n} terms"
                )));
            }
        }
        Ok(Self {
            numerators,
            denominators,
            terms: n,
        })
    }

    pub fn numerators(&self) -> &[Rational; 3] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[Rational; 2] {
        &self.denominators
    }

    /// The terminating index `n`.
    pub fn length(&self) -> u64 {
        self.terms
    }
}

/// Direct exact summation of a terminating `3F2` at argument 1.
pub fn f32_terminating(spec: &HypergeometricSpec) -> Rational {
    let mut term = Rational::one();
    let mut acc = Rational::one();
    for k in 0..spec.terms {
        let kq = int(k as i64);
        let num: Rational = spec.numerators.iter().map(|a| a + &kq).product();
        let den: Rational = spec.denominators.iter().map(|b| b + &kq).product::<Rational>() * (&kq + int(1));
        term = term * num / den;
        acc += &term;
    }
    acc
}

/// Both sides of the terminating `3F2` transformation for
/// `3F2(a, b, -n; e, f; 1)`.
pub fn transform_check(a: &Rational, b: &Rational, n: u32, e: &Rational, f: &Rational) -> Result<(Rational, Rational)> {
    let nq = int(n as i64);
    let len = n as u64;
    let lhs = f32_terminating(&HypergeometricSpec::new(
        [a.clone(), b.clone(), -nq.clone()],
        [e.clone(), f.clone()],
    )?);
    let s = e + f - a - b + &nq;
    let inner = HypergeometricSpec::new(
        [int(1) - s, a.clone(), -nq.clone()],
        [int(1) + a - f - &nq, int(1) + a - e - &nq],
    )?;
    let den = pochhammer(e, len) * pochhammer(f, len);
    if den.is_zero() {
        return Err(Error::InvalidArgument("prefactor denominator vanishes".into()));
    }
    let prefactor = pochhammer(&(e - a), len) * pochhammer(&(f - a), len) / den;
    Ok((lhs, prefactor * f32_terminating(&inner)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert_eq!(first_factor_sum(1, &int(1)).unwrap(), rat(-2, 3));
        assert_eq!(first_factor_closed(1, &int(1)).unwrap(), rat(-2, 3));
        assert_eq!(first_factor_sum(2, &int(2)).unwrap(), int(-2));
        assert_eq!(first_factor_closed(2, &int(2)).unwrap(), int(-2));
        assert_eq!(second_factor_sum(1, &int(1)).unwrap(), rat(1, 4));
        assert_eq!(second_factor_closed(1, &int(1)).unwrap(), rat(1, 4));
        assert_eq!(
            second_factor_sum(2, &int(0)).unwrap(),
            second_factor_closed(2, &int(0)).unwrap()
        );
        assert_eq!(verify_a1(1, &int(1)).unwrap(), ExactScalar::one());
    }

    #[test]
    fn poles_and_degenerate_orders() {
        // z/2 + 1 = 0 at z = -2 for alpha = 1
        assert!(matches!(first_factor_sum(1, &int(-2)), Err(Error::Pole(_))));
        assert!(matches!(verify_a1(1, &int(-2)), Err(Error::Pole(_))));
        assert!(matches!(second_factor_sum(1, &int(-1)), Err(Error::Pole(_))));
        assert!(second_factor_sum(0, &int(1)).is_err());
        assert!(first_factor_closed(0, &int(1)).is_err());
    }

    #[test]
    fn sums_match_closed_forms() {
        for alpha in 1..=8 {
            for num in -13..=13 {
                for den in [1, 3, 5, 7] {
                    let z = rat(num, den);
                    if let (Ok(s), Ok(c)) = (first_factor_sum(alpha, &z), first_factor_closed(alpha, &z)) {
                        assert_eq!(s, c, "first factor alpha = {alpha}, z = {z}");
                    }
                    if let (Ok(s), Ok(c)) = (second_factor_sum(alpha, &z), second_factor_closed(alpha, &z)) {
                        assert_eq!(s, c, "second factor alpha = {alpha}, z = {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn first_sum_hypergeometric_representation() {
        for alpha in 1..=8i64 {
            for z in [rat(1, 3), rat(5, 2), int(4), rat(-7, 5)] {
                let spec = HypergeometricSpec::new(
                    [-(&z / int(2)) - int(alpha), rat(1 - alpha, 2), rat(2 - alpha, 2)],
                    [-(&z / int(2)) - int(alpha - 1), rat(1 - 2 * alpha, 2)],
                )
                .unwrap();
                let fa = factorial((alpha - 1) as u64);
                let pref = -factorial((2 * alpha - 1) as u64) / ((&z / int(2) + int(alpha)) * &fa * &fa);
                assert_eq!(
                    pref * f32_terminating(&spec),
                    first_factor_sum(alpha as u32, &z).unwrap()
                );
            }
        }
    }

    #[test]
    fn terminating_series() {
        let spec = HypergeometricSpec::new([int(1), int(2), int(0)], [int(3), int(4)]).unwrap();
        assert_eq!(f32_terminating(&spec), int(1));
        // 3F2(-1, b, c; d, e; 1) = 1 - bc/(de)
        let spec = HypergeometricSpec::new([int(-1), int(2), int(3)], [int(4), int(5)]).unwrap();
        assert_eq!(f32_terminating(&spec), rat(7, 10));
        assert!(HypergeometricSpec::new([rat(1, 2), int(2), int(3)], [int(4), int(5)]).is_err());
        assert!(HypergeometricSpec::new([int(-3), int(2), int(3)], [int(-1), int(5)]).is_err());
    }

    #[test]
    fn transformation_examples() {
        let (l, r) = transform_check(&rat(1, 3), &int(2), 0, &int(3), &int(4)).unwrap();
        assert_eq!((l.clone(), r), (int(1), int(1)));
        let (l, r) = transform_check(&rat(-1, 2), &int(-3), 2, &rat(1, 2), &int(3)).unwrap();
        assert_eq!(l, r);
        // parameters of the even-order first-factor case, alpha = 4, z = 3
        let (alpha, z) = (4i64, int(3));
        let (l, r) = transform_check(
            &rat(1 - alpha, 2),
            &(-(&z / int(2)) - int(alpha)),
            (alpha / 2 - 1) as u32,
            &(-(&z / int(2)) - int(alpha - 1)),
            &rat(1 - 2 * alpha, 2),
        )
        .unwrap();
        assert_eq!(l, r);
    }
}
