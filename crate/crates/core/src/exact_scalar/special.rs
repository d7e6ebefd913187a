use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{int, is_integer, rat, to_i64, ExactScalar, Rational};
use crate::error::{Error, Result};

/// Value of a gamma evaluation: finite, or a pole at a nonpositive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaValue {
    Finite(ExactScalar),
    Pole,
}

impl GammaValue {
    pub fn finite(self) -> Option<ExactScalar> {
        match self {
            GammaValue::Finite(v) => Some(v),
            GammaValue::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, GammaValue::Pole)
    }
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

/// `Gamma(k/2)`.
pub fn gamma_half(k: i64) -> GammaValue {
    if k % 2 == 0 {
        if k <= 0 {
            return GammaValue::Pole;
        }
        return GammaValue::Finite(ExactScalar::rational(factorial((k / 2 - 1) as u64)));
    }
    // coefficient of sqrt(pi), walking from Gamma(1/2)
    let mut coeff = Rational::one();
    if k > 0 {
        let mut x = rat(1, 2);
        while x < rat(k, 2) {
            coeff *= &x;
            x += int(1);
        }
    } else {
        let mut x = rat(1, 2);
        while x > rat(k, 2) {
            x -= int(1);
            coeff /= &x;
        }
    }
    GammaValue::Finite(ExactScalar::pi_half_power(coeff, 1))
}

/// `Gamma(x)/Gamma(x-n)` for any rational `x` via the product formula.
///
/// For `n >= 0` this is `(x-1)(x-2)...(x-n)`, which is zero when only the
/// denominator has a pole. For `n < 0` it is `1/(x(x+1)...(x+|n|-1))`, and a
/// vanishing product is a division error.
pub fn falling_ratio(x: &Rational, n: i64) -> Result<Rational> {
    if n >= 0 {
        let mut acc = Rational::one();
        for i in 1..=n {
            acc *= x - int(i);
        }
        Ok(acc)
    } else {
        let mut acc = Rational::one();
        for i in 0..(-n) {
            acc *= x + int(i);
        }
        if acc.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "Gamma({x})/Gamma({}) has a pole in the numerator only",
                x - int(n)
            )));
        }
        Ok(acc.recip())
    }
}

/// `Gamma(x)/Gamma(x-n)` for `2x` an integer.
pub fn gamma_ratio(x: &Rational, n: i64) -> Result<Rational> {
    if !is_integer(&(x * int(2))) {
        return Err(Error::InvalidArgument(format!(
            "gamma_ratio needs 2x integral, got x = {x}"
        )));
    }
    falling_ratio(x, n)
}

/// Rising factorial `(x)_n`.
pub fn pochhammer(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc *= x + int(i as i64);
    }
    acc
}

/// Digamma at a positive integer or half-odd-integer.
pub fn psi_eval(p: &Rational) -> Result<ExactScalar> {
    let two_p = to_i64(&(p * int(2)))
        .ok_or_else(|| Error::InvalidArgument(format!("psi_eval needs 2p integral, got p = {p}")))?;
    if two_p <= 0 {
        return Err(Error::InvalidArgument(format!("psi_eval needs p > 0, got p = {p}")));
    }
    let mut out = -ExactScalar::euler_gamma();
    if two_p % 2 == 0 {
        let n = two_p / 2;
        let h: Rational = (1..n).map(|k| rat(1, k)).sum();
        out += &ExactScalar::rational(h);
    } else {
        let n = (two_p - 1) / 2;
        let h: Rational = (1..=n).map(|k| rat(2, 2 * k - 1)).sum();
        out += &ExactScalar::rational(h);
        out -= &ExactScalar::ln2().scale(&int(2));
    }
    Ok(out)
}

/// Bernoulli number in the `(z/2) coth(z/2)` convention: `B_1 = 0`.
pub fn bernoulli(s: u64) -> Rational {
    if s == 1 {
        return Rational::zero();
    }
    if s > 1 && s % 2 == 1 {
        return Rational::zero();
    }
    let mut b: Vec<Rational> = Vec::with_capacity(s as usize + 1);
    b.push(Rational::one());
    for n in 1..=s {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0, with B_1 = -1/2 internally
        let acc: Rational = (0..n).map(|j| binomial(n + 1, j) * &b[j as usize]).sum();
        b.push(-acc / int((n + 1) as i64));
    }
    b.pop().unwrap_or_else(Rational::one)
}

/// `lim psi(eps - n)/Gamma(eps - n) = (-1)^(n-1) n!`.
pub fn gamma_psi_residue(n: u64) -> Rational {
    let sign = if n % 2 == 1 { int(1) } else { int(-1) };
    sign * factorial(n)
}
