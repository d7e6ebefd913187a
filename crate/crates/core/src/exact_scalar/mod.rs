//! Exact arithmetic in the ring of rationals extended by `pi^(1/2)`, Euler's
//! constant and `ln 2`, with gamma, digamma and Bernoulli evaluation at
//! integer and half-integer points.

mod special;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use special::{
    bernoulli, binomial, factorial, falling_ratio, gamma_half, gamma_psi_residue, gamma_ratio, pochhammer, psi_eval,
    GammaValue,
};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Converts a finite `f64` to the exact dyadic rational it represents.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("non-finite value {x}")))
}

/// Whether `q` is an integer.
pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// `q` as an `i64` when it is an integer in range.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Key of a basis element `pi^(half_pi/2) * gamma^gamma * ln2^ln2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub half_pi: i32,
    pub gamma: u8,
    pub ln2: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        half_pi: 0,
        gamma: 0,
        ln2: 0,
    };

    fn times(self, other: Monomial) -> Result<Monomial> {
        let gamma = self.gamma + other.gamma;
        let ln2 = self.ln2 + other.ln2;
        if gamma > 1 || ln2 > 1 {
            return Err(Error::DegreeOverflow);
        }
        Ok(Monomial {
            half_pi: self.half_pi + other.half_pi,
            gamma,
            ln2,
        })
    }

    fn to_f64(self) -> f64 {
        let mut v = std::f64::consts::PI.sqrt().powi(self.half_pi);
        if self.gamma == 1 {
            v *= EULER_GAMMA;
        }
        if self.ln2 == 1 {
            v *= std::f64::consts::LN_2;
        }
        v
    }
}

/// Element of `Q[pi^(+-1/2), gamma, ln 2]` with at most degree one in
/// `gamma` and in `ln 2`, kept in canonical form (no zero coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(q, Monomial::ONE)
    }

    pub fn term(q: Rational, key: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(key, q);
        }
        Self { terms }
    }

    /// `q * pi^(k/2)`.
    pub fn pi_half_power(q: Rational, k: i32) -> Self {
        Self::term(
            q,
            Monomial {
                half_pi: k,
                ..Monomial::ONE
            },
        )
    }

    /// Euler's constant.
    pub fn euler_gamma() -> Self {
        Self::term(
            Rational::one(),
            Monomial {
                gamma: 1,
                ..Monomial::ONE
            },
        )
    }

    /// `ln 2`.
    pub fn ln2() -> Self {
        Self::term(
            Rational::one(),
            Monomial {
                ln2: 1,
                ..Monomial::ONE
            },
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The value as a rational when no symbol is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Whether any term carries Euler's constant or `ln 2`.
    pub fn has_transcendental_log(&self) -> bool {
        self.terms.keys().any(|k| k.gamma > 0 || k.ln2 > 0)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * q)).collect(),
        }
    }

    /// Multiplies by `pi^(k/2)`.
    pub fn shift_pi(&self, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    (
                        Monomial {
                            half_pi: m.half_pi + k,
                            ..*m
                        },
                        v.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Ring product; fails when the result would need `gamma^2` or `(ln 2)^2`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                out.add_term(ka.times(*kb)?, va * vb);
            }
        }
        Ok(out)
    }

    /// Exact division by an element with a single term and no symbols
    /// other than powers of `pi^(1/2)`.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let mut it = other.terms.iter();
        match (it.next(), it.next()) {
            (Some((k, v)), None) if k.gamma == 0 && k.ln2 == 0 => Ok(self.scale(&v.recip()).shift_pi(-k.half_pi)),
            (None, _) => Err(Error::DivisionByZero("exact scalar divisor is zero".into())),
            _ => Err(Error::InvalidArgument(
                "divisor must be a rational multiple of a power of pi^(1/2)".into(),
            )),
        }
    }

    fn add_term(&mut self, key: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, v)| v.to_f64().unwrap_or(f64::NAN) * k.to_f64())
            .sum()
    }

    pub fn abs_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, v)| v.abs().to_f64().unwrap_or(f64::INFINITY) * k.to_f64().abs())
            .sum()
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::rational(int(n))
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, -v.clone());
        }
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: ExactScalar) -> ExactScalar {
        self += &rhs;
        self
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(mut self, rhs: ExactScalar) -> ExactScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.scale(&-Rational::one())
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl std::str::FromStr for ExactScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zero_terms() {
        let a = ExactScalar::euler_gamma() + ExactScalar::from(1);
        let b = &a - &ExactScalar::euler_gamma();
        assert_eq!(b, ExactScalar::one());
        assert!((&b - &ExactScalar::one()).is_zero());
    }

    #[test]
    fn degree_overflow_is_reported() {
        let g = ExactScalar::euler_gamma();
        assert_eq!(g.try_mul(&g), Err(Error::DegreeOverflow));
        let l = ExactScalar::ln2();
        assert_eq!(l.try_mul(&l), Err(Error::DegreeOverflow));
        assert!(g.try_mul(&l).is_ok());
    }

    #[test]
    fn pi_powers_combine() {
        let root_pi = ExactScalar::pi_half_power(int(1), 1);
        let pi = root_pi.try_mul(&root_pi).unwrap();
        assert_eq!(pi, ExactScalar::pi_half_power(int(1), 2));
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let back = pi.try_div(&root_pi).unwrap();
        assert_eq!(back, root_pi);
    }

    #[test]
    fn dyadic_conversion_is_exact() {
        assert_eq!(rational_from_f64(0.375).unwrap(), rat(3, 8));
        assert!(rational_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn pow2_handles_negative_exponents() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), rat(1, 4));
    }

    mod ring {
        use super::super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = ExactScalar> {
            prop::collection::vec((-3i32..4, 0u8..2, 0u8..2, -20i64..20, 1i64..9), 0..5).prop_map(|terms| {
                terms
                    .into_iter()
                    .map(|(k, g, l, n, d)| {
                        ExactScalar::term(
                            rat(n, d),
                            Monomial {
                                half_pi: k,
                                gamma: g,
                                ln2: l,
                            },
                        )
                    })
                    .sum()
            })
        }

        proptest! {
            #[test]
            fn addition_is_abelian_group(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert!((&a + &(-&a)).is_zero());
                prop_assert_eq!(&a + &ExactScalar::zero(), a.clone());
            }

            #[test]
            fn multiplication_associates_and_distributes(a in scalar(), b in scalar(), c in scalar()) {
                if let (Ok(ab), Ok(bc)) = (a.try_mul(&b), b.try_mul(&c)) {
                    if let (Ok(l), Ok(r)) = (ab.try_mul(&c), a.try_mul(&bc)) {
                        prop_assert_eq!(l, r);
                    }
                }
                if let (Ok(ab), Ok(ac)) = (a.try_mul(&b), a.try_mul(&c)) {
                    prop_assert_eq!(a.try_mul(&(&b + &c)).unwrap(), &ab + &ac);
                }
                if let Ok(ab) = a.try_mul(&b) {
                    prop_assert_eq!(ab, b.try_mul(&a).unwrap());
                }
                prop_assert_eq!(a.try_mul(&ExactScalar::one()).unwrap(), a.clone());
            }

            #[test]
            fn text_round_trips(a in scalar()) {
                let back: ExactScalar = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
