//! Linear combinations of named table entries with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::exact_scalar::{ExactScalar, Rational};

/// A named coefficient appearing in a symbolic kernel expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// The constant 1.
    One,
    /// Lambda-mean coefficient of order `alpha` at slot `s`.
    A { alpha: usize, s: usize },
    /// Omega-mean coefficient of `w^(m-s)`.
    C { alpha: usize, s: usize },
    /// Omega-mean coefficient of `w^(m-s) ln w`.
    D { alpha: usize, s: usize },
    /// A value that cannot be recovered from the input.
    Unknown { s: usize },
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::One => write!(f, "1"),
            Symbol::A { alpha, s } => write!(f, "a[{alpha},{s}]"),
            Symbol::C { alpha, s } => write!(f, "c[{alpha},{s}]"),
            Symbol::D { alpha, s } => write!(f, "d[{alpha},{s}]"),
            Symbol::Unknown { s } => write!(f, "undetermined[{s}]"),
        }
    }
}

/// `sum_k coefficient_k * symbol_k`, with zero coefficients dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    terms: BTreeMap<Symbol, ExactScalar>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(sym: Symbol) -> Self {
        Self::scaled(sym, ExactScalar::one())
    }

    pub fn scaled(sym: Symbol, coefficient: ExactScalar) -> Self {
        let mut out = Self::zero();
        out.add(sym, &coefficient);
        out
    }

    pub fn add(&mut self, sym: Symbol, coefficient: &ExactScalar) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(sym).or_default();
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn add_form(&mut self, other: &LinearForm) {
        for (sym, c) in &other.terms {
            self.add(*sym, c);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        for (sym, c) in &self.terms {
            out.add(*sym, &c.scale(q));
        }
        out
    }

    pub fn try_mul_scalar(&self, x: &ExactScalar) -> Result<Self> {
        let mut out = Self::zero();
        for (sym, c) in &self.terms {
            out.add(*sym, &c.try_mul(x)?);
        }
        Ok(out)
    }

    pub fn coefficient(&self, sym: Symbol) -> ExactScalar {
        self.terms.get(&sym).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn depends_on_unknown(&self) -> bool {
        self.terms.keys().any(|s| matches!(s, Symbol::Unknown { .. }))
    }

    /// Substitutes every symbol; `value` returns `None` for symbols that
    /// have no value, which is an error only if their coefficient is nonzero.
    pub fn evaluate<F>(&self, mut value: F) -> Result<Option<ExactScalar>>
    where
        F: FnMut(Symbol) -> Result<Option<ExactScalar>>,
    {
        let mut acc = ExactScalar::zero();
        for (sym, c) in &self.terms {
            match value(*sym)? {
                Some(v) => acc += &c.try_mul(&v)?,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(sym, c)| format!("({c}) {sym}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_scalar::int;

    #[test]
    fn cancellation_removes_symbols() {
        let sym = Symbol::C { alpha: 3, s: 1 };
        let mut f = LinearForm::symbol(sym);
        f.add(sym, &ExactScalar::from(-1));
        assert!(f.is_zero());
    }

    #[test]
    fn evaluation_substitutes() {
        let mut f = LinearForm::scaled(Symbol::A { alpha: 1, s: 0 }, ExactScalar::from(2));
        f.add(Symbol::One, &ExactScalar::from(3));
        let v = f
            .evaluate(|s| {
                Ok(Some(if s == Symbol::One {
                    ExactScalar::one()
                } else {
                    ExactScalar::from(5)
                }))
            })
            .unwrap();
        assert_eq!(v, Some(ExactScalar::from(13)));
        assert_eq!(f.scale(&int(2)).coefficient(Symbol::One), ExactScalar::from(6));
    }
}
