//! Kernel expansions assembled term by term from mean asymptotics: the
//! highest-derivative term of the Stieltjes-mean lemma, the weight
//! derivative tables and the moment integrals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::linear::{LinearForm, Symbol};
use super::tables::{LambdaTable, OmegaTable};
use super::{is_log_slot, Coeff, CylinderExpansion, HeatExpansion, KernelTerm};
use crate::error::{Error, Result};
use crate::exact_scalar::{factorial, gamma_half, int, is_integer, psi_eval, rat, to_i64, ExactScalar, Rational};
use crate::green_functions::{gaussian_derivative_coeffs, sqrt_exp_derivative_coeffs};

/// Integration variable of a moment integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentVariable {
    /// `int exp(-lambda t) lambda^(p-1) dlambda`.
    Lambda,
    /// `int exp(-w^2 t) w^(2p-1) dw`.
    Omega,
    /// `int exp(-w t) w^(p-1) dw`.
    OmegaCylinder,
}

/// Exact value of a moment integral, optionally with a `ln` of the
/// integration variable in the integrand, as terms in `t`.
pub fn moment_map(variable: MomentVariable, p: &Rational, with_log: bool) -> Result<Vec<KernelTerm>> {
    if *p <= Rational::zero() {
        return Err(Error::InvalidArgument(format!("moment needs p > 0, got {p}")));
    }
    let two_p =
        to_i64(&(p * int(2))).ok_or_else(|| Error::InvalidArgument(format!("moment needs 2p integral, got {p}")))?;
    let gamma = gamma_half(two_p)
        .finite()
        .ok_or_else(|| Error::Pole(format!("Gamma({p})")))?;
    let (plain, logged) = match variable {
        MomentVariable::Lambda | MomentVariable::OmegaCylinder => (Rational::one(), Rational::one()),
        MomentVariable::Omega => (rat(1, 2), rat(1, 4)),
    };
    let power = -p.clone();
    if !with_log {
        return Ok(vec![KernelTerm {
            power,
            has_log: false,
            coefficient: gamma.scale(&plain),
        }]);
    }
    let scaled = gamma.scale(&logged);
    Ok(vec![
        KernelTerm {
            power: power.clone(),
            has_log: false,
            coefficient: scaled.try_mul(&psi_eval(p)?)?,
        },
        KernelTerm {
            power,
            has_log: true,
            coefficient: -scaled,
        },
    ])
}

/// A term of a symbolic kernel expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTerm {
    pub power: Rational,
    pub has_log: bool,
    pub coefficient: LinearForm,
}

#[derive(Default)]
struct Collector {
    terms: BTreeMap<(Rational, bool), LinearForm>,
}

impl Collector {
    fn add(&mut self, power: Rational, has_log: bool, sym: Symbol, coefficient: &ExactScalar) {
        self.terms.entry((power, has_log)).or_default().add(sym, coefficient);
    }

    fn set(&mut self, power: Rational, has_log: bool, form: LinearForm) {
        self.terms.insert((power, has_log), form);
    }

    fn get(&self, power: &Rational, has_log: bool) -> LinearForm {
        self.terms.get(&(power.clone(), has_log)).cloned().unwrap_or_default()
    }

    fn finish(self) -> Vec<SymbolicTerm> {
        self.terms
            .into_iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|((power, has_log), coefficient)| SymbolicTerm {
                power,
                has_log,
                coefficient,
            })
            .collect()
    }
}

/// `(-1)^(alpha+1) / alpha!`, the weight of the top-order term.
fn top_prefactor(alpha: usize) -> Rational {
    let sign = if alpha % 2 == 1 { int(1) } else { int(-1) };
    sign / factorial(alpha as u64)
}

/// Heat kernel from omega-means of order `alpha` in dimension `m`, in terms
/// of the symbols `C{alpha,s}` and `D{alpha,s}`.
///
/// Every logarithmic term and every dependence on `c` at log slots must
/// cancel; a residue is reported as an error.
pub fn heat_pipeline_symbolic(m: u32, alpha: usize) -> Result<Vec<SymbolicTerm>> {
    super::check_dimension(m)?;
    let pref = top_prefactor(alpha);
    let z = gaussian_derivative_coeffs(alpha + 1);
    let mut out = Collector::default();
    for s in 0..=alpha {
        let shift = rat(m as i64 - s as i64, 2);
        for (i, zi) in z.iter().enumerate() {
            let t_power = int((alpha + 1 - i) as i64);
            let p = &t_power + &shift;
            let weight = zi * &pref;
            for term in moment_map(MomentVariable::Omega, &p, false)? {
                out.add(
                    &term.power + &t_power,
                    term.has_log,
                    Symbol::C { alpha, s },
                    &term.coefficient.scale(&weight),
                );
            }
            if is_log_slot(m, s) {
                for term in moment_map(MomentVariable::Omega, &p, true)? {
                    out.add(
                        &term.power + &t_power,
                        term.has_log,
                        Symbol::D { alpha, s },
                        &term.coefficient.scale(&weight),
                    );
                }
            }
        }
    }
    for ((power, has_log), form) in &out.terms {
        if *has_log && !form.is_zero() {
            return Err(Error::Cancellation(format!(
                "t^{power} ln t survives with coefficient {form}"
            )));
        }
        for s in (0..=alpha).filter(|&s| is_log_slot(m, s)) {
            if !form.coefficient(Symbol::C { alpha, s }).is_zero() {
                return Err(Error::Cancellation(format!(
                    "undetermined c at s = {s} reaches t^{power}"
                )));
            }
        }
    }
    Ok(out.finish())
}

/// Cylinder kernel from lambda-means of order `alpha` in dimension `m`, in
/// terms of the symbols `A{alpha,s}`, with `Unknown{s}` at the slots whose
/// constant term cannot be recovered.
pub fn cylinder_pipeline_symbolic(m: u32, alpha: usize) -> Result<Vec<SymbolicTerm>> {
    super::check_dimension(m)?;
    let pref = top_prefactor(alpha);
    let y = sqrt_exp_derivative_coeffs(alpha + 1);
    let mut out = Collector::default();
    for s in 0..=alpha {
        let sym = Symbol::A { alpha, s };
        let power = int(s as i64 - m as i64);
        for (i, yi) in y.iter().enumerate().skip(1) {
            let weight = yi * &pref * int(2);
            let p = i as i64 + m as i64 - s as i64;
            if p >= 1 {
                for term in moment_map(MomentVariable::OmegaCylinder, &int(p), false)? {
                    out.add(
                        &term.power + int(i as i64),
                        term.has_log,
                        sym,
                        &term.coefficient.scale(&weight),
                    );
                }
            } else {
                // finite part of the divergent moment at a nonpositive power
                let n = (1 - p) as u64;
                let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
                let base = sign / factorial(n - 1);
                out.add(power.clone(), true, sym, &ExactScalar::rational(&base * &weight));
                let constant = psi_eval(&int(n as i64))?.scale(&(-base * &weight));
                out.add(power.clone(), false, sym, &constant);
            }
        }
        if is_log_slot(m, s) {
            out.set(power.clone(), false, LinearForm::symbol(Symbol::Unknown { s }));
        } else if !out.get(&power, true).is_zero() {
            return Err(Error::Cancellation(format!(
                "t^{power} ln t survives at s = {s}: {}",
                out.get(&power, true)
            )));
        }
    }
    for ((power, has_log), form) in &out.terms {
        if !*has_log && !is_integer(power) {
            return Err(Error::Cancellation(format!("unexpected power t^{power}: {form}")));
        }
    }
    Ok(out.finish())
}

fn coefficient_at(terms: &[SymbolicTerm], power: &Rational, has_log: bool) -> LinearForm {
    terms
        .iter()
        .find(|t| t.power == *power && t.has_log == has_log)
        .map(|t| t.coefficient.clone())
        .unwrap_or_default()
}

/// Heat expansion coefficients `b_s`, `s <= min(alpha, s_max)`, from an omega table.
pub fn heat_pipeline_from_omega(t: &OmegaTable, alpha: usize) -> Result<HeatExpansion> {
    if alpha > t.alpha_max() {
        return Err(Error::InvalidArgument(format!(
            "table stops at order {}, asked for {alpha}",
            t.alpha_max()
        )));
    }
    let m = t.m();
    let terms = heat_pipeline_symbolic(m, alpha)?;
    let top = alpha.min(t.s_max());
    let b = (0..=top)
        .map(|s| {
            let power = rat(s as i64 - m as i64, 2);
            let form = coefficient_at(&terms, &power, false);
            let value = form.evaluate(|sym| match sym {
                Symbol::C { alpha: a, s: k } => Ok(t.c(a, k).as_known().cloned()),
                Symbol::D { alpha: a, s: k } => Ok(Some(t.d(a, k).clone())),
                _ => Ok(None),
            })?;
            value.ok_or(Error::Undetermined { s })
        })
        .collect::<Result<Vec<_>>>()?;
    HeatExpansion::new(m, b)
}

/// Cylinder expansion coefficients `(e_s, f_s)`, `s <= min(alpha, s_max)`, from a
/// lambda table; unrecoverable `e_s` are returned as undetermined.
pub fn cylinder_pipeline_from_lambda(t: &LambdaTable, alpha: usize) -> Result<CylinderExpansion> {
    if alpha > t.alpha_max() {
        return Err(Error::InvalidArgument(format!(
            "table stops at order {}, asked for {alpha}",
            t.alpha_max()
        )));
    }
    let m = t.m();
    let terms = cylinder_pipeline_symbolic(m, alpha)?;
    let top = alpha.min(t.s_max());
    let lookup = |sym: Symbol| -> Result<Option<ExactScalar>> {
        match sym {
            Symbol::A { alpha: a, s: k } => Ok(Some(t.get(a, k).clone())),
            _ => Ok(None),
        }
    };
    let mut e = Vec::with_capacity(top + 1);
    let mut f = Vec::with_capacity(top + 1);
    for s in 0..=top {
        let power = int(s as i64 - m as i64);
        let plain = coefficient_at(&terms, &power, false);
        e.push(if plain.depends_on_unknown() {
            Coeff::Undetermined
        } else {
            Coeff::Known(plain.evaluate(lookup)?.ok_or(Error::Undetermined { s })?)
        });
        let logged = coefficient_at(&terms, &power, true);
        f.push(logged.evaluate(lookup)?.ok_or(Error::Undetermined { s })?);
    }
    CylinderExpansion::new(m, e, f)
}
