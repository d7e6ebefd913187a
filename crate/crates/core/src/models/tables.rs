use super::manifold::{Manifold, Observable};
use crate::coeff_transforms::io::{CoeffDocument, DocumentKind};
use crate::coeff_transforms::{
    lambda_diag_from_heat, omega_diag_from_cylinder, Coeff, CylinderExpansion, HeatExpansion,
};
use crate::error::{Error, Result};
use crate::exact_scalar::{bernoulli, factorial, int, rat, rational_from_f64, ExactScalar, Rational};

fn pi_power(q: Rational, k: i32) -> ExactScalar {
    ExactScalar::pi_half_power(q, 2 * k)
}

fn rpow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

fn unit_sign(even_exponent: i64) -> Rational {
    if even_exponent.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Heat `b_s` and cylinder `e_s`; `None` where the table is not available.
type KernelTables = (Option<Vec<ExactScalar>>, Option<Vec<ExactScalar>>);

/// Exact heat coefficients `b_s` and cylinder coefficients `e_s`, `s = 0..=smax`.
fn kernel_coefficients(man: &Manifold, obs: &Observable, smax: usize) -> Result<KernelTables> {
    obs.check(man)?;
    let n = smax + 1;
    let mut b = vec![ExactScalar::zero(); n];
    let mut e = vec![ExactScalar::zero(); n];
    let even = |s: usize| s >= 2 && s.is_multiple_of(2);
    let rational_point = |x: f64| rational_from_f64(x);
    let free_heat = ExactScalar::pi_half_power(rat(1, 2), -1);
    match (*man, obs.points()) {
        (Manifold::Line, Some((x, y))) => {
            if x == y {
                b[0] = free_heat;
                e[0] = pi_power(int(1), -1);
            } else {
                let r = rational_point(x)? - rational_point(y)?;
                for s in (0..n).filter(|&s| even(s)) {
                    let si = s as i64;
                    e[s] = pi_power(unit_sign(si / 2 + 1) * rpow(&r, -si), -1);
                }
            }
        }
        (Manifold::HalfLine { boundary }, Some((x, y))) => {
            let sign = rational_from_f64(boundary.image_sign())?;
            let (xq, yq) = (rational_point(x)?, rational_point(y)?);
            let (near, far) = (&xq - &yq, &xq + &yq);
            if x == y {
                b[0] = free_heat;
                e[0] = pi_power(int(1), -1);
            }
            for s in (0..n).filter(|&s| even(s)) {
                let si = s as i64;
                let mut bracket = &sign * rpow(&far, -si);
                if x != y {
                    bracket += rpow(&near, -si);
                }
                e[s] = pi_power(unit_sign(si / 2 + 1) * bracket, -1);
            }
        }
        (Manifold::Circle { length }, points) => {
            if let Some((x, y)) = points {
                if x != y {
                    return Err(Error::Unsupported("off-diagonal tables on the circle".into()));
                }
            }
            let l = rational_from_f64(length)?;
            let trace = points.is_none();
            b[0] = if trace {
                free_heat.scale(&(int(2) * &l))
            } else {
                free_heat
            };
            for s in (0..n).filter(|&s| s == 0 || even(s)) {
                let si = s as i64;
                let q = bernoulli(s as u64) / factorial(s as u64);
                e[s] = if trace {
                    pi_power(int(2) * q * rpow(&l, 1 - si), si as i32 - 1)
                } else {
                    pi_power(q * rpow(&l, -si), si as i32 - 1)
                };
            }
        }
        (Manifold::Interval { length }, None) => {
            let l = rational_from_f64(length)?;
            b[0] = free_heat.scale(&l);
            if n > 1 {
                b[1] = ExactScalar::rational(rat(-1, 2));
                e[1] = ExactScalar::rational(rat(-1, 2));
            }
            for s in (0..n).filter(|&s| s == 0 || even(s)) {
                let si = s as i64;
                let q = bernoulli(s as u64) / factorial(s as u64);
                e[s] = pi_power(q * rpow(&l, 1 - si), si as i32 - 1);
            }
        }
        (Manifold::Interval { .. }, Some((x, y))) => {
            if x != y {
                return Err(Error::Unsupported("off-diagonal tables on the interval".into()));
            }
            b[0] = free_heat;
            return Ok((Some(b), None));
        }
        (_, None) => unreachable!("trace rejected by Observable::check"),
    }
    Ok((Some(b), Some(e)))
}

/// Exact coefficient table of `kind` for the model, `s = 0..=smax` (`m = 1`).
pub fn expected_coeffs(man: &Manifold, obs: &Observable, kind: DocumentKind, smax: usize) -> Result<CoeffDocument> {
    let (heat, cylinder) = kernel_coefficients(man, obs, smax)?;
    let unsupported = || Error::Unsupported(format!("{kind} table for the {} on the {man}", obs.name()));
    match kind {
        DocumentKind::Heat | DocumentKind::LambdaDiag => {
            let h = HeatExpansion::new(1, heat.ok_or_else(unsupported)?)?;
            if kind == DocumentKind::Heat {
                Ok(CoeffDocument::Heat(h))
            } else {
                Ok(CoeffDocument::LambdaDiag(lambda_diag_from_heat(&h)?))
            }
        }
        DocumentKind::Cylinder | DocumentKind::OmegaDiag => {
            let e = cylinder.ok_or_else(unsupported)?;
            let f = vec![ExactScalar::zero(); e.len()];
            let c = CylinderExpansion::new(1, e.into_iter().map(Coeff::Known).collect(), f)?;
            if kind == DocumentKind::Cylinder {
                Ok(CoeffDocument::Cylinder(c))
            } else {
                Ok(CoeffDocument::OmegaDiag(omega_diag_from_cylinder(&c)?))
            }
        }
    }
}
