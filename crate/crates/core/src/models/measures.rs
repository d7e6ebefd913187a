use std::f64::consts::PI;

use super::manifold::{Manifold, Observable};
use crate::error::{Error, Result};
use crate::riesz_engine::{Atom, AtomEnvelope, Density, DensityProfile, SpectralMeasure, Variable};

fn cosine_density(offset: f64, terms: Vec<(f64, f64)>) -> Density {
    Density {
        variable: Variable::Omega,
        profile: DensityProfile::Cosines { offset, terms },
    }
}

/// The spectral function `E(x, y)` (or the eigenvalue count) as a measure in
/// `omega`, atoms listed below `cutoff`.
pub fn spectral_measure(man: &Manifold, obs: &Observable, cutoff: f64) -> Result<SpectralMeasure> {
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::InvalidArgument(format!("cutoff must be positive, got {cutoff}")));
    }
    obs.check(man)?;
    match *man {
        Manifold::Line => {
            let (x, y) = obs.points().expect("checked above");
            let r = x - y;
            let density = if r == 0.0 {
                cosine_density(1.0 / PI, vec![])
            } else {
                cosine_density(0.0, vec![(1.0 / PI, r)])
            };
            SpectralMeasure::with_density(Variable::Omega, density)
        }
        Manifold::HalfLine { boundary } => {
            let (x, y) = obs.points().expect("checked above");
            let sign = boundary.image_sign();
            let mut terms = vec![(sign / PI, x + y)];
            let offset = if x == y {
                1.0 / PI
            } else {
                terms.insert(0, (1.0 / PI, x - y));
                0.0
            };
            SpectralMeasure::with_density(Variable::Omega, cosine_density(offset, terms))
        }
        Manifold::Circle { length } => {
            let step = PI / length;
            let weight: Box<dyn Fn(usize) -> f64> = match obs.points() {
                None => Box::new(|n| if n == 0 { 1.0 } else { 2.0 }),
                Some((x, y)) => Box::new(move |n| {
                    if n == 0 {
                        0.5 / length
                    } else {
                        (n as f64 * step * (x - y)).cos() / length
                    }
                }),
            };
            let max_weight = match obs.points() {
                None => 2.0,
                Some(_) => 1.0 / length,
            };
            ladder(0, step, cutoff, weight, max_weight)
        }
        Manifold::Interval { length } => {
            let step = PI / length;
            let (weight, max_weight): (Box<dyn Fn(usize) -> f64>, f64) = match obs.points() {
                None => (Box::new(|_| 1.0), 1.0),
                Some((x, y)) => (
                    Box::new(move |n| 2.0 / length * (n as f64 * step * x).sin() * (n as f64 * step * y).sin()),
                    2.0 / length,
                ),
            };
            ladder(1, step, cutoff, weight, max_weight)
        }
    }
}

/// Atoms at `n * step`, `n >= first`, below `cutoff`.
fn ladder(
    first: usize,
    step: f64,
    cutoff: f64,
    weight: impl Fn(usize) -> f64,
    max_weight: f64,
) -> Result<SpectralMeasure> {
    let mut atoms = Vec::new();
    let mut n = first;
    while (n as f64) * step < cutoff {
        atoms.push(Atom {
            position: n as f64 * step,
            weight: weight(n),
        });
        n += 1;
    }
    let envelope = AtomEnvelope {
        variable: Variable::Omega,
        cutoff: n as f64 * step,
        max_weight,
        min_spacing: step,
    };
    SpectralMeasure::new(Variable::Omega, atoms, None, Some(envelope))
}
