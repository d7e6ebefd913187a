//! Spectral measures: atoms plus an optional density, tagged by the
//! spectral variable they are written in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    /// The eigenvalue `lambda`.
    Lambda,
    /// Its square root `omega`.
    Omega,
}

impl Variable {
    /// Maps a position written in `self` to the same point written in `to`.
    pub fn convert(self, to: Variable, x: f64) -> f64 {
        match (self, to) {
            (Variable::Lambda, Variable::Omega) => x.sqrt(),
            (Variable::Omega, Variable::Lambda) => x * x,
            _ => x,
        }
    }

    pub fn other(self) -> Variable {
        match self {
            Variable::Lambda => Variable::Omega,
            Variable::Omega => Variable::Lambda,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct Atom {
    pub position: f64,
    pub weight: f64,
}

impl From<(f64, f64)> for Atom {
    fn from((position, weight): (f64, f64)) -> Self {
        Atom { position, weight }
    }
}

impl From<Atom> for (f64, f64) {
    fn from(a: Atom) -> Self {
        (a.position, a.weight)
    }
}

/// Shape of a density `d mu / d w` in its native variable `w`.
#[derive(Clone, Debug, PartialEq)]
pub enum DensityProfile {
    /// `offset + sum amp * cos(freq * w)`.
    Cosines { offset: f64, terms: Vec<(f64, f64)> },
    /// `coefficient * w^exponent`, `exponent > -1`.
    PowerLaw { coefficient: f64, exponent: f64 },
    /// Piecewise-linear through the points, zero outside them.
    Table { points: Vec<(f64, f64)> },
}

impl DensityProfile {
    pub fn value(&self, w: f64) -> f64 {
        match self {
            DensityProfile::Cosines { offset, terms } => {
                offset + terms.iter().map(|(a, f)| a * (f * w).cos()).sum::<f64>()
            }
            DensityProfile::PowerLaw { coefficient, exponent } => coefficient * w.powf(*exponent),
            DensityProfile::Table { points } => {
                let i = points.partition_point(|p| p.0 <= w);
                if i == 0 || i == points.len() {
                    return if points.last().map(|p| p.0 == w).unwrap_or(false) {
                        points[points.len() - 1].1
                    } else {
                        0.0
                    };
                }
                let (x0, y0) = points[i - 1];
                let (x1, y1) = points[i];
                y0 + (y1 - y0) * (w - x0) / (x1 - x0)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            DensityProfile::Cosines { offset, terms } => {
                if !offset.is_finite() || terms.iter().any(|(a, f)| !a.is_finite() || !f.is_finite()) {
                    return Err(Error::InvalidArgument("cosine density needs finite parameters".into()));
                }
            }
            DensityProfile::PowerLaw { coefficient, exponent } => {
                if !coefficient.is_finite() || !(*exponent > -1.0) || !exponent.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "power-law density needs exponent > -1, got {exponent}"
                    )));
                }
            }
            DensityProfile::Table { points } => {
                if points.len() < 2 || points.windows(2).any(|p| !(p[1].0 > p[0].0)) || points[0].0 < 0.0 {
                    return Err(Error::InvalidArgument(
                        "table density needs at least two points with increasing nonnegative abscissae".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Density {
    pub variable: Variable,
    pub profile: DensityProfile,
}

/// Describes the atoms omitted beyond `cutoff` (in `variable`): each has
/// `|weight| <= max_weight`, and consecutive ones are at least
/// `min_spacing` apart, the first at or beyond `cutoff`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomEnvelope {
    pub variable: Variable,
    pub cutoff: f64,
    pub max_weight: f64,
    pub min_spacing: f64,
}

/// Laplace-type kernel used for truncation bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecayKernel {
    /// `exp(-lambda t)`.
    Heat,
    /// `exp(-omega t)`.
    Cylinder,
}

impl AtomEnvelope {
    /// Bound on `sum |w| k(position)` over the omitted atoms.
    pub fn tail_bound(&self, kernel: DecayKernel, t: f64) -> f64 {
        let c = self.cutoff;
        let (head, integral) = match (kernel, self.variable) {
            (DecayKernel::Heat, Variable::Lambda) | (DecayKernel::Cylinder, Variable::Omega) => {
                ((-t * c).exp(), (-t * c).exp() / t)
            }
            (DecayKernel::Heat, Variable::Omega) => {
                let g = (-t * c * c).exp();
                let tail = if c > 0.0 {
                    g / (2.0 * t * c)
                } else {
                    0.5 * (std::f64::consts::PI / t).sqrt()
                };
                (g, tail)
            }
            (DecayKernel::Cylinder, Variable::Lambda) => {
                let r = c.sqrt();
                let g = (-t * r).exp();
                (g, 2.0 * g * (r / t + 1.0 / (t * t)))
            }
        };
        self.max_weight * (head + integral / self.min_spacing)
    }
}

/// A measure `mu` on `[0, inf)` with `mu(0) = 0`, left-continuous.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMeasure {
    variable: Variable,
    atoms: Vec<Atom>,
    density: Option<Density>,
    envelope: Option<AtomEnvelope>,
}

impl SpectralMeasure {
    pub fn new(
        variable: Variable,
        atoms: Vec<Atom>,
        density: Option<Density>,
        envelope: Option<AtomEnvelope>,
    ) -> Result<Self> {
        for a in &atoms {
            if !(a.position.is_finite() && a.position >= 0.0 && a.weight.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "atom ({}, {}) must have finite nonnegative position and finite weight",
                    a.position, a.weight
                )));
            }
        }
        if atoms.windows(2).any(|p| !(p[1].position > p[0].position)) {
            return Err(Error::InvalidArgument("atom positions must increase strictly".into()));
        }
        if let Some(d) = &density {
            d.profile.validate()?;
        }
        if let Some(e) = &envelope {
            if !(e.cutoff >= 0.0 && e.max_weight >= 0.0 && e.min_spacing > 0.0) {
                return Err(Error::InvalidArgument(
                    "envelope needs cutoff >= 0, max_weight >= 0, min_spacing > 0".into(),
                ));
            }
        }
        Ok(Self {
            variable,
            atoms,
            density,
            envelope,
        })
    }

    pub fn atomic(variable: Variable, atoms: Vec<Atom>) -> Result<Self> {
        Self::new(variable, atoms, None, None)
    }

    pub fn with_density(variable: Variable, density: Density) -> Result<Self> {
        Self::new(variable, Vec::new(), Some(density), None)
    }

    pub fn zero(variable: Variable) -> Self {
        Self {
            variable,
            atoms: Vec::new(),
            density: None,
            envelope: None,
        }
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn density(&self) -> Option<&Density> {
        self.density.as_ref()
    }

    pub fn envelope(&self) -> Option<&AtomEnvelope> {
        self.envelope.as_ref()
    }

    /// Largest argument (in the measure's variable) up to which the listed
    /// atoms are complete.
    pub fn atom_horizon(&self) -> f64 {
        match &self.envelope {
            Some(e) => e.variable.convert(self.variable, e.cutoff),
            None => f64::INFINITY,
        }
    }

    /// Multiplies every weight and the density by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                position: a.position,
                weight: c * a.weight,
            })
            .collect();
        let density = self.density.as_ref().map(|d| Density {
            variable: d.variable,
            profile: match &d.profile {
                DensityProfile::Cosines { offset, terms } => DensityProfile::Cosines {
                    offset: c * offset,
                    terms: terms.iter().map(|(a, f)| (c * a, *f)).collect(),
                },
                DensityProfile::PowerLaw { coefficient, exponent } => DensityProfile::PowerLaw {
                    coefficient: c * coefficient,
                    exponent: *exponent,
                },
                DensityProfile::Table { points } => DensityProfile::Table {
                    points: points.iter().map(|(x, y)| (*x, c * y)).collect(),
                },
            },
        });
        let envelope = self.envelope.map(|e| AtomEnvelope {
            max_weight: c.abs() * e.max_weight,
            ..e
        });
        Self {
            variable: self.variable,
            atoms,
            density,
            envelope,
        }
    }
}

/// Rewrites the measure in the other variable (`lambda = omega^2`); atoms
/// move, weights stay, and densities keep their native variable.
pub fn change_variable(mu: &SpectralMeasure) -> SpectralMeasure {
    let to = mu.variable.other();
    SpectralMeasure {
        variable: to,
        atoms: mu
            .atoms
            .iter()
            .map(|a| Atom {
                position: mu.variable.convert(to, a.position),
                weight: a.weight,
            })
            .collect(),
        density: mu.density.clone(),
        envelope: mu.envelope,
    }
}
