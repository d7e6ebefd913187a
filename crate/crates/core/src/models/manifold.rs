use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Dirichlet,
    Neumann,
}

impl Boundary {
    /// Sign of the reflected image: `-1` for Dirichlet, `+1` for Neumann.
    pub fn image_sign(self) -> f64 {
        match self {
            Boundary::Dirichlet => -1.0,
            Boundary::Neumann => 1.0,
        }
    }
}

/// One-dimensional domains of `-d^2/dx^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Manifold {
    /// The real line.
    Line,
    /// `(0, inf)`.
    HalfLine { boundary: Boundary },
    /// `(-length, length)` with its ends identified.
    Circle { length: f64 },
    /// `(0, length)` with Dirichlet ends.
    Interval { length: f64 },
}

impl Manifold {
    pub fn circle(length: f64) -> Result<Self> {
        check_length(length)?;
        Ok(Manifold::Circle { length })
    }

    pub fn interval(length: f64) -> Result<Self> {
        check_length(length)?;
        Ok(Manifold::Interval { length })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Manifold::Line => "line",
            Manifold::HalfLine { .. } => "half-line",
            Manifold::Circle { .. } => "circle",
            Manifold::Interval { .. } => "interval",
        }
    }

    /// `length` for the compact cases.
    pub fn length(&self) -> Option<f64> {
        match *self {
            Manifold::Circle { length } | Manifold::Interval { length } => Some(length),
            _ => None,
        }
    }

    /// Spacing `pi / length` of the frequency ladder of the compact cases.
    pub fn ladder_step(&self) -> Option<f64> {
        self.length().map(|l| PI / l)
    }

    /// Rejects points outside the closure of the domain.
    pub fn check_point(&self, x: f64) -> Result<()> {
        let inside = match *self {
            Manifold::Line => x.is_finite(),
            Manifold::HalfLine { .. } => x >= 0.0 && x.is_finite(),
            Manifold::Circle { length } => x.abs() <= length,
            Manifold::Interval { length } => (0.0..=length).contains(&x),
        };
        if inside {
            Ok(())
        } else {
            Err(Error::Domain(format!("point {x} lies outside the {self}")))
        }
    }

    /// Parses `line`, `half-line` (with `boundary`), `circle` and `interval`
    /// (with `length`).
    pub fn parse(name: &str, length: Option<f64>, boundary: Option<Boundary>) -> Result<Self> {
        let need_length = || length.ok_or_else(|| Error::InvalidArgument(format!("{name} needs a length")));
        match name.to_ascii_lowercase().as_str() {
            "line" => Ok(Manifold::Line),
            "half-line" | "halfline" => Ok(Manifold::HalfLine {
                boundary: boundary.unwrap_or(Boundary::Dirichlet),
            }),
            "circle" => Manifold::circle(need_length()?),
            "interval" => {
                if boundary == Some(Boundary::Neumann) {
                    return Err(Error::Unsupported("Neumann interval".into()));
                }
                Manifold::interval(need_length()?)
            }
            other => Err(Error::InvalidArgument(format!("unknown manifold '{other}'"))),
        }
    }
}

fn check_length(length: f64) -> Result<()> {
    if length > 0.0 && length.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("length must be positive, got {length}")))
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifold::Line => write!(f, "line"),
            Manifold::HalfLine { boundary } => write!(f, "half-line ({boundary:?})"),
            Manifold::Circle { length } => write!(f, "circle (L = {length})"),
            Manifold::Interval { length } => write!(f, "interval (L = {length})"),
        }
    }
}

/// What is measured: the spectral function at a point pair, or the trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Observable {
    Diagonal { x: f64 },
    OffDiagonal { x: f64, y: f64 },
    Trace,
}

impl Observable {
    /// Point pair, `None` for the trace.
    pub fn points(&self) -> Option<(f64, f64)> {
        match *self {
            Observable::Diagonal { x } => Some((x, x)),
            Observable::OffDiagonal { x, y } => Some((x, y)),
            Observable::Trace => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Observable::Diagonal { .. } => "diagonal",
            Observable::OffDiagonal { .. } => "off-diagonal",
            Observable::Trace => "trace",
        }
    }

    /// Checks the points against the manifold and the trace against compactness.
    pub fn check(&self, man: &Manifold) -> Result<()> {
        match self.points() {
            Some((x, y)) => {
                man.check_point(x)?;
                man.check_point(y)
            }
            None if man.length().is_some() => Ok(()),
            None => Err(Error::Unsupported(format!("trace on the {man}"))),
        }
    }
}
