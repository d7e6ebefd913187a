//! JSON form of spectral measures.
//!
//! ```json
//! {
//!   "variable": "omega",
//!   "atoms": [[0.0, 0.5], [3.14159, 1.0]],
//!   "density": {"variable": "omega", "kind": "cosines", "offset": 0.318, "terms": [[-0.318, 2.0]]},
//!   "envelope": {"variable": "omega", "cutoff": 100.0, "max_weight": 1.0, "min_spacing": 3.14}
//! }
//! ```
//!
//! Density kinds: `cosines {offset, terms: [[amp, freq]]}`,
//! `power-law {coefficient, exponent}`, `table {points: [[w, value]]}`.

use serde::{Deserialize, Serialize};

use super::measure::{Atom, AtomEnvelope, Density, DensityProfile, SpectralMeasure, Variable};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum ProfileRecord {
    Cosines {
        variable: Variable,
        offset: f64,
        #[serde(default)]
        terms: Vec<(f64, f64)>,
    },
    PowerLaw {
        variable: Variable,
        coefficient: f64,
        exponent: f64,
    },
    Table {
        variable: Variable,
        points: Vec<(f64, f64)>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureRecord {
    variable: Variable,
    #[serde(default)]
    atoms: Vec<Atom>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    density: Option<ProfileRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    envelope: Option<AtomEnvelope>,
}

impl From<&Density> for ProfileRecord {
    fn from(d: &Density) -> Self {
        let variable = d.variable;
        match &d.profile {
            DensityProfile::Cosines { offset, terms } => ProfileRecord::Cosines {
                variable,
                offset: *offset,
                terms: terms.clone(),
            },
            DensityProfile::PowerLaw { coefficient, exponent } => ProfileRecord::PowerLaw {
                variable,
                coefficient: *coefficient,
                exponent: *exponent,
            },
            DensityProfile::Table { points } => ProfileRecord::Table {
                variable,
                points: points.clone(),
            },
        }
    }
}

impl From<ProfileRecord> for Density {
    fn from(r: ProfileRecord) -> Self {
        match r {
            ProfileRecord::Cosines {
                variable,
                offset,
                terms,
            } => Density {
                variable,
                profile: DensityProfile::Cosines { offset, terms },
            },
            ProfileRecord::PowerLaw {
                variable,
                coefficient,
                exponent,
            } => Density {
                variable,
                profile: DensityProfile::PowerLaw { coefficient, exponent },
            },
            ProfileRecord::Table { variable, points } => Density {
                variable,
                profile: DensityProfile::Table { points },
            },
        }
    }
}

impl SpectralMeasure {
    pub fn from_json(text: &str) -> Result<Self> {
        let r: MeasureRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        SpectralMeasure::new(r.variable, r.atoms, r.density.map(Density::from), r.envelope)
    }

    pub fn to_json(&self) -> String {
        let r = MeasureRecord {
            variable: self.variable(),
            atoms: self.atoms().to_vec(),
            density: self.density().map(ProfileRecord::from),
            envelope: self.envelope().copied(),
        };
        serde_json::to_string_pretty(&r).expect("measure records always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{
            "variable": "omega",
            "atoms": [[0.0, 0.5], [3.0, 1.0]],
            "density": {"kind": "power-law", "variable": "lambda", "coefficient": 0.2, "exponent": -0.5},
            "envelope": {"variable": "omega", "cutoff": 10.0, "max_weight": 1.0, "min_spacing": 3.0}
        }"#;
        let mu = SpectralMeasure::from_json(text).unwrap();
        assert_eq!(mu.atoms().len(), 2);
        assert_eq!(SpectralMeasure::from_json(&mu.to_json()).unwrap(), mu);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SpectralMeasure::from_json("{\"variable\": \"mu\"}"),
            Err(Error::Parse(_))
        ));
        let unsorted = r#"{"variable": "lambda", "atoms": [[2.0, 1.0], [1.0, 1.0]]}"#;
        assert!(matches!(
            SpectralMeasure::from_json(unsorted),
            Err(Error::InvalidArgument(_))
        ));
        let table =
            r#"{"variable": "lambda", "density": {"kind": "table", "variable": "lambda", "points": [[0.0, 1.0]]}}"#;
        assert!(SpectralMeasure::from_json(table).is_err());
    }
}
