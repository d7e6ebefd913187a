//! Coefficient documents: JSON files holding one diagonal family or one
//! kernel expansion, and conversions between them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    cylinder_from_omega_diag, heat_from_lambda_diag, is_log_slot, lambda_diag_from_heat, lambda_diag_from_omega_diag,
    omega_diag_from_cylinder, omega_diag_from_lambda_diag, Coeff, CylinderExpansion, DiagonalLambdaCoeffs,
    DiagonalOmegaCoeffs, HeatExpansion,
};
use crate::error::{Error, Result};
use crate::exact_scalar::ExactScalar;

pub const UNDETERMINED: &str = "undetermined";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DocumentKind {
    #[serde(rename = "heat")]
    Heat,
    #[serde(rename = "lambda-diag")]
    LambdaDiag,
    #[serde(rename = "omega-diag")]
    OmegaDiag,
    #[serde(rename = "cylinder")]
    Cylinder,
}

impl DocumentKind {
    fn rank(self) -> i32 {
        match self {
            DocumentKind::Heat => 0,
            DocumentKind::LambdaDiag => 1,
            DocumentKind::OmegaDiag => 2,
            DocumentKind::Cylinder => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DocumentKind::Heat => "heat",
            DocumentKind::LambdaDiag => "lambda-diag",
            DocumentKind::OmegaDiag => "omega-diag",
            DocumentKind::Cylinder => "cylinder",
        }
    }
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DocumentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heat" => Ok(DocumentKind::Heat),
            "lambda-diag" => Ok(DocumentKind::LambdaDiag),
            "omega-diag" => Ok(DocumentKind::OmegaDiag),
            "cylinder" => Ok(DocumentKind::Cylinder),
            other => Err(Error::Parse(format!("unknown coefficient kind '{other}'"))),
        }
    }
}

/// One serialized coefficient slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub s: usize,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log: Option<String>,
}

/// On-disk form of a coefficient document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffFile {
    pub m: u32,
    pub kind: DocumentKind,
    pub coeffs: Vec<CoeffEntry>,
}

/// A validated coefficient document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffDocument {
    Heat(HeatExpansion),
    LambdaDiag(DiagonalLambdaCoeffs),
    OmegaDiag(DiagonalOmegaCoeffs),
    Cylinder(CylinderExpansion),
}

fn parse_value(text: &str, s: usize) -> Result<Coeff> {
    if text.trim() == UNDETERMINED {
        return Ok(Coeff::Undetermined);
    }
    text.parse::<ExactScalar>()
        .map(Coeff::Known)
        .map_err(|e| Error::Parse(format!("slot s = {s}: {e}")))
}

fn render_coeff(c: &Coeff) -> String {
    match c {
        Coeff::Known(v) => v.to_string(),
        Coeff::Undetermined => UNDETERMINED.to_string(),
    }
}

impl CoeffDocument {
    pub fn kind(&self) -> DocumentKind {
        match self {
            CoeffDocument::Heat(_) => DocumentKind::Heat,
            CoeffDocument::LambdaDiag(_) => DocumentKind::LambdaDiag,
            CoeffDocument::OmegaDiag(_) => DocumentKind::OmegaDiag,
            CoeffDocument::Cylinder(_) => DocumentKind::Cylinder,
        }
    }

    pub fn m(&self) -> u32 {
        match self {
            CoeffDocument::Heat(x) => x.m(),
            CoeffDocument::LambdaDiag(x) => x.m(),
            CoeffDocument::OmegaDiag(x) => x.m(),
            CoeffDocument::Cylinder(x) => x.m(),
        }
    }

    pub fn from_file(file: &CoeffFile) -> Result<Self> {
        let len = file.coeffs.iter().map(|e| e.s + 1).max().unwrap_or(0);
        let mut values = vec![Coeff::zero(); len];
        let mut logs = vec![ExactScalar::zero(); len];
        let mut seen = vec![false; len];
        for entry in &file.coeffs {
            if seen[entry.s] {
                return Err(Error::Parse(format!("slot s = {} appears twice", entry.s)));
            }
            seen[entry.s] = true;
            values[entry.s] = parse_value(&entry.value, entry.s)?;
            if let Some(log) = &entry.log {
                logs[entry.s] = log
                    .parse()
                    .map_err(|e| Error::Parse(format!("log at s = {}: {e}", entry.s)))?;
            }
        }
        let has_logs = matches!(file.kind, DocumentKind::OmegaDiag | DocumentKind::Cylinder);
        if !has_logs && logs.iter().any(|l| !l.is_zero()) {
            return Err(Error::Parse(format!("{} documents carry no log entries", file.kind)));
        }
        let known = |values: Vec<Coeff>| -> Result<Vec<ExactScalar>> {
            values
                .into_iter()
                .enumerate()
                .map(|(s, c)| c.known(s).cloned())
                .collect()
        };
        Ok(match file.kind {
            DocumentKind::Heat => CoeffDocument::Heat(HeatExpansion::new(file.m, known(values)?)?),
            DocumentKind::LambdaDiag => CoeffDocument::LambdaDiag(DiagonalLambdaCoeffs::new(file.m, known(values)?)?),
            DocumentKind::OmegaDiag => CoeffDocument::OmegaDiag(DiagonalOmegaCoeffs::new(file.m, values, logs)?),
            DocumentKind::Cylinder => CoeffDocument::Cylinder(CylinderExpansion::new(file.m, values, logs)?),
        })
    }

    pub fn to_file(&self) -> CoeffFile {
        let m = self.m();
        let plain = |v: &[ExactScalar]| -> Vec<CoeffEntry> {
            v.iter()
                .enumerate()
                .map(|(s, x)| CoeffEntry {
                    s,
                    value: x.to_string(),
                    log: None,
                })
                .collect()
        };
        let logged = |c: &[Coeff], l: &[ExactScalar]| -> Vec<CoeffEntry> {
            c.iter()
                .zip(l)
                .enumerate()
                .map(|(s, (c, l))| CoeffEntry {
                    s,
                    value: render_coeff(c),
                    log: is_log_slot(m, s).then(|| l.to_string()),
                })
                .collect()
        };
        let coeffs = match self {
            CoeffDocument::Heat(x) => plain(x.b()),
            CoeffDocument::LambdaDiag(x) => plain(x.a()),
            CoeffDocument::OmegaDiag(x) => logged(x.c(), x.d()),
            CoeffDocument::Cylinder(x) => logged(x.e(), x.f()),
        };
        CoeffFile {
            m,
            kind: self.kind(),
            coeffs,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CoeffFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("coefficient file: {e}")))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("coefficient files always serialize")
    }

    fn step(&self, up: bool) -> Result<Self> {
        Ok(match (self, up) {
            (CoeffDocument::Heat(x), true) => CoeffDocument::LambdaDiag(lambda_diag_from_heat(x)?),
            (CoeffDocument::LambdaDiag(x), true) => CoeffDocument::OmegaDiag(omega_diag_from_lambda_diag(x)?),
            (CoeffDocument::OmegaDiag(x), true) => CoeffDocument::Cylinder(cylinder_from_omega_diag(x)?),
            (CoeffDocument::LambdaDiag(x), false) => CoeffDocument::Heat(heat_from_lambda_diag(x)?),
            (CoeffDocument::OmegaDiag(x), false) => CoeffDocument::LambdaDiag(lambda_diag_from_omega_diag(x)?),
            (CoeffDocument::Cylinder(x), false) => CoeffDocument::OmegaDiag(omega_diag_from_cylinder(x)?),
            _ => unreachable!("no step beyond the ends of the chain"),
        })
    }

    /// Converts along heat, lambda-diag, omega-diag, cylinder.
    pub fn transform(&self, target: DocumentKind) -> Result<Self> {
        let mut doc = self.clone();
        while doc.kind() != target {
            let up = target.rank() > doc.kind().rank();
            doc = doc.step(up)?;
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_scalar::int;

    #[test]
    fn heat_to_lambda_line_case() {
        let text = r#"{"m": 1, "kind": "heat", "coeffs": [{"s": 0, "value": "1/2 * pi^(-1/2)"}]}"#;
        let doc = CoeffDocument::from_json(text).unwrap();
        let out = doc.transform(DocumentKind::LambdaDiag).unwrap();
        let CoeffDocument::LambdaDiag(a) = &out else { panic!() };
        assert_eq!(a.a()[0], ExactScalar::pi_half_power(int(1), -2));
    }

    #[test]
    fn undetermined_marking_and_round_trip() {
        let text = r#"{"m": 1, "kind": "lambda-diag", "coeffs": [
            {"s": 0, "value": "1 * pi^(-2/2)"}, {"s": 1, "value": "-1/2"}, {"s": 2, "value": "3"}]}"#;
        let doc = CoeffDocument::from_json(text).unwrap();
        let omega = doc.transform(DocumentKind::OmegaDiag).unwrap();
        let file = omega.to_file();
        assert_eq!(file.coeffs[2].value, UNDETERMINED);
        assert_eq!(file.coeffs[2].log.as_deref(), Some("9/4"));
        let reparsed = CoeffDocument::from_json(&omega.to_json()).unwrap();
        let back = reparsed.transform(DocumentKind::LambdaDiag).unwrap();
        assert_eq!(back.to_json(), doc.to_json());
        assert!(omega.transform(DocumentKind::Cylinder).is_ok());
        assert!(omega.transform(DocumentKind::Heat).is_ok());
    }

    #[test]
    fn schema_violations() {
        assert!(CoeffDocument::from_json(r#"{"m": 1, "kind": "bogus", "coeffs": []}"#).is_err());
        assert!(CoeffDocument::from_json(
            r#"{"m": 1, "kind": "heat", "coeffs": [{"s": 0, "value": "1"}, {"s": 0, "value": "2"}]}"#
        )
        .is_err());
        assert!(
            CoeffDocument::from_json(r#"{"m": 1, "kind": "heat", "coeffs": [{"s": 0, "value": "undetermined"}]}"#)
                .is_err()
        );
        assert!(CoeffDocument::from_json(
            r#"{"m": 1, "kind": "heat", "coeffs": [{"s": 0, "value": "1", "log": "1"}]}"#
        )
        .is_err());
    }

    #[test]
    fn consuming_undetermined_names_the_slot() {
        let text = r#"{"m": 1, "kind": "cylinder", "coeffs": [
            {"s": 0, "value": "1"}, {"s": 1, "value": "0"}, {"s": 2, "value": "undetermined", "log": "-1"}]}"#;
        let doc = CoeffDocument::from_json(text).unwrap();
        let omega = doc.transform(DocumentKind::OmegaDiag).unwrap();
        // the lambda side only needs d at the log slot
        assert!(omega.transform(DocumentKind::LambdaDiag).is_ok());
    }
}
