//! Deterministic report output: floats at 17 significant digits in both
//! JSON and CSV.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::CliError;

/// An `f64` that serializes with 17 significant digits (`null` when not finite).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sig17(pub f64);

pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(sig17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// Run metadata embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunInfo<C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub config: C,
}

impl<C: Serialize> RunInfo<C> {
    pub fn new(seed: u64, config: C) -> Self {
        Self {
            tool: "riesz",
            version: env!("CARGO_PKG_VERSION"),
            seed,
            config,
        }
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Writes a CSV with the given header; every row must match its length.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

/// Reads an optional JSON config file.
pub fn read_config<T: serde::de::DeserializeOwned + Default>(path: Option<&Path>) -> Result<T, CliError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text =
                fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", p.display())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(0.1), "1.0000000000000001e-1");
        assert_eq!(serde_json::to_string(&Sig17(-2.5)).unwrap(), "-2.5000000000000000e0");
        assert_eq!(serde_json::to_string(&Sig17(f64::NAN)).unwrap(), "null");
        let back: f64 = serde_json::from_str(&sig17(std::f64::consts::PI)).unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }
}
