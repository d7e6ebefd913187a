//! Exact conversion of coefficient files between the four expansion kinds.

use std::fs;
use std::path::PathBuf;

use clap::Args;

use riesz_core::coeff_transforms::io::{CoeffDocument, DocumentKind};
use riesz_core::Error;

use crate::CliError;

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// Coefficient file (JSON with m, kind, coeffs)
    #[arg(long)]
    input: PathBuf,
    /// Target kind: heat, lambda-diag, omega-diag or cylinder
    #[arg(long, conflicts_with = "direction", required_unless_present = "direction")]
    to: Option<String>,
    /// Source and target as SOURCE2TARGET, e.g. heat2lambda-diag
    #[arg(long)]
    direction: Option<String>,
    /// Expected dimension; rejected when the file disagrees
    #[arg(long)]
    m: Option<u32>,
    /// Output file (stdout when absent)
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_kind(text: &str) -> Result<DocumentKind, CliError> {
    text.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

fn undetermined_message(s: usize, m: u32) -> String {
    format!(
        "slot s = {s} is undetermined: for m = {m}, omega-mean coefficients at s > m with s - m odd \
         cannot be recovered from lambda-means, so they cannot be consumed by a further transform"
    )
}

fn file_dimension(text: &str) -> u32 {
    serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .and_then(|v| v.get("m")?.as_u64())
        .map_or(1, |m| m as u32)
}

pub fn run(args: TransformArgs) -> Result<bool, CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.input.display())))?;
    let doc = CoeffDocument::from_json(&text).map_err(|e| match e {
        Error::Undetermined { s } => CliError::Failed(undetermined_message(s, file_dimension(&text))),
        other => CliError::Usage(format!("invalid coefficient file: {other}")),
    })?;
    let target = match (&args.to, &args.direction) {
        (Some(to), _) => parse_kind(to)?,
        (None, Some(direction)) => {
            let (from, to) = direction
                .split_once('2')
                .ok_or_else(|| CliError::Usage(format!("direction '{direction}' is not of the form SOURCE2TARGET")))?;
            let from = parse_kind(from)?;
            if from != doc.kind() {
                return Err(CliError::Usage(format!(
                    "direction starts at {from} but the file holds {}",
                    doc.kind()
                )));
            }
            parse_kind(to)?
        }
        (None, None) => return Err(CliError::Usage("one of --to or --direction is required".into())),
    };
    if let Some(m) = args.m {
        if m != doc.m() {
            return Err(CliError::Usage(format!(
                "--m {m} disagrees with the file's m = {}",
                doc.m()
            )));
        }
    }
    let out = doc.transform(target).map_err(|e| match e {
        Error::Undetermined { s } => CliError::Failed(undetermined_message(s, doc.m())),
        other => CliError::Check(other),
    })?;
    let mut json = out.to_json();
    json.push('\n');
    match args.output {
        Some(path) => {
            fs::write(&path, json).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{json}"),
    }
    Ok(true)
}
