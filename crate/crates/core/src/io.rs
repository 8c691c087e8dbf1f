//! JSON documents read and written by the command-line tool.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::neps::{BasisVector, NepsSpec};

/// On-disk graph description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub factors: Vec<usize>,
    pub basis: Vec<Vec<i64>>,
}

impl SpecDocument {
    pub fn from_spec(spec: &NepsSpec, name: Option<String>) -> Self {
        SpecDocument {
            name,
            factors: spec.factors().to_vec(),
            basis: spec
                .basis()
                .iter()
                .map(|a| a.bits().iter().map(|&b| b as i64).collect())
                .collect(),
        }
    }

    /// Validates into a spec. Row-level errors are not tied to a line here;
    /// see [`parse_spec`].
    pub fn to_spec(&self) -> Result<NepsSpec> {
        let mut basis = Vec::with_capacity(self.basis.len());
        for (index, row) in self.basis.iter().enumerate() {
            if let Some((position, &value)) = row.iter().enumerate().find(|(_, &b)| b != 0 && b != 1) {
                return Err(Error::NotBinary { index, position, value });
            }
            basis.push(BasisVector::new(row.iter().map(|&b| b as u8).collect()));
        }
        NepsSpec::new(self.factors.clone(), basis)
    }
}

/// 1-based line of the `row`-th entry of the top-level `"basis"` array.
fn basis_row_line(text: &str, row: usize) -> Option<usize> {
    let start = text.find("\"basis\"")?;
    let mut depth = 0usize;
    let mut seen = 0usize;
    let mut in_string = false;
    for (offset, ch) in text[start..].char_indices() {
        match ch {
            '"' => in_string = !in_string,
            _ if in_string => {}
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == row {
                        return Some(line_of(text, start + offset));
                    }
                    seen += 1;
                }
            }
            ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset].matches('\n').count() + 1
}

fn key_line(text: &str, key: &str) -> Option<usize> {
    text.find(&format!("\"{key}\"")).map(|o| line_of(text, o))
}

/// Parses and validates a spec document, attaching the offending line to
/// validation errors.
pub fn parse_spec(text: &str) -> Result<(SpecDocument, NepsSpec)> {
    let doc: SpecDocument = serde_json::from_str(text)?;
    match doc.to_spec() {
        Ok(spec) => Ok((doc, spec)),
        Err(e) => {
            let line = match &e {
                Error::NotBinary { index, .. }
                | Error::ZeroVector { index }
                | Error::LengthMismatch { index, .. }
                | Error::DuplicateVector { second: index, .. } => basis_row_line(text, *index),
                Error::NoFactors | Error::FactorTooSmall { .. } => key_line(text, "factors"),
                Error::EmptyBasis => key_line(text, "basis"),
                _ => None,
            };
            Err(match line {
                Some(line) => Error::AtLine {
                    line,
                    source: Box::new(e),
                },
                None => e,
            })
        }
    }
}

pub fn load_spec(path: &Path) -> Result<(SpecDocument, NepsSpec)> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    parse_spec(&text)
}

pub fn save_spec(path: &Path, doc: &SpecDocument) -> Result<()> {
    write_json(path, doc)
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?).map_err(|source| Error::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

/// Row-major `[re, im]` pairs.
pub fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.dim())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

/// Wrapper adding tool metadata to any report body.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub report: T,
}

impl<T: Serialize> ReportDocument<T> {
    pub fn new(report: T, timings: Option<Timings>) -> Self {
        ReportDocument {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            timings,
            report,
        }
    }
}
