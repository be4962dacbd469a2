//! File formats shared by the CLI and the browser demo: complex and subset
//! JSON, graph JSON, spectrum CSV, matrix CSV, and the JSONL verification
//! report stream.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError, Graph, SetKind, Simplex, Subset};
use crate::operators::SignedMatrix;
use crate::spectral::Spectrum;
use crate::verify::{Status, TrialRecord, VerifyReport};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("subset file expected a(n) {expected} set, but the elements form a(n) {actual:?} set")]
    ExpectationFailed { expected: String, actual: SetKind },
    #[error("{path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// On-disk complex document. Only `facets` matters on input (the closure is
/// taken on load); the remaining fields are metadata emitted on output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub facets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_vector: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

/// On-disk graph document for `--whitney` input.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default)]
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Open,
    Closed,
}

/// On-disk subset document: an explicit element list relative to a parent
/// complex (a path or an id), with an optional open/closed assertion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubsetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    pub elements: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

fn read_to_string(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Parses a complex document and takes the closure of its facets.
pub fn complex_from_str(path: &Path, text: &str) -> Result<Complex, IoError> {
    let doc: ComplexFile = parse_json(path, text)?;
    let simplices: Result<Vec<Simplex>, ComplexError> =
        doc.facets.into_iter().map(Simplex::new).collect();
    Ok(Complex::closure(&simplices?)?)
}

pub fn load_complex(path: &Path) -> Result<Complex, IoError> {
    let text = read_to_string(path)?;
    complex_from_str(path, &text)
}

pub fn load_graph(path: &Path) -> Result<Graph, IoError> {
    let text = read_to_string(path)?;
    let doc: GraphFile = parse_json(path, &text)?;
    Ok(Graph::new(doc.vertices, doc.edges)?)
}

pub fn load_subset_file(path: &Path) -> Result<SubsetFile, IoError> {
    let text = read_to_string(path)?;
    parse_json(path, &text)
}

/// Resolves a subset file against its parent complex, honoring the
/// `expect` assertion.
pub fn resolve_subset(parent: &Complex, doc: &SubsetFile) -> Result<Subset, IoError> {
    let elements: Result<Vec<Simplex>, ComplexError> =
        doc.elements.iter().cloned().map(Simplex::new).collect();
    let subset = parent.subset(elements?)?;
    if let Some(expect) = doc.expect {
        let ok = match expect {
            Expect::Open => subset.is_open(),
            Expect::Closed => subset.is_closed(),
        };
        if !ok {
            return Err(IoError::ExpectationFailed {
                expected: match expect {
                    Expect::Open => "open".into(),
                    Expect::Closed => "closed".into(),
                },
                actual: subset.kind(),
            });
        }
    }
    Ok(subset)
}

/// Canonical complex document: facets in canonical order plus metadata.
pub fn complex_document(c: &Complex) -> ComplexFile {
    ComplexFile {
        facets: c.facets().iter().map(|s| s.vertices().to_vec()).collect(),
        size: Some(c.len()),
        dimension: c.dim(),
        f_vector: Some(c.f_vector().to_vec()),
        euler_characteristic: Some(c.euler_characteristic()),
        id: Some(c.id().to_string()),
    }
}

/// Deterministic pretty JSON with a trailing newline; re-emitting a re-read
/// document is byte-identical.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Spectrum CSV: `#` header carrying n, the zero tolerance and the pad
/// length, then one eigenvalue per line at full precision.
pub fn spectrum_csv(spec: &Spectrum) -> String {
    let pad = spec.pad_len().map_or("none".to_string(), |p| p.to_string());
    let mut out = format!(
        "# n={} zero_tol={:.17e} pad={}\n",
        spec.len(),
        spec.zero_tol(),
        pad
    );
    for v in spec.values() {
        out.push_str(&format!("{:.17e}\n", v));
    }
    out
}

/// Integer matrix CSV with a `# blocks:` header line carrying the
/// per-degree block boundaries.
pub fn matrix_csv(m: &SignedMatrix) -> String {
    let blocks = m
        .blocks()
        .map(|b| {
            b.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .unwrap_or_default();
    let mut out = format!("# blocks: {blocks}\n");
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// One JSON object per line, one line per (trial, check).
pub fn records_jsonl(records: &[TrialRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("serializable record"));
        out.push('\n');
    }
    out
}

pub fn parse_records_jsonl(path: &Path, text: &str) -> Result<Vec<TrialRecord>, IoError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_json(path, l))
        .collect()
}

/// Fixed-width human-readable summary of aggregated reports.
pub fn summary_table(reports: &[VerifyReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<28} {:<12} {:>14} {:>8} {:>11}\n",
        "check", "status", "worst margin", "trials", "violations"
    ));
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Observation => "observation",
        };
        let violations = r.info["violations"].as_u64().unwrap_or(0);
        out.push_str(&format!(
            "{:<28} {:<12} {:>14.6e} {:>8} {:>11}\n",
            r.check, status, r.worst_margin, r.trials, violations
        ));
    }
    out
}
