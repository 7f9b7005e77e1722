//! Machine-readable reports.
//!
//! Every subcommand emits the same top-level schema with stable field names;
//! fields that do not apply are `null`. Matrices are serialized row-major as
//! exact coefficient strings, never floats, so reports are bit-faithful and
//! independently checkable.

use serde::Serialize;

use crate::certify::Certificate;
use crate::scalar::Scalar;
use crate::poly::NcPoly;
use crate::presentation::{MinMonomialCertificate, Presentation};
use crate::word::Alphabet;

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub verdict: String,
    pub rank: Option<usize>,
    pub beta: Option<Vec<Vec<String>>>,
    pub alpha: Option<Vec<Vec<String>>>,
    pub phi_candidates: Option<Vec<String>>,
    pub phi_relations: Option<Vec<String>>,
    pub tau_trace: Option<Vec<String>>,
    pub min_monomial: Option<String>,
    pub presentation: Option<Vec<String>>,
    pub oracle: Option<OracleReport>,
    pub witness: Option<WitnessReport>,
    pub assumptions: Vec<String>,
    pub reason: Option<String>,
    pub timings: Timings,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub max_degree: usize,
    pub found: bool,
    pub phi: Option<String>,
    pub exact: Option<bool>,
    pub membership: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub max_degree: usize,
    pub found: bool,
    pub entries: Vec<WitnessEntryReport>,
}

#[derive(Debug, Serialize)]
pub struct WitnessEntryReport {
    pub variable: String,
    pub phi: String,
    pub ideal_part: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub total_ms: u128,
}

impl Report {
    pub fn new(command: &str, verdict: &str) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            verdict: verdict.to_string(),
            rank: None,
            beta: None,
            alpha: None,
            phi_candidates: None,
            phi_relations: None,
            tau_trace: None,
            min_monomial: None,
            presentation: None,
            oracle: None,
            witness: None,
            assumptions: Vec::new(),
            reason: None,
            timings: Timings { total_ms: 0 },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization never fails")
    }
}

pub fn render_matrix(matrix: &[Vec<Scalar>]) -> Vec<Vec<String>> {
    matrix
        .iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect())
        .collect()
}

pub fn render_polys(polys: &[NcPoly], alphabet: &Alphabet) -> Vec<String> {
    polys
        .iter()
        .map(|p| p.display(alphabet).to_string())
        .collect()
}

pub fn render_presentation(presentation: &Presentation, alphabet: &Alphabet) -> Vec<String> {
    presentation
        .terms()
        .iter()
        .map(|t| t.display(alphabet).to_string())
        .collect()
}

/// Fills the certifier fields. Transformed polynomials are rendered over the
/// new coordinates `y1..yN`.
pub fn fill_certificate(report: &mut Report, certificate: &Certificate) {
    let n_vars = certificate.beta.len() as u32;
    let y_names = Alphabet::numbered("y", n_vars);
    report.verdict = certificate.verdict.as_str().to_string();
    report.rank = Some(certificate.rank);
    report.beta = Some(render_matrix(&certificate.beta));
    report.alpha = certificate.alpha.as_ref().map(|a| render_matrix(a));
    if certificate.alpha.is_some() {
        report.phi_candidates = Some(render_polys(&certificate.phi_candidates, &y_names));
        report.phi_relations = Some(render_polys(&certificate.phi_relations, &y_names));
    }
    report.assumptions = certificate.assumptions.clone();
    report.reason = certificate.rejection_reason.clone();
}

/// Fills the rewrite-engine fields, rendered over the given display alphabet.
pub fn fill_min_monomial(
    report: &mut Report,
    certificate: &MinMonomialCertificate,
    alphabet: &Alphabet,
) {
    report.tau_trace = Some(
        certificate
            .tau_trace
            .iter()
            .map(|w| w.display(alphabet).to_string())
            .collect(),
    );
    report.min_monomial = Some(certificate.min_monomial.display(alphabet).to_string());
    report.presentation = Some(render_presentation(&certificate.presentation, alphabet));
}
