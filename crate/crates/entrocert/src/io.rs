//! JSON file schemas and validation.
//!
//! Wire formats (complex entries are `[re, im]` pairs, matrices row-major):
//! - Distribution: `{"probs": [0.5, 0.5]}`
//! - Classical ensemble: `{"weights": [...], "members": [{"probs": [...]}]}`
//! - Density matrix: `{"dim": 2, "matrix": [[[1.0, 0.0], [0.0, 0.0]], ...]}`
//! - Channel: `{"dim_in": 2, "dim_out": 2, "kraus": [[[[re, im], ...], ...], ...]}`
//!
//! [`validate_value`] reports per-invariant residuals without running any
//! experiment; ingestion helpers produce validated library types.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels::{ChannelError, KrausChannel};
use crate::classical::{ClassicalEnsemble, ClassicalError, Distribution};
use crate::matrixcore::ComplexMatrix;
use crate::quantum::{DensityMatrix, QuantumError};
use crate::tol;

/// Errors from parsing and validating input files.
#[derive(Debug, Error)]
pub enum IoSchemaError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("unrecognized schema: expected one of probs/weights/matrix/kraus at the top level")]
    UnknownSchema,

    #[error("validation error: {0}")]
    Classical(#[from] ClassicalError),

    #[error("validation error: {0}")]
    Quantum(#[from] QuantumError),

    #[error("validation error: {0}")]
    Channel(#[from] ChannelError),
}

pub type Result<T> = std::result::Result<T, IoSchemaError>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionSchema {
    pub probs: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleSchema {
    pub weights: Vec<f64>,
    pub members: Vec<DistributionSchema>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrixSchema {
    pub dim: usize,
    /// Row-major rows of `[re, im]` pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelSchema {
    pub dim_in: usize,
    pub dim_out: usize,
    /// Kraus operators, each as row-major rows of `[re, im]` pairs.
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

fn matrix_from_pairs(rows: &[Vec<[f64; 2]>]) -> ComplexMatrix {
    let converted: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|p| Complex64::new(p[0], p[1])).collect())
        .collect();
    ComplexMatrix::from_rows(&converted)
}

fn matrix_to_pairs(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

impl DensityMatrixSchema {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        DensityMatrixSchema { dim: rho.dim(), matrix: matrix_to_pairs(rho.matrix()) }
    }
}

impl ChannelSchema {
    pub fn from_channel(phi: &KrausChannel) -> Self {
        ChannelSchema {
            dim_in: phi.dim_in(),
            dim_out: phi.dim_out(),
            kraus: phi.kraus().iter().map(matrix_to_pairs).collect(),
        }
    }
}

/// Parse a distribution from JSON text, renormalizing small tails.
pub fn parse_distribution(text: &str) -> Result<Distribution> {
    let schema: DistributionSchema = serde_json::from_str(text)?;
    Ok(Distribution::ingest(schema.probs)?)
}

/// Parse a classical ensemble from JSON text.
pub fn parse_ensemble(text: &str) -> Result<ClassicalEnsemble> {
    let schema: EnsembleSchema = serde_json::from_str(text)?;
    let members = schema
        .members
        .into_iter()
        .map(|m| Distribution::ingest(m.probs))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(ClassicalEnsemble::new(schema.weights, members)?)
}

/// Parse a density matrix from JSON text.
pub fn parse_density_matrix(text: &str) -> Result<DensityMatrix> {
    let schema: DensityMatrixSchema = serde_json::from_str(text)?;
    let m = matrix_from_pairs(&schema.matrix);
    if m.rows() != schema.dim || m.cols() != schema.dim {
        return Err(QuantumError::DimensionMismatch {
            context: format!("declared dim {} but matrix is {}x{}", schema.dim, m.rows(), m.cols()),
        }
        .into());
    }
    Ok(DensityMatrix::new(m)?)
}

/// Parse a Kraus channel from JSON text.
pub fn parse_channel(text: &str) -> Result<KrausChannel> {
    let schema: ChannelSchema = serde_json::from_str(text)?;
    let kraus: Vec<ComplexMatrix> = schema.kraus.iter().map(|k| matrix_from_pairs(k)).collect();
    Ok(KrausChannel::new(schema.dim_in, schema.dim_out, kraus)?)
}

/// What a file parsed as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FileKind {
    Distribution,
    Ensemble,
    DensityMatrix,
    Channel,
}

/// One named residual with its acceptance tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub invariant: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Per-invariant validation report for an input file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub kind: FileKind,
    pub residuals: Vec<ResidualEntry>,
    pub issues: Vec<String>,
    pub ok: bool,
}

impl ValidationReport {
    fn push(&mut self, invariant: &str, residual: f64, tolerance: f64) {
        let pass = residual <= tolerance;
        if !pass {
            self.ok = false;
        }
        self.residuals.push(ResidualEntry { invariant: invariant.to_string(), residual, tolerance, pass });
    }

    fn issue(&mut self, text: String) {
        self.ok = false;
        self.issues.push(text);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn probs_residuals(report: &mut ValidationReport, probs: &[f64], label: &str) {
    let t = tol::current();
    for (i, &p) in probs.iter().enumerate() {
        if !p.is_finite() {
            report.issue(format!("{label}: non-finite probability at index {i}"));
        } else if p < 0.0 {
            report.issue(format!("{label}: negative probability at index {i}: {p}"));
        }
    }
    let sum: f64 = probs.iter().sum();
    report.push(&format!("{label}: probability sum"), (sum - 1.0).abs(), t.ingest_tail);
}

/// Validate a parsed JSON value against whichever schema its top-level
/// fields select, reporting every invariant residual.
pub fn validate_value(value: &serde_json::Value) -> Result<ValidationReport> {
    let t = tol::current();
    let obj = value.as_object().ok_or(IoSchemaError::UnknownSchema)?;
    if obj.contains_key("kraus") {
        let schema: ChannelSchema = serde_json::from_value(value.clone())?;
        let mut report = ValidationReport { kind: FileKind::Channel, residuals: vec![], issues: vec![], ok: true };
        if schema.kraus.is_empty() {
            report.issue("channel: no Kraus operators".into());
            return Ok(report);
        }
        if schema.kraus.len() > tol::MAX_KRAUS_OPERATORS {
            report.issue(format!(
                "channel: {} Kraus operators exceeds cap {}",
                schema.kraus.len(),
                tol::MAX_KRAUS_OPERATORS
            ));
        }
        let mut acc = ComplexMatrix::zeros(schema.dim_in, schema.dim_in);
        for (i, rows) in schema.kraus.iter().enumerate() {
            let v = matrix_from_pairs(rows);
            if v.rows() != schema.dim_out || v.cols() != schema.dim_in {
                report.issue(format!(
                    "channel: Kraus operator {} is {}x{}, expected {}x{}",
                    i,
                    v.rows(),
                    v.cols(),
                    schema.dim_out,
                    schema.dim_in
                ));
                return Ok(report);
            }
            acc = acc.add(&v.adjoint().matmul(&v));
        }
        let residual = acc.max_abs_diff(&ComplexMatrix::identity(schema.dim_in));
        report.push("channel: trace preservation", residual, t.kraus_completeness);
        Ok(report)
    } else if obj.contains_key("matrix") {
        let schema: DensityMatrixSchema = serde_json::from_value(value.clone())?;
        let mut report =
            ValidationReport { kind: FileKind::DensityMatrix, residuals: vec![], issues: vec![], ok: true };
        let m = matrix_from_pairs(&schema.matrix);
        if m.rows() != schema.dim || m.cols() != schema.dim {
            report.issue(format!("state: declared dim {} but matrix is {}x{}", schema.dim, m.rows(), m.cols()));
            return Ok(report);
        }
        report.push("state: hermiticity", m.hermiticity_residual(), t.hermitian);
        report.push("state: trace", (m.trace().re - 1.0).abs(), t.trace_one);
        if report.ok {
            match crate::matrixcore::hermitian_eig(&m) {
                Ok(eig) => {
                    let min = eig.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
                    report.push("state: positivity (|min eigenvalue| below clamp)", (-min).max(0.0), t.psd_clamp);
                }
                Err(e) => report.issue(format!("state: eigendecomposition failed: {e}")),
            }
        }
        Ok(report)
    } else if obj.contains_key("weights") {
        let schema: EnsembleSchema = serde_json::from_value(value.clone())?;
        let mut report = ValidationReport { kind: FileKind::Ensemble, residuals: vec![], issues: vec![], ok: true };
        for (i, &w) in schema.weights.iter().enumerate() {
            if w <= 0.0 || !w.is_finite() {
                report.issue(format!("ensemble: weight {i} must be positive, got {w}"));
            }
        }
        let sum: f64 = schema.weights.iter().sum();
        report.push("ensemble: weight sum", (sum - 1.0).abs(), t.prob_sum);
        if schema.weights.len() != schema.members.len() {
            report.issue(format!(
                "ensemble: {} weights vs {} members",
                schema.weights.len(),
                schema.members.len()
            ));
        }
        for (i, m) in schema.members.iter().enumerate() {
            probs_residuals(&mut report, &m.probs, &format!("member {i}"));
        }
        Ok(report)
    } else if obj.contains_key("probs") {
        let schema: DistributionSchema = serde_json::from_value(value.clone())?;
        let mut report =
            ValidationReport { kind: FileKind::Distribution, residuals: vec![], issues: vec![], ok: true };
        probs_residuals(&mut report, &schema.probs, "distribution");
        Ok(report)
    } else {
        Err(IoSchemaError::UnknownSchema)
    }
}

/// Validate JSON text; see [`validate_value`].
pub fn validate_text(text: &str) -> Result<ValidationReport> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    validate_value(&value)
}
