//! Density matrices and their entropic functionals: von Neumann entropy,
//! quantum relative entropy with its support-condition infinity branch,
//! spectral and eigenvalue-block decompositions, purification, and the
//! bipartite entropy identity check.
//!
//! Operator logarithms are always evaluated through the eigendecomposition
//! with the `0·ln 0` convention on the kernel. Negative eigenvalue dust in
//! `[-clamp, 0]` is clamped to zero and the spectrum renormalized; anything
//! more negative rejects the state.

use num_complex::Complex64;
use thiserror::Error;

use crate::classical::Distribution;
use crate::matrixcore::{self, ComplexMatrix, EigenSystem, MatrixError, Subsystem};
use crate::tol;

/// Errors from the quantum module.
#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("state trace is {trace}, outside tolerance {tolerance:.3e} of 1")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("state has eigenvalue {min_eigenvalue:.3e} below the PSD clamp window")]
    NotPositive { min_eigenvalue: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("ensemble weight at index {index} must be positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("ensemble has {weights} weights but {members} members")]
    LengthMismatch { weights: usize, members: usize },

    #[error("ensemble barycenter deviates from target by {residual:.3e} (tolerance {tolerance:.3e})")]
    BarycenterMismatch { residual: f64, tolerance: f64 },

    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub type Result<T> = std::result::Result<T, QuantumError>;

/// Hermitian, positive semidefinite, trace-one complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate a candidate state at the default trace tolerance.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_trace_tolerance(matrix, tol::current().trace_one)
    }

    /// Validate with an explicit trace tolerance. Channel outputs use the
    /// (looser) trace-preservation tolerance of their channel.
    pub fn with_trace_tolerance(matrix: ComplexMatrix, trace_tol: f64) -> Result<Self> {
        let t = tol::current();
        if !matrix.is_square() {
            return Err(MatrixError::NotSquare { rows: matrix.rows(), cols: matrix.cols() }.into());
        }
        let residual = matrix.hermiticity_residual();
        if residual > t.hermitian {
            return Err(MatrixError::NotHermitian { residual, tolerance: t.hermitian }.into());
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > trace_tol {
            return Err(QuantumError::TraceNotOne { trace, tolerance: trace_tol });
        }
        let eig = matrixcore::hermitian_eig(&matrix)?;
        let min = eig.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        if min < -t.psd_clamp {
            return Err(QuantumError::NotPositive { min_eigenvalue: min });
        }
        let dim = matrix.rows();
        Ok(DensityMatrix { dim, matrix })
    }

    /// Pure state `|ψ⟩⟨ψ|` from a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(QuantumError::TraceNotOne { trace: 0.0, tolerance: tol::current().trace_one });
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v, &v))
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64);
        DensityMatrix { dim, matrix: m }
    }

    /// Diagonal state from a probability vector.
    pub fn from_distribution(x: &Distribution) -> Self {
        DensityMatrix { dim: x.len(), matrix: ComplexMatrix::from_real_diag(x.probs()) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigendecomposition; valid states never fail here.
    pub fn eigen(&self) -> EigenSystem {
        matrixcore::hermitian_eig(&self.matrix).expect("validated state must diagonalize")
    }

    /// Clamped, renormalized spectrum sorted nonincreasing. This is the
    /// probability vector all entropic functionals of the state reduce to.
    pub fn spectrum(&self) -> Vec<f64> {
        clamp_spectrum(self.eigen().eigenvalues())
    }

    /// Spectrum as a classical distribution.
    pub fn spectrum_distribution(&self) -> Distribution {
        Distribution::new(self.spectrum()).expect("clamped spectrum is a distribution")
    }

    /// Number of eigenvalues above the support threshold.
    pub fn rank(&self) -> usize {
        let thresh = tol::current().support;
        self.spectrum().iter().filter(|&&s| s > thresh).count()
    }
}

fn clamp_spectrum(eigenvalues: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = eigenvalues.iter().map(|&l| if l > 0.0 { l } else { 0.0 }).collect();
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        for x in v.iter_mut() {
            *x /= sum;
        }
    }
    v
}

/// Atomic ensemble of density matrices with positive weights summing to 1.
#[derive(Debug, Clone)]
pub struct QuantumEnsemble {
    weights: Vec<f64>,
    members: Vec<DensityMatrix>,
}

impl QuantumEnsemble {
    pub fn new(weights: Vec<f64>, members: Vec<DensityMatrix>) -> Result<Self> {
        let t = tol::current();
        if weights.len() != members.len() {
            return Err(QuantumError::LengthMismatch { weights: weights.len(), members: members.len() });
        }
        let mut sum = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            if w <= 0.0 || !w.is_finite() {
                return Err(QuantumError::NonPositiveWeight { index: i, value: w });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > t.prob_sum {
            return Err(QuantumError::TraceNotOne { trace: sum, tolerance: t.prob_sum });
        }
        if let Some(first) = members.first() {
            for m in &members {
                if m.dim() != first.dim() {
                    return Err(QuantumError::DimensionMismatch {
                        context: format!("ensemble members of dims {} and {}", first.dim(), m.dim()),
                    });
                }
            }
        }
        Ok(QuantumEnsemble { weights, members })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[DensityMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ_i π_i ρ_i` as a raw matrix.
    pub fn barycenter_matrix(&self) -> ComplexMatrix {
        let dim = self.members.first().map(|m| m.dim()).unwrap_or(0);
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, m) in self.weights.iter().zip(&self.members) {
            acc = acc.add(&m.matrix().scale_real(*w));
        }
        acc
    }
}

fn check_barycenter(rho: &DensityMatrix, e: &QuantumEnsemble) -> Result<()> {
    let t = tol::current();
    let residual = e.barycenter_matrix().max_abs_diff(rho.matrix());
    if residual > t.barycenter {
        return Err(QuantumError::BarycenterMismatch { residual, tolerance: t.barycenter });
    }
    Ok(())
}

/// Von Neumann entropy `-Tr ρ ln ρ` in nats; zero on pure states, at most
/// `ln dim`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.spectrum().iter().filter(|&&s| s > 0.0).map(|&s| -s * s.ln()).sum()
}

/// Quantum relative entropy `Tr ρ(ln ρ - ln σ)` in nats; `+∞` when the
/// support of `ρ` leaks outside the support of `σ` (eigenvalues above the
/// quantum support threshold), per the two-case formula.
pub fn quantum_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(QuantumError::DimensionMismatch {
            context: format!("relative entropy of dims {} and {}", rho.dim(), sigma.dim()),
        });
    }
    let thresh = tol::current().support_quantum;
    let se = sigma.eigen();
    let s_vals = clamp_spectrum(se.eigenvalues());

    // Weight of ρ outside σ's support, and Tr ρ ln σ on it.
    let mut outside = 0.0;
    let mut tr_rho_ln_sigma = 0.0;
    for (j, &mu) in s_vals.iter().enumerate() {
        let v = se.eigenvector(j);
        // ⟨ψ_j| ρ |ψ_j⟩
        let mut w = Complex64::new(0.0, 0.0);
        for (a, va) in v.iter().enumerate() {
            let mut row = Complex64::new(0.0, 0.0);
            for (b, vb) in v.iter().enumerate() {
                row += rho.matrix().get(a, b) * vb;
            }
            w += va.conj() * row;
        }
        let w = w.re.max(0.0);
        if mu > thresh {
            tr_rho_ln_sigma += w * mu.ln();
        } else {
            outside += w;
        }
    }
    if outside > thresh {
        return Ok(f64::INFINITY);
    }
    let tr_rho_ln_rho: f64 = rho.spectrum().iter().filter(|&&s| s > 0.0).map(|&s| s * s.ln()).sum();
    Ok(tr_rho_ln_rho - tr_rho_ln_sigma)
}

/// Spectral decomposition as an ensemble of rank-one projectors weighted by
/// the clamped eigenvalues. Eigenvalue dust below the support threshold is
/// dropped and the kept weights renormalized.
pub fn spectral_ensemble(rho: &DensityMatrix) -> QuantumEnsemble {
    let thresh = tol::current().support;
    let eig = rho.eigen();
    let spectrum = clamp_spectrum(eig.eigenvalues());
    let total: f64 = spectrum.iter().filter(|&&s| s > thresh).sum();
    let mut weights = Vec::new();
    let mut members = Vec::new();
    for (j, &s) in spectrum.iter().enumerate() {
        if s <= thresh {
            continue;
        }
        let v = eig.eigenvector(j);
        weights.push(s / total);
        members.push(DensityMatrix { dim: rho.dim(), matrix: ComplexMatrix::outer(&v, &v) });
    }
    QuantumEnsemble { weights, members }
}

/// Decomposition into consecutive eigenvalue blocks of size `k` (spectrum
/// sorted nonincreasing), each member a normalized mixture of at most `k`
/// eigenprojectors. States of rank at most `k` decompose trivially as
/// `{1: ρ}`.
pub fn rank_k_decomposition(rho: &DensityMatrix, k: usize) -> QuantumEnsemble {
    assert!(k >= 1, "block size must be at least 1");
    if rho.rank() <= k {
        return QuantumEnsemble { weights: vec![1.0], members: vec![rho.clone()] };
    }
    let thresh = tol::current().support;
    let eig = rho.eigen();
    let spectrum = clamp_spectrum(eig.eigenvalues());
    let dim = rho.dim();
    let kept: Vec<usize> = (0..spectrum.len()).filter(|&j| spectrum[j] > thresh).collect();
    let total: f64 = kept.iter().map(|&j| spectrum[j]).sum();
    let mut weights = Vec::new();
    let mut members = Vec::new();
    for chunk in kept.chunks(k) {
        let mass: f64 = chunk.iter().map(|&j| spectrum[j] / total).sum();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for &j in chunk {
            let v = eig.eigenvector(j);
            m = m.add(&ComplexMatrix::outer(&v, &v).scale_real(spectrum[j] / total / mass));
        }
        weights.push(mass);
        members.push(DensityMatrix { dim, matrix: m });
    }
    QuantumEnsemble { weights, members }
}

/// Ensemble entropy gap `Σ_i π_i H(ρ_i ‖ ρ)`, which equals
/// `H(ρ) - Σ_i π_i H(ρ_i)` whenever the barycenter matches `ρ`.
pub fn quantum_ensemble_gap(rho: &DensityMatrix, e: &QuantumEnsemble) -> Result<f64> {
    check_barycenter(rho, e)?;
    let mut gap = 0.0;
    for (w, m) in e.weights().iter().zip(e.members()) {
        gap += w * quantum_relative_entropy(m, rho)?;
    }
    debug_assert!(
        !gap.is_finite() || {
            let direct = von_neumann_entropy(rho)
                - e.weights().iter().zip(e.members()).map(|(w, m)| w * von_neumann_entropy(m)).sum::<f64>();
            (gap - direct).abs() < 1e-6
        },
        "quantum entropy gap identity violated"
    );
    Ok(gap)
}

/// Certified upper bound on the k-th quantum gap via the eigenvalue-block
/// decomposition; exactly zero once the rank fits in one block. Reduces to
/// [`classical::delta_k_shannon_bound`] on the spectrum.
pub fn delta_k_vn_bound(rho: &DensityMatrix, k: usize) -> f64 {
    assert!(k >= 1, "block size must be at least 1");
    if rho.rank() <= k {
        return 0.0;
    }
    let e = rank_k_decomposition(rho, k);
    quantum_ensemble_gap(rho, &e).expect("eigenblock ensemble has exact barycenter")
}

/// Purification `|φ_ρ⟩ = Σ_j √s_j |e_j⟩ ⊗ |j⟩` as a column vector on the
/// doubled space (eigenbasis on the first factor, standard basis on the
/// second). The first partial trace of the projector recovers `ρ`; the
/// second equals `ρ` up to the eigenbasis change.
pub fn purify(rho: &DensityMatrix) -> Vec<Complex64> {
    let eig = rho.eigen();
    let spectrum = clamp_spectrum(eig.eigenvalues());
    let d = rho.dim();
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for (j, &s) in spectrum.iter().enumerate() {
        if s == 0.0 {
            continue;
        }
        let amp = s.sqrt();
        let e = eig.eigenvector(j);
        for (i, ei) in e.iter().enumerate() {
            v[i * d + j] += ei * amp;
        }
    }
    v
}

/// Residual of the bipartite entropy identity
/// `H(ω) = H(ω_1) + H(ω_2) - H(ω ‖ ω_1 ⊗ ω_2)` for a state on a
/// `dims.0 × dims.1` product space.
pub fn lemma_old_identity_check(omega: &DensityMatrix, dims: (usize, usize)) -> Result<f64> {
    let (d1, d2) = dims;
    if omega.dim() != d1 * d2 {
        return Err(QuantumError::DimensionMismatch {
            context: format!("bipartite state of dim {} vs {}x{}", omega.dim(), d1, d2),
        });
    }
    let m1 = matrixcore::partial_trace(omega.matrix(), dims, Subsystem::First)?;
    let m2 = matrixcore::partial_trace(omega.matrix(), dims, Subsystem::Second)?;
    let w1 = DensityMatrix::new(m1)?;
    let w2 = DensityMatrix::new(m2)?;
    let product = DensityMatrix::new(w1.matrix().tensor(w2.matrix()))?;
    let mutual = quantum_relative_entropy(omega, &product)?;
    let lhs = von_neumann_entropy(omega);
    let rhs = von_neumann_entropy(&w1) + von_neumann_entropy(&w2) - mutual;
    Ok((lhs - rhs).abs())
}
