//! Quantum channels in Kraus form: channel action, the complementary
//! channel built directly from the Kraus operators, output entropy, mutual
//! information in its three-entropy and relative-entropy forms, the
//! channel-aware gap bound, Holevo-quantity lower bounds, degradability
//! verification, and the data-processing slack.
//!
//! The complementary channel is kept as an action (the map
//! `A ↦ [Tr V_i A V_j†]_{ij}` into environment-side matrices), not as a
//! Kraus list of its own.

use num_complex::Complex64;
use thiserror::Error;

use crate::matrixcore::{self, ComplexMatrix};
use crate::quantum::{
    self, quantum_relative_entropy, rank_k_decomposition, von_neumann_entropy, DensityMatrix,
    QuantumEnsemble, QuantumError,
};
use crate::tol;

/// Errors from the channel module.
#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("channel needs at least one Kraus operator")]
    EmptyKraus,

    #[error("channel has {count} Kraus operators, cap is {max}")]
    TooManyKraus { count: usize, max: usize },

    #[error("Kraus operator {index} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    WrongKrausShape { index: usize, rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },

    #[error("Kraus completeness residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    NotTracePreserving { residual: f64, tolerance: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

pub type Result<T> = std::result::Result<T, ChannelError>;

/// Quantum channel `Φ(A) = Σ_j V_j A V_j†` with `Σ_j V_j† V_j = I`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(dim_in: usize, dim_out: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let t = tol::current();
        if kraus.is_empty() {
            return Err(ChannelError::EmptyKraus);
        }
        if kraus.len() > tol::MAX_KRAUS_OPERATORS {
            return Err(ChannelError::TooManyKraus { count: kraus.len(), max: tol::MAX_KRAUS_OPERATORS });
        }
        for (index, v) in kraus.iter().enumerate() {
            if v.rows() != dim_out || v.cols() != dim_in {
                return Err(ChannelError::WrongKrausShape {
                    index,
                    rows: v.rows(),
                    cols: v.cols(),
                    expected_rows: dim_out,
                    expected_cols: dim_in,
                });
            }
        }
        let channel = KrausChannel { dim_in, dim_out, kraus };
        let residual = channel.completeness_residual();
        if residual > t.kraus_completeness {
            return Err(ChannelError::NotTracePreserving { residual, tolerance: t.kraus_completeness });
        }
        Ok(channel)
    }

    /// Identity channel on a `dim`-dimensional space.
    pub fn identity(dim: usize) -> Self {
        KrausChannel { dim_in: dim, dim_out: dim, kraus: vec![ComplexMatrix::identity(dim)] }
    }

    /// Completely dephasing channel: Kraus operators are the basis
    /// projectors, so outputs are the diagonal part of the input.
    pub fn dephasing(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|i| {
                let mut p = ComplexMatrix::zeros(dim, dim);
                p.set(i, i, Complex64::new(1.0, 0.0));
                p
            })
            .collect();
        KrausChannel { dim_in: dim, dim_out: dim, kraus }
    }

    /// Completely depolarizing channel `A ↦ Tr(A)·I/d`, Kraus operators
    /// `|i⟩⟨j|/√d`. Requires `d² ≤` the Kraus cap.
    pub fn completely_depolarizing(dim: usize) -> Result<Self> {
        let mut kraus = Vec::with_capacity(dim * dim);
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        for i in 0..dim {
            for j in 0..dim {
                let mut v = ComplexMatrix::zeros(dim, dim);
                v.set(i, j, amp);
                kraus.push(v);
            }
        }
        KrausChannel::new(dim, dim, kraus)
    }

    /// Trace-and-replace onto a fixed pure state of a `dim_out`-space:
    /// `A ↦ Tr(A)·|0⟩⟨0|`, Kraus operators `|0⟩⟨i|`.
    pub fn trace_and_replace(dim_in: usize, dim_out: usize) -> Result<Self> {
        let mut kraus = Vec::with_capacity(dim_in);
        for i in 0..dim_in {
            let mut v = ComplexMatrix::zeros(dim_out, dim_in);
            v.set(0, i, Complex64::new(1.0, 0.0));
            kraus.push(v);
        }
        KrausChannel::new(dim_in, dim_out, kraus)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Number of Kraus operators; the environment dimension.
    pub fn env_dim(&self) -> usize {
        self.kraus.len()
    }

    /// Max entrywise `|Σ V†V - I|`.
    pub fn completeness_residual(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for v in &self.kraus {
            acc = acc.add(&v.adjoint().matmul(v));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(self.dim_in))
    }

    /// Raw channel action on an arbitrary operator.
    pub fn apply_matrix(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for v in &self.kraus {
            out = out.add(&v.matmul(a).matmul(&v.adjoint()));
        }
        out
    }

    /// Channel action on a state, validated at the channel's
    /// trace-preservation tolerance.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim_in {
            return Err(ChannelError::DimensionMismatch {
                context: format!("state of dim {} into channel with dim_in {}", rho.dim(), self.dim_in),
            });
        }
        let out = self.apply_matrix(rho.matrix());
        Ok(DensityMatrix::with_trace_tolerance(out, tol::current().kraus_completeness)?)
    }

    /// The complementary channel as an action into environment matrices.
    pub fn complementary(&self) -> ComplementaryChannel<'_> {
        ComplementaryChannel { channel: self }
    }
}

/// Action of the channel complementary to a [`KrausChannel`]:
/// `A ↦ [Tr V_i A V_j†]_{ij}` on the environment space, whose dimension is
/// the number of Kraus operators.
#[derive(Debug, Clone, Copy)]
pub struct ComplementaryChannel<'a> {
    channel: &'a KrausChannel,
}

impl ComplementaryChannel<'_> {
    pub fn env_dim(&self) -> usize {
        self.channel.env_dim()
    }

    pub fn apply_matrix(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let m = self.channel.env_dim();
        let products: Vec<ComplexMatrix> = self.channel.kraus.iter().map(|v| v.matmul(a)).collect();
        let mut out = ComplexMatrix::zeros(m, m);
        for (i, via) in products.iter().enumerate() {
            for (j, vj) in self.channel.kraus.iter().enumerate() {
                // Tr[V_i A V_j†] = Σ_{a,b} (V_i A)[a,b] · conj(V_j[a,b])
                let mut s = Complex64::new(0.0, 0.0);
                for r in 0..vj.rows() {
                    for c in 0..vj.cols() {
                        s += via.get(r, c) * vj.get(r, c).conj();
                    }
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.channel.dim_in {
            return Err(ChannelError::DimensionMismatch {
                context: format!("state of dim {} into channel with dim_in {}", rho.dim(), self.channel.dim_in),
            });
        }
        let out = self.apply_matrix(rho.matrix());
        Ok(DensityMatrix::with_trace_tolerance(out, tol::current().kraus_completeness)?)
    }
}

/// Output entropy `H(Φ(ρ))`.
pub fn output_entropy(phi: &KrausChannel, rho: &DensityMatrix) -> Result<f64> {
    Ok(von_neumann_entropy(&phi.apply(rho)?))
}

/// Mutual information as the three-entropy sum
/// `I(ρ,Φ) = H(ρ) + H(Φρ) - H(Φ̃ρ)`.
pub fn mutual_information_sum(phi: &KrausChannel, rho: &DensityMatrix) -> Result<f64> {
    let out = phi.apply(rho)?;
    let env = phi.complementary().apply(rho)?;
    Ok(von_neumann_entropy(rho) + von_neumann_entropy(&out) - von_neumann_entropy(&env))
}

/// Mutual information as a relative entropy of the channel acting on one
/// half of a purification: `I(ρ,Φ) = H((Φ⊗Id)|φ_ρ⟩⟨φ_ρ| ‖ Φ(ρ) ⊗ ρ_K)`,
/// where `ρ_K` is the purification's second marginal (equal to `ρ` up to
/// the eigenbasis change, which leaves the value unchanged).
pub fn mutual_information_rel(phi: &KrausChannel, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != phi.dim_in {
        return Err(ChannelError::DimensionMismatch {
            context: format!("state of dim {} into channel with dim_in {}", rho.dim(), phi.dim_in),
        });
    }
    let d = rho.dim();
    let t = tol::current();
    let v = quantum::purify(rho);
    let proj = ComplexMatrix::outer(&v, &v);
    let out = matrixcore::apply_to_subsystem(|m| phi.apply_matrix(m), &proj, (d, d))
        .map_err(QuantumError::from)?;
    let omega = DensityMatrix::with_trace_tolerance(out, t.kraus_completeness)?;
    let phi_rho = phi.apply(rho)?;
    let second_marginal = ComplexMatrix::from_real_diag(&rho.spectrum());
    let reference =
        DensityMatrix::with_trace_tolerance(phi_rho.matrix().tensor(&second_marginal), t.kraus_completeness)?;
    Ok(quantum_relative_entropy(&omega, &reference)?)
}

/// Channel-aware gap bound on the eigenvalue-block ensemble:
/// `Σ_i π_i [H(ρ_i‖ρ) + H(Φρ_i‖Φρ) - H(Φ̃ρ_i‖Φ̃ρ)]`. Upper-bounds the
/// mutual-information gap at level `k`; exactly zero once the rank fits.
pub fn delta_k_mi_bound(phi: &KrausChannel, rho: &DensityMatrix, k: usize) -> Result<f64> {
    assert!(k >= 1, "block size must be at least 1");
    if rho.dim() != phi.dim_in {
        return Err(ChannelError::DimensionMismatch {
            context: format!("state of dim {} into channel with dim_in {}", rho.dim(), phi.dim_in),
        });
    }
    if rho.rank() <= k {
        return Ok(0.0);
    }
    let e = rank_k_decomposition(rho, k);
    let phi_rho = phi.apply(rho)?;
    let comp = phi.complementary();
    let env_rho = comp.apply(rho)?;
    let mut total = 0.0;
    for (w, m) in e.weights().iter().zip(e.members()) {
        let state_term = quantum_relative_entropy(m, rho)?;
        let out_term = quantum_relative_entropy(&phi.apply(m)?, &phi_rho)?;
        let env_term = quantum_relative_entropy(&comp.apply(m)?, &env_rho)?;
        total += w * (state_term + out_term - env_term);
    }
    Ok(total)
}

/// Holevo-quantity lower bound `Σ_i π_i H(Φρ_i ‖ Φρ)` for an ensemble with
/// barycenter `ρ`. Reported strictly as a lower bound; the exact value of
/// the constrained Holevo quantity is never claimed.
pub fn chi_lower_bound(phi: &KrausChannel, rho: &DensityMatrix, e: &QuantumEnsemble) -> Result<f64> {
    let t = tol::current();
    let residual = e.barycenter_matrix().max_abs_diff(rho.matrix());
    if residual > t.barycenter {
        return Err(QuantumError::BarycenterMismatch { residual, tolerance: t.barycenter }.into());
    }
    let phi_rho = phi.apply(rho)?;
    let mut total = 0.0;
    for (w, m) in e.weights().iter().zip(e.members()) {
        total += w * quantum_relative_entropy(&phi.apply(m)?, &phi_rho)?;
    }
    Ok(total)
}

/// Residual of the degrading identity `Λ∘Φ = Φ̃`, maximized over matrix
/// units of the input space. The map `lambda` degrades `phi` when the
/// residual is below the degrading tolerance.
pub fn verify_degrading(phi: &KrausChannel, lambda: &KrausChannel) -> Result<f64> {
    if lambda.dim_in != phi.dim_out {
        return Err(ChannelError::DimensionMismatch {
            context: format!("degrading map dim_in {} vs channel dim_out {}", lambda.dim_in, phi.dim_out),
        });
    }
    if lambda.dim_out != phi.env_dim() {
        return Err(ChannelError::DimensionMismatch {
            context: format!("degrading map dim_out {} vs environment dim {}", lambda.dim_out, phi.env_dim()),
        });
    }
    let comp = phi.complementary();
    let mut residual: f64 = 0.0;
    for a in 0..phi.dim_in {
        for b in 0..phi.dim_in {
            let mut unit = ComplexMatrix::zeros(phi.dim_in, phi.dim_in);
            unit.set(a, b, Complex64::new(1.0, 0.0));
            let degraded = lambda.apply_matrix(&phi.apply_matrix(&unit));
            let complementary = comp.apply_matrix(&unit);
            residual = residual.max(degraded.max_abs_diff(&complementary));
        }
    }
    Ok(residual)
}

/// Data-processing slack `H(ρ‖σ) - H(Φρ‖Φσ)`, nonnegative up to rounding.
/// Returns `+∞` when the input divergence is infinite.
pub fn data_processing_check(phi: &KrausChannel, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let before = quantum_relative_entropy(rho, sigma)?;
    if before == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let after = quantum_relative_entropy(&phi.apply(rho)?, &phi.apply(sigma)?)?;
    Ok(before - after)
}
