//! Central tolerance table.
//!
//! Every numerical threshold used by the library lives here as a named
//! default. The environment variable `ENTROCERT_TOL_SCALE` multiplies all
//! defaults uniformly (intended for debugging only); it is read once per
//! process.

use std::sync::OnceLock;

/// Named numerical tolerances, all dimensionless or in nats.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Max entrywise |A - A†| accepted as Hermitian.
    pub hermitian: f64,
    /// Jacobi sweep convergence threshold on the off-diagonal Frobenius norm.
    pub eig_off_diagonal: f64,
    /// Max entrywise residual of eigendecomposition reconstruction.
    pub eig_reconstruction: f64,
    /// |Tr ρ - 1| accepted for a density matrix.
    pub trace_one: f64,
    /// Eigenvalues in [-psd_clamp, 0] are clamped to zero; below rejects.
    pub psd_clamp: f64,
    /// |Σ p_i - 1| accepted for a probability vector.
    pub prob_sum: f64,
    /// |Σ p_i - 1| accepted at ingestion before renormalizing.
    pub ingest_tail: f64,
    /// A classical entry counts as support iff it exceeds this.
    pub support: f64,
    /// A quantum eigenvalue counts as support iff it exceeds this
    /// (the +∞ branch of the relative entropy).
    pub support_quantum: f64,
    /// Max entrywise deviation accepted between a declared barycenter and
    /// the ensemble average.
    pub barycenter: f64,
    /// Max entrywise |Σ V†V - I| accepted as trace preserving.
    pub kraus_completeness: f64,
    /// Entropy gap identities are audited at this tolerance.
    pub gap_identity: f64,
    /// Residual below which a degrading map is accepted.
    pub degrading: f64,
    /// Partial sums in majorization checks compare at this tolerance.
    pub majorization: f64,
    /// Gap-bound sequences must be nonincreasing within this.
    pub monotone: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: 1e-10,
            eig_off_diagonal: 1e-12,
            eig_reconstruction: 1e-10,
            trace_one: 1e-10,
            psd_clamp: 1e-10,
            prob_sum: 1e-10,
            ingest_tail: 1e-9,
            support: 1e-12,
            support_quantum: 1e-10,
            barycenter: 1e-9,
            kraus_completeness: 1e-9,
            gap_identity: 1e-8,
            degrading: 1e-8,
            majorization: 1e-12,
            monotone: 1e-10,
        }
    }
}

impl Tolerances {
    fn scaled(scale: f64) -> Self {
        let d = Tolerances::default();
        Tolerances {
            hermitian: d.hermitian * scale,
            eig_off_diagonal: d.eig_off_diagonal * scale,
            eig_reconstruction: d.eig_reconstruction * scale,
            trace_one: d.trace_one * scale,
            psd_clamp: d.psd_clamp * scale,
            prob_sum: d.prob_sum * scale,
            ingest_tail: d.ingest_tail * scale,
            support: d.support * scale,
            support_quantum: d.support_quantum * scale,
            barycenter: d.barycenter * scale,
            kraus_completeness: d.kraus_completeness * scale,
            gap_identity: d.gap_identity * scale,
            degrading: d.degrading * scale,
            majorization: d.majorization * scale,
            monotone: d.monotone * scale,
        }
    }
}

/// Hard cap on Jacobi sweeps.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Hard cap on the number of Kraus operators per channel (the environment
/// dimension equals this count, so it drives all bipartite costs).
pub const MAX_KRAUS_OPERATORS: usize = 16;

static CURRENT: OnceLock<Tolerances> = OnceLock::new();

/// The process-wide tolerance table (defaults scaled by `ENTROCERT_TOL_SCALE`).
pub fn current() -> &'static Tolerances {
    CURRENT.get_or_init(|| {
        let scale = std::env::var("ENTROCERT_TOL_SCALE")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|s| s.is_finite() && *s > 0.0)
            .unwrap_or(1.0);
        Tolerances::scaled(scale)
    })
}
