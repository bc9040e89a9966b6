//! Seeded, reproducible generators for audit draws.
//!
//! The stream is fully pinned: a ChaCha20 generator seeded through
//! `seed_from_u64`, standard normals via the Box-Muller transform on
//! consecutive unit-interval draws, complex Gaussians taking the real and
//! imaginary parts from one Box-Muller pair. Density matrices are
//! `GG†/Tr(GG†)` for a square complex Gaussian `G`; channels draw a
//! Gaussian Kraus stack and right-multiply by the inverse square root of
//! `Σ V†V`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::channels::KrausChannel;
use crate::classical::Distribution;
use crate::matrixcore::{self, ComplexMatrix};
use crate::quantum::{DensityMatrix, QuantumEnsemble};

/// The generator every audit draws from.
pub type AuditRng = ChaCha20Rng;

pub fn seeded(seed: u64) -> AuditRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// One Box-Muller pair of independent standard normals.
fn normal_pair(rng: &mut AuditRng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    (r * theta.cos(), r * theta.sin())
}

/// Standard complex Gaussian entry.
pub fn complex_gaussian(rng: &mut AuditRng) -> Complex64 {
    let (re, im) = normal_pair(rng);
    Complex64::new(re, im)
}

fn gaussian_matrix(rng: &mut AuditRng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("shape matches data")
}

/// Full-rank random state `GG†/Tr(GG†)`.
pub fn density_matrix(rng: &mut AuditRng, dim: usize) -> DensityMatrix {
    let g = gaussian_matrix(rng, dim, dim);
    let w = g.matmul(&g.adjoint());
    let m = w.scale_real(1.0 / w.trace().re);
    DensityMatrix::new(m).expect("Wishart normalization yields a state")
}

/// Haar-like random pure state from a normalized Gaussian vector.
pub fn pure_state(rng: &mut AuditRng, dim: usize) -> DensityMatrix {
    let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    DensityMatrix::pure(&v).expect("Gaussian vector is almost surely nonzero")
}

/// Random distribution from normalized uniform draws.
pub fn distribution(rng: &mut AuditRng, n: usize) -> Distribution {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-6).collect();
    let s: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= s;
    }
    Distribution::new(v).expect("normalized positive vector")
}

/// Random trace-preserving channel: Gaussian Kraus stack `W_j`, then
/// `V_j = W_j S^{-1/2}` with `S = Σ W_j† W_j`. Requires
/// `num_kraus · dim_out ≥ dim_in` so that `S` is invertible.
pub fn channel(rng: &mut AuditRng, dim_in: usize, dim_out: usize, num_kraus: usize) -> KrausChannel {
    assert!(num_kraus * dim_out >= dim_in, "Kraus stack cannot be trace preserving");
    let stack: Vec<ComplexMatrix> = (0..num_kraus).map(|_| gaussian_matrix(rng, dim_out, dim_in)).collect();
    let mut s = ComplexMatrix::zeros(dim_in, dim_in);
    for w in &stack {
        s = s.add(&w.adjoint().matmul(w));
    }
    let eig = matrixcore::hermitian_eig(&s).expect("Gram matrix is Hermitian");
    let mut inv_sqrt = ComplexMatrix::zeros(dim_in, dim_in);
    for (j, &l) in eig.eigenvalues().iter().enumerate() {
        let v = eig.eigenvector(j);
        inv_sqrt = inv_sqrt.add(&ComplexMatrix::outer(&v, &v).scale_real(1.0 / l.sqrt()));
    }
    let kraus = stack.into_iter().map(|w| w.matmul(&inv_sqrt)).collect();
    KrausChannel::new(dim_in, dim_out, kraus).expect("normalized stack is trace preserving")
}

/// Random ensemble with the stated member count; the barycenter is
/// returned alongside so callers get a matched `(ρ, ensemble)` pair.
pub fn ensemble(rng: &mut AuditRng, dim: usize, members: usize) -> (DensityMatrix, QuantumEnsemble) {
    let mut weights: Vec<f64> = (0..members).map(|_| rng.gen::<f64>() + 0.05).collect();
    let s: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= s;
    }
    let states: Vec<DensityMatrix> = (0..members).map(|_| density_matrix(rng, dim)).collect();
    let e = QuantumEnsemble::new(weights, states).expect("normalized weights and equal dims");
    let rho = DensityMatrix::new(e.barycenter_matrix()).expect("mixture of states is a state");
    (rho, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible() {
        let mut a = seeded(42);
        let mut b = seeded(42);
        for _ in 0..10 {
            assert_eq!(complex_gaussian(&mut a), complex_gaussian(&mut b));
        }
        let ra = density_matrix(&mut a, 3);
        let rb = density_matrix(&mut b, 3);
        assert_eq!(ra.matrix(), rb.matrix());
    }

    #[test]
    fn random_states_are_valid() {
        let mut rng = seeded(7);
        for dim in 2..=6 {
            let rho = density_matrix(&mut rng, dim);
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
            assert!(rho.spectrum().iter().all(|&s| s >= 0.0));
        }
    }

    #[test]
    fn random_channels_are_trace_preserving() {
        let mut rng = seeded(11);
        for (di, dout, m) in [(2, 2, 2), (2, 3, 3), (3, 2, 4), (4, 4, 2)] {
            let phi = channel(&mut rng, di, dout, m);
            assert!(phi.completeness_residual() < 1e-12);
        }
    }

    #[test]
    fn random_ensemble_barycenter_matches() {
        let mut rng = seeded(3);
        let (rho, e) = ensemble(&mut rng, 4, 3);
        assert!(e.barycenter_matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }
}
