//! # entrocert
//!
//! Desk-scale certification of entropy continuity through coarse-graining
//! gap bounds.
//!
//! The library computes, for finite probability vectors and finite
//! dimensional quantum states, how well entropy-type functionals are
//! approximated by ensemble averages over low-complexity decompositions:
//! distributions split into blocks of bounded support, density matrices
//! split into eigenvalue blocks of bounded rank. The decay of these gaps
//! over the block-size parameter `k` is what the certification reports
//! track, together with audits of the identities and inequalities that
//! connect the gaps of entropy, channel mutual information, output entropy,
//! and Holevo-quantity lower bounds.
//!
//! Modules:
//! - [`matrixcore`]: complex matrices, Hermitian eigendecomposition,
//!   tensor products, partial traces.
//! - [`classical`]: distributions, Shannon entropy, KL divergence,
//!   coarse-graining decompositions, majorization, gap bounds and the
//!   small-instance partition oracle.
//! - [`quantum`]: density matrices, von Neumann entropy, quantum relative
//!   entropy, spectral and rank-k decompositions, purification.
//! - [`channels`]: Kraus channels, complementary channels, mutual
//!   information in both forms, degradability verification, data
//!   processing checks.
//! - [`continuity`]: convergence reports over `k`, majorization-ball
//!   certificates, corollary audits, and the seeded identity audit.
//! - [`io`]: JSON schemas for distributions, states, ensembles, and
//!   channels, with validation reports.
//! - [`random`]: seeded, reproducible generators for states, channels,
//!   and distributions.
//! - [`tol`]: the central tolerance table.

pub mod channels;
pub mod classical;
pub mod continuity;
pub mod io;
pub mod matrixcore;
pub mod quantum;
pub mod random;
pub mod tol;

pub use num_complex::Complex64;

pub use channels::KrausChannel;
pub use classical::{ClassicalEnsemble, Distribution};
pub use continuity::{ConvergenceReport, StateSet};
pub use matrixcore::{ComplexMatrix, EigenSystem, Subsystem};
pub use quantum::{DensityMatrix, QuantumEnsemble};
