//! Complex-matrix substrate: dense row-major matrices, Hermitian
//! eigendecomposition via cyclic Jacobi rotations, Kronecker products,
//! partial traces, and channel actions on one factor of a bipartite space.
//!
//! Everything here is value-semantic and deterministic: the same input
//! always produces the same output, making eigenvector orderings safe to
//! assert in tests.

use num_complex::Complex64;
use thiserror::Error;

use crate::tol;

/// Errors from the matrix substrate.
#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("Jacobi sweep cap reached with off-diagonal norm {off_norm:.3e}")]
    ConvergenceFailure { off_norm: f64 },
}

pub type Result<T> = std::result::Result<T, MatrixError>;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch {
                context: format!("{}x{} matrix needs {} entries, got {}", rows, cols, rows * cols, data.len()),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Diagonal matrix with the given real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Build from nested rows of `(re, im)` pairs; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        ComplexMatrix { rows: r, cols: c, data }
    }

    /// Column vector from a slice.
    pub fn column(v: &[Complex64]) -> Self {
        ComplexMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Rank-one matrix `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut m = ComplexMatrix::zeros(u.len(), v.len());
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m.set(i, j, a * b.conj());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_real(&self, factor: f64) -> ComplexMatrix {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch in matmul");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |self - other|.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise |A - A†|; zero for Hermitian matrices.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of non-square matrix");
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    /// Kronecker product with row-major index convention `i_a·dim_b + i_b`.
    pub fn tensor(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ComplexMatrix::zeros(rows, cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        out.set(ia * other.rows + ib, ja * other.cols + jb, a * other.get(ib, jb));
                    }
                }
            }
        }
        out
    }
}

/// Which factor of a bipartite space survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Trace out one factor of an operator on a `dims.0 × dims.1` product space.
pub fn partial_trace(w: &ComplexMatrix, dims: (usize, usize), keep: Subsystem) -> Result<ComplexMatrix> {
    let (d1, d2) = dims;
    let side = d1 * d2;
    if w.rows() != side || w.cols() != side {
        return Err(MatrixError::DimensionMismatch {
            context: format!("expected {}x{} bipartite operator, got {}x{}", side, side, w.rows(), w.cols()),
        });
    }
    match keep {
        Subsystem::First => {
            let mut out = ComplexMatrix::zeros(d1, d1);
            for i in 0..d1 {
                for j in 0..d1 {
                    let mut s = Complex64::new(0.0, 0.0);
                    for b in 0..d2 {
                        s += w.get(i * d2 + b, j * d2 + b);
                    }
                    out.set(i, j, s);
                }
            }
            Ok(out)
        }
        Subsystem::Second => {
            let mut out = ComplexMatrix::zeros(d2, d2);
            for a in 0..d2 {
                for b in 0..d2 {
                    let mut s = Complex64::new(0.0, 0.0);
                    for i in 0..d1 {
                        s += w.get(i * d2 + a, i * d2 + b);
                    }
                    out.set(a, b, s);
                }
            }
            Ok(out)
        }
    }
}

/// Apply a linear matrix map to the first factor of a bipartite operator,
/// realizing `Φ ⊗ Id`. The map may change the first factor's dimension.
///
/// Decomposes `w = Σ E_{i,j} ⊗ W_{i,j}` over matrix units of the first
/// factor and returns `Σ map(E_{i,j}) ⊗ W_{i,j}`, which for a Kraus channel
/// equals `Σ_k (V_k ⊗ I) w (V_k ⊗ I)†`.
pub fn apply_to_subsystem<F>(map: F, w: &ComplexMatrix, dims: (usize, usize)) -> Result<ComplexMatrix>
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix,
{
    let (d1, d2) = dims;
    let side = d1 * d2;
    if w.rows() != side || w.cols() != side {
        return Err(MatrixError::DimensionMismatch {
            context: format!("expected {}x{} bipartite operator, got {}x{}", side, side, w.rows(), w.cols()),
        });
    }
    let mut out: Option<ComplexMatrix> = None;
    for i1 in 0..d1 {
        for j1 in 0..d1 {
            // W_{i1,j1}[a,b] = w[(i1,a),(j1,b)]
            let mut block = ComplexMatrix::zeros(d2, d2);
            let mut block_is_zero = true;
            for a in 0..d2 {
                for b in 0..d2 {
                    let v = w.get(i1 * d2 + a, j1 * d2 + b);
                    if v != Complex64::new(0.0, 0.0) {
                        block_is_zero = false;
                    }
                    block.set(a, b, v);
                }
            }
            if block_is_zero {
                continue;
            }
            let mut unit = ComplexMatrix::zeros(d1, d1);
            unit.set(i1, j1, Complex64::new(1.0, 0.0));
            let mapped = map(&unit);
            if mapped.rows() != mapped.cols() {
                return Err(MatrixError::NotSquare { rows: mapped.rows(), cols: mapped.cols() });
            }
            let term = mapped.tensor(&block);
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
    }
    // All-zero input: apply the map once to learn the output dimension.
    Ok(out.unwrap_or_else(|| {
        let d_out = map(&ComplexMatrix::zeros(d1, d1)).rows();
        ComplexMatrix::zeros(d_out * d2, d_out * d2)
    }))
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
/// nonincreasing with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    /// Columns are eigenvectors, in eigenvalue order.
    eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// The j-th eigenvector as an owned column.
    pub fn eigenvector(&self, j: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.rows()).map(|i| self.eigenvectors.get(i, j)).collect()
    }

    /// `Σ_j s_j |e_j⟩⟨e_j|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let v = self.eigenvector(j);
            let proj = ComplexMatrix::outer(&v, &v);
            out = out.add(&proj.scale_real(self.eigenvalues[j]));
        }
        out
    }

    /// Max entrywise |V†V - I|.
    pub fn gram_residual(&self) -> f64 {
        let gram = self.eigenvectors.adjoint().matmul(&self.eigenvectors);
        gram.max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Each rotation first phases the pivot entry real, then applies the
/// classical symmetric Jacobi rotation. Converges when the off-diagonal
/// Frobenius norm drops below the configured threshold. Eigenvalues are
/// returned sorted nonincreasing; within clusters that are degenerate after
/// rounding to 12 decimals, eigenvectors are ordered lexicographically by
/// their rounded entries, after normalizing each vector's phase so its
/// first significant entry is real positive.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenSystem> {
    let t = tol::current();
    if !a.is_square() {
        return Err(MatrixError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(MatrixError::NotHermitian { residual: f64::INFINITY, tolerance: t.hermitian });
    }
    let residual = a.hermiticity_residual();
    if residual > t.hermitian {
        return Err(MatrixError::NotHermitian { residual, tolerance: t.hermitian });
    }

    let n = a.rows();
    // Work on the Hermitian part so sub-tolerance skew cannot accumulate.
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, (a.get(i, j) + a.get(j, i).conj()) * Complex64::new(0.5, 0.0));
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..tol::MAX_JACOBI_SWEEPS {
        if off_diagonal_norm(&m) < t.eig_off_diagonal {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                // Phase that makes the pivot real: entry (p,q) ← |a_pq|.
                let phase = apq / g;
                let alpha = m.get(p, p).re;
                let beta = m.get(q, q).re;
                let tau = (beta - alpha) / (2.0 * g);
                let tt = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + tt * tt).sqrt();
                let s = tt * c;
                // Column operations on the combined rotation
                //   col_p ← c·col_p - s·phasē·col_q
                //   col_q ← s·phase·col_p + c·col_q
                let cs = Complex64::new(c, 0.0);
                let sp = phase * s;
                for i in 0..n {
                    let mip = m.get(i, p);
                    let miq = m.get(i, q);
                    m.set(i, p, mip * cs - miq * sp.conj());
                    m.set(i, q, mip * sp + miq * cs);
                }
                for j in 0..n {
                    let mpj = m.get(p, j);
                    let mqj = m.get(q, j);
                    m.set(p, j, mpj * cs - mqj * sp);
                    m.set(q, j, mpj * sp.conj() + mqj * cs);
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * cs - viq * sp.conj());
                    v.set(i, q, vip * sp + viq * cs);
                }
                // Kill rounding residue at the pivot.
                m.set(p, q, Complex64::new(0.0, 0.0));
                m.set(q, p, Complex64::new(0.0, 0.0));
            }
        }
    }
    if !converged && off_diagonal_norm(&m) >= t.eig_off_diagonal {
        return Err(MatrixError::ConvergenceFailure { off_norm: off_diagonal_norm(&m) });
    }

    // Extract, phase-normalize, and order.
    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|j| {
            let mut col: Vec<Complex64> = (0..n).map(|i| v.get(i, j)).collect();
            if let Some(z) = col.iter().find(|z| z.norm() > 1e-8) {
                let phase = z.conj() / z.norm();
                for e in col.iter_mut() {
                    *e *= phase;
                }
            }
            (m.get(j, j).re, col)
        })
        .collect();
    // Nonincreasing eigenvalues; degenerate clusters (equal after rounding
    // to 12 decimals) ordered by descending lexicographic comparison of
    // rounded eigenvector entries, so e.g. the identity keeps the standard
    // basis in standard order.
    pairs.sort_by(|(la, va), (lb, vb)| {
        let ka = round12(*la);
        let kb = round12(*lb);
        kb.partial_cmp(&ka).unwrap().then_with(|| {
            for (x, y) in va.iter().zip(vb.iter()) {
                let c = round12(y.re)
                    .partial_cmp(&round12(x.re))
                    .unwrap()
                    .then(round12(y.im).partial_cmp(&round12(x.im)).unwrap());
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let eigenvalues: Vec<f64> = pairs.iter().map(|(l, _)| *l).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (j, (_, col)) in pairs.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            eigenvectors.set(i, j, *z);
        }
    }
    Ok(EigenSystem { eigenvalues, eigenvectors })
}
