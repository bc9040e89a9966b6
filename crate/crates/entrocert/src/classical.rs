//! Distributions on finite outcome sets: Shannon entropy, KL divergence,
//! k-order coarse-graining with its exact block decomposition, majorization
//! in the Uhlmann sense, and the classical gap machinery.
//!
//! All entropic quantities are in nats. The conventions `0·ln 0 = 0` and
//! `0·ln(0/0) = 0` apply entrywise, and an entry counts as support only
//! above the configured threshold, which separates true zeros from
//! rounding dust in support checks.

use thiserror::Error;

use crate::tol;

/// Errors from the classical module.
#[derive(Debug, Error)]
pub enum ClassicalError {
    #[error("negative probability at index {index}: {value}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("non-finite probability at index {index}")]
    NonFiniteProbability { index: usize },

    #[error("probabilities sum to {sum}, outside tolerance {tolerance:.3e} of 1")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("ensemble weight at index {index} must be positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("ensemble has {weights} weights but {members} members")]
    LengthMismatch { weights: usize, members: usize },

    #[error("ensemble barycenter deviates from target by {residual:.3e} (tolerance {tolerance:.3e})")]
    BarycenterMismatch { residual: f64, tolerance: f64 },

    #[error("support size {support} exceeds oracle cap {max}")]
    SupportTooLarge { support: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, ClassicalError>;

/// Finite-support probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validate a probability vector: nonnegative entries summing to 1
    /// within the `prob_sum` tolerance.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let t = tol::current();
        let mut sum = 0.0;
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() {
                return Err(ClassicalError::NonFiniteProbability { index: i });
            }
            if p < 0.0 {
                return Err(ClassicalError::NegativeProbability { index: i, value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > t.prob_sum {
            return Err(ClassicalError::NotNormalized { sum, tolerance: t.prob_sum });
        }
        Ok(Distribution { probs })
    }

    /// Ingest a truncated countable distribution: accepts a deficit up to
    /// the `ingest_tail` tolerance and renormalizes, rejects otherwise.
    pub fn ingest(probs: Vec<f64>) -> Result<Self> {
        let t = tol::current();
        let mut sum = 0.0;
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() {
                return Err(ClassicalError::NonFiniteProbability { index: i });
            }
            if p < 0.0 {
                return Err(ClassicalError::NegativeProbability { index: i, value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > t.ingest_tail {
            return Err(ClassicalError::NotNormalized { sum, tolerance: t.ingest_tail });
        }
        let probs = probs.into_iter().map(|p| p / sum).collect();
        Ok(Distribution { probs })
    }

    /// Point mass on a single outcome.
    pub fn point_mass() -> Self {
        Distribution { probs: vec![1.0] }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Number of entries above the support threshold.
    pub fn support_size(&self) -> usize {
        let thresh = tol::current().support;
        self.probs.iter().filter(|&&p| p > thresh).count()
    }

    /// Entries sorted nonincreasing.
    pub fn sorted_nonincreasing(&self) -> Vec<f64> {
        let mut v = self.probs.clone();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }
}

/// Atomic ensemble of distributions: positive weights summing to 1.
#[derive(Debug, Clone)]
pub struct ClassicalEnsemble {
    weights: Vec<f64>,
    members: Vec<Distribution>,
}

impl ClassicalEnsemble {
    pub fn new(weights: Vec<f64>, members: Vec<Distribution>) -> Result<Self> {
        let t = tol::current();
        if weights.len() != members.len() {
            return Err(ClassicalError::LengthMismatch { weights: weights.len(), members: members.len() });
        }
        let mut sum = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            if w <= 0.0 || !w.is_finite() {
                return Err(ClassicalError::NonPositiveWeight { index: i, value: w });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > t.prob_sum {
            return Err(ClassicalError::NotNormalized { sum, tolerance: t.prob_sum });
        }
        Ok(ClassicalEnsemble { weights, members })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[Distribution] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weighted average `Σ_i π_i x_i`, padded to the longest member.
    pub fn barycenter(&self) -> Vec<f64> {
        let n = self.members.iter().map(|m| m.len()).max().unwrap_or(0);
        let mut out = vec![0.0; n];
        for (w, m) in self.weights.iter().zip(&self.members) {
            for (j, &p) in m.probs().iter().enumerate() {
                out[j] += w * p;
            }
        }
        out
    }
}

/// Shannon entropy `-Σ x_j ln x_j` in nats; finite for finite support.
pub fn shannon_entropy(x: &Distribution) -> f64 {
    x.probs().iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum()
}

fn max_abs_padded_diff(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|j| {
            let x = a.get(j).copied().unwrap_or(0.0);
            let y = b.get(j).copied().unwrap_or(0.0);
            (x - y).abs()
        })
        .fold(0.0, f64::max)
}

/// KL divergence `Σ x_j ln(x_j/y_j)` in nats, `+∞` when the support of `x`
/// is not contained in the support of `y`. Shorter input is padded with
/// zeros. Never an error: infinity is a value.
pub fn kl_divergence(x: &Distribution, y: &Distribution) -> f64 {
    let thresh = tol::current().support;
    let n = x.len().max(y.len());
    let mut d = 0.0;
    for j in 0..n {
        let p = x.probs().get(j).copied().unwrap_or(0.0);
        let q = y.probs().get(j).copied().unwrap_or(0.0);
        if p > thresh && q <= thresh {
            return f64::INFINITY;
        }
        if p > 0.0 && q > 0.0 {
            d += p * (p / q).ln();
        }
    }
    d
}

/// Block ordering for coarse-graining.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// Blocks of consecutive entries in the given order.
    AsGiven,
    /// Entries sorted nonincreasing before blocking; the default for all
    /// gap bounds, matching the majorization arguments.
    Nonincreasing,
}

fn block_permutation(x: &Distribution, ordering: Ordering) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    if ordering == Ordering::Nonincreasing {
        idx.sort_by(|&a, &b| x.probs()[b].partial_cmp(&x.probs()[a]).unwrap().then(a.cmp(&b)));
    }
    idx
}

/// k-order coarse-graining: consecutive blocks of `k` entries summed.
pub fn coarse_grain(x: &Distribution, k: usize, ordering: Ordering) -> Distribution {
    assert!(k >= 1, "block size must be at least 1");
    let idx = block_permutation(x, ordering);
    let probs: Vec<f64> = idx.chunks(k).map(|chunk| chunk.iter().map(|&j| x.probs()[j]).sum()).collect();
    Distribution { probs }
}

/// The exact block decomposition behind the coarse-graining bound:
/// `x = Σ_i λ_i p_i` with `λ_i` the block masses and `p_i` the conditional
/// distribution of block `i` (on the original index positions, so the
/// barycenter is `x` itself). Zero-mass blocks are dropped; every member is
/// supported on at most `k` outcomes.
pub fn coarse_decomposition(x: &Distribution, k: usize, ordering: Ordering) -> ClassicalEnsemble {
    assert!(k >= 1, "block size must be at least 1");
    let idx = block_permutation(x, ordering);
    let mut weights = Vec::new();
    let mut members = Vec::new();
    for chunk in idx.chunks(k) {
        let mass: f64 = chunk.iter().map(|&j| x.probs()[j]).sum();
        if mass == 0.0 {
            continue;
        }
        let mut probs = vec![0.0; x.len()];
        for &j in chunk {
            probs[j] = x.probs()[j] / mass;
        }
        weights.push(mass);
        members.push(Distribution { probs });
    }
    assert!(!weights.is_empty(), "validated distributions carry mass");
    ClassicalEnsemble { weights, members }
}

/// Ensemble entropy gap `Σ_i π_i S(x_i ‖ x)`, which equals
/// `S(x) - Σ_i π_i S(x_i)` whenever the barycenter matches `x`.
pub fn ensemble_entropy_gap(x: &Distribution, e: &ClassicalEnsemble) -> Result<f64> {
    let t = tol::current();
    let residual = max_abs_padded_diff(&e.barycenter(), x.probs());
    if residual > t.barycenter {
        return Err(ClassicalError::BarycenterMismatch { residual, tolerance: t.barycenter });
    }
    let gap: f64 = e
        .weights()
        .iter()
        .zip(e.members())
        .map(|(w, m)| w * kl_divergence(m, x))
        .sum();
    debug_assert!(
        !gap.is_finite() || {
            let direct = shannon_entropy(x)
                - e.weights().iter().zip(e.members()).map(|(w, m)| w * shannon_entropy(m)).sum::<f64>();
            (gap - direct).abs() < t.gap_identity.max(1e-7)
        },
        "entropy gap identity violated"
    );
    Ok(gap)
}

/// Certified upper bound `S(k(x))` on the k-th classical gap, computed with
/// nonincreasing ordering. Exactly zero once the support fits in one block.
pub fn delta_k_shannon_bound(x: &Distribution, k: usize) -> f64 {
    assert!(k >= 1, "block size must be at least 1");
    if x.support_size() <= k {
        return 0.0;
    }
    shannon_entropy(&coarse_grain(x, k, Ordering::Nonincreasing))
}

const ORACLE_MAX_SUPPORT: usize = 10;

fn partitions_with_cap<F: FnMut(&[Vec<usize>])>(items: &[usize], cap: usize, visit: &mut F) {
    fn rec<F: FnMut(&[Vec<usize>])>(items: &[usize], pos: usize, cap: usize, current: &mut Vec<Vec<usize>>, visit: &mut F) {
        if pos == items.len() {
            visit(current);
            return;
        }
        let item = items[pos];
        for bi in 0..current.len() {
            if current[bi].len() < cap {
                current[bi].push(item);
                rec(items, pos + 1, cap, current, visit);
                current[bi].pop();
            }
        }
        current.push(vec![item]);
        rec(items, pos + 1, cap, current, visit);
        current.pop();
    }
    let mut current = Vec::new();
    rec(items, 0, cap, &mut current, visit);
}

/// Small-instance oracle: the minimum of [`ensemble_entropy_gap`] over all
/// partition-induced decompositions of the support into blocks of size at
/// most `k`. This restricted minimum upper-bounds the true infimum over
/// all countable decompositions and never exceeds [`delta_k_shannon_bound`].
pub fn delta_k_shannon_oracle(x: &Distribution, k: usize) -> Result<f64> {
    assert!(k >= 1, "block size must be at least 1");
    let thresh = tol::current().support;
    let support: Vec<usize> = (0..x.len()).filter(|&j| x.probs()[j] > thresh).collect();
    if support.len() > ORACLE_MAX_SUPPORT {
        return Err(ClassicalError::SupportTooLarge { support: support.len(), max: ORACLE_MAX_SUPPORT });
    }
    if support.len() <= k {
        return Ok(0.0);
    }
    let mut best = f64::INFINITY;
    let mut failure: Option<ClassicalError> = None;
    partitions_with_cap(&support, k, &mut |blocks| {
        let mut weights = Vec::with_capacity(blocks.len());
        let mut members = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mass: f64 = block.iter().map(|&j| x.probs()[j]).sum();
            if mass == 0.0 {
                continue;
            }
            let mut probs = vec![0.0; x.len()];
            for &j in block {
                probs[j] = x.probs()[j] / mass;
            }
            weights.push(mass);
            members.push(Distribution { probs });
        }
        // Sub-threshold dust stays outside every block; fold it into the
        // heaviest block so the barycenter matches x exactly.
        let dust: Vec<usize> = (0..x.len()).filter(|&j| x.probs()[j] > 0.0 && x.probs()[j] <= thresh).collect();
        if !dust.is_empty() {
            if let Some(hi) = (0..weights.len()).max_by(|&a, &b| weights[a].partial_cmp(&weights[b]).unwrap()) {
                let extra: f64 = dust.iter().map(|&j| x.probs()[j]).sum();
                let new_mass = weights[hi] + extra;
                let mut probs: Vec<f64> = members[hi].probs().iter().map(|p| p * weights[hi] / new_mass).collect();
                for &j in &dust {
                    probs[j] = x.probs()[j] / new_mass;
                }
                members[hi] = Distribution { probs };
                weights[hi] = new_mass;
            }
        }
        let e = ClassicalEnsemble { weights, members };
        match ensemble_entropy_gap(x, &e) {
            Ok(gap) => {
                if gap < best {
                    best = gap;
                }
            }
            Err(err) => failure = Some(err),
        }
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(best),
    }
}

/// Uhlmann order test: returns true iff `x ≺ y` (`y` is more chaotic), i.e.
/// every partial sum of the nonincreasing rearrangement of `x` dominates
/// the corresponding partial sum for `y`, at the majorization tolerance.
pub fn majorizes(x: &Distribution, y: &Distribution) -> bool {
    let t = tol::current();
    let xs = x.sorted_nonincreasing();
    let ys = y.sorted_nonincreasing();
    let n = xs.len().max(ys.len());
    let mut px = 0.0;
    let mut py = 0.0;
    for j in 0..n {
        px += xs.get(j).copied().unwrap_or(0.0);
        py += ys.get(j).copied().unwrap_or(0.0);
        if px < py - t.majorization {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN_2: f64 = std::f64::consts::LN_2;

    fn dist(probs: &[f64]) -> Distribution {
        Distribution::new(probs.to_vec()).unwrap()
    }

    /// Truncated geometric(r) over `terms` outcomes, renormalized.
    fn geometric(r: f64, terms: usize) -> Distribution {
        let probs: Vec<f64> = (1..=terms).map(|i| (1.0 - r) * r.powi(i as i32 - 1)).collect();
        Distribution::ingest(probs).unwrap()
    }

    /// Closed form for the entropy of geometric(r): -ln(1-r) - r ln r / (1-r).
    fn geometric_entropy(r: f64) -> f64 {
        -(1.0 - r).ln() - r * r.ln() / (1.0 - r)
    }

    #[test]
    fn entropy_fair_coin_and_point_mass() {
        assert!((shannon_entropy(&dist(&[0.5, 0.5])) - LN_2).abs() < 1e-14);
        assert_eq!(shannon_entropy(&dist(&[1.0])), 0.0);
    }

    #[test]
    fn entropy_truncated_geometric_matches_closed_form() {
        let x = geometric(0.5, 40);
        assert!((shannon_entropy(&x) - 2.0 * LN_2).abs() < 1e-6);
        assert!((geometric_entropy(0.5) - 2.0 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn kl_self_is_zero() {
        let x = dist(&[0.4, 0.3, 0.2, 0.1]);
        assert_eq!(kl_divergence(&x, &x), 0.0);
    }

    #[test]
    fn kl_disjoint_support_is_infinite() {
        assert_eq!(kl_divergence(&dist(&[1.0, 0.0]), &dist(&[0.0, 1.0])), f64::INFINITY);
    }

    #[test]
    fn kl_two_term_hand_value() {
        let v = kl_divergence(&dist(&[0.5, 0.5]), &dist(&[0.25, 0.75]));
        let expected = 0.5 * (0.5f64 / 0.25).ln() + 0.5 * (0.5f64 / 0.75).ln();
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.1438410362258904).abs() < 1e-12);
    }

    #[test]
    fn kl_pads_shorter_input() {
        let x = dist(&[0.5, 0.5]);
        let y = dist(&[0.25, 0.25, 0.5]);
        assert!(kl_divergence(&x, &y).is_finite());
        assert_eq!(kl_divergence(&y, &x), f64::INFINITY);
    }

    #[test]
    fn coarse_grain_block_sums() {
        let x = dist(&[0.4, 0.3, 0.2, 0.1]);
        let g = coarse_grain(&x, 2, Ordering::AsGiven);
        assert_eq!(g.len(), 2);
        assert!((g.probs()[0] - 0.7).abs() < 1e-15);
        assert!((g.probs()[1] - 0.3).abs() < 1e-15);
        let y = dist(&[0.1, 0.4, 0.3, 0.2]);
        let g = coarse_grain(&y, 2, Ordering::Nonincreasing);
        assert!((g.probs()[0] - 0.7).abs() < 1e-15);
        assert!((g.probs()[1] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn coarse_grain_k1_is_identity() {
        let x = dist(&[0.2, 0.5, 0.3]);
        assert_eq!(coarse_grain(&x, 1, Ordering::AsGiven).probs(), x.probs());
    }

    #[test]
    fn coarse_decomposition_example() {
        let x = dist(&[0.4, 0.3, 0.2, 0.1]);
        let e = coarse_decomposition(&x, 2, Ordering::AsGiven);
        assert_eq!(e.len(), 2);
        assert!((e.weights()[0] - 0.7).abs() < 1e-15);
        assert!((e.weights()[1] - 0.3).abs() < 1e-15);
        let m0 = e.members()[0].probs();
        let m1 = e.members()[1].probs();
        assert!((m0[0] - 4.0 / 7.0).abs() < 1e-15 && (m0[1] - 3.0 / 7.0).abs() < 1e-15);
        assert_eq!(&m0[2..], &[0.0, 0.0]);
        assert_eq!(&m1[..2], &[0.0, 0.0]);
        assert!((m1[2] - 2.0 / 3.0).abs() < 1e-15 && (m1[3] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn coarse_decomposition_point_mass() {
        let x = dist(&[1.0]);
        let e = coarse_decomposition(&x, 3, Ordering::Nonincreasing);
        assert_eq!(e.len(), 1);
        assert_eq!(e.weights(), &[1.0]);
        assert_eq!(e.members()[0].probs(), &[1.0]);
    }

    #[test]
    fn coarse_decomposition_members_fit_in_blocks() {
        let x = dist(&[0.15, 0.05, 0.3, 0.1, 0.25, 0.15]);
        for k in 1..=4 {
            let e = coarse_decomposition(&x, k, Ordering::Nonincreasing);
            for m in e.members() {
                assert!(m.support_size() <= k);
            }
            let bary = e.barycenter();
            for (a, b) in bary.iter().zip(x.probs()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gap_of_trivial_ensemble_is_zero() {
        let x = dist(&[0.6, 0.4]);
        let e = ClassicalEnsemble::new(vec![1.0], vec![x.clone()]).unwrap();
        assert_eq!(ensemble_entropy_gap(&x, &e).unwrap(), 0.0);
    }

    #[test]
    fn gap_of_coarse_decomposition_is_block_entropy() {
        let x = dist(&[0.4, 0.3, 0.2, 0.1]);
        let e = coarse_decomposition(&x, 2, Ordering::AsGiven);
        let gap = ensemble_entropy_gap(&x, &e).unwrap();
        let expected = shannon_entropy(&dist(&[0.7, 0.3]));
        assert!((gap - expected).abs() < 1e-12);
        assert!((expected - 0.6108643020548935).abs() < 1e-12);
    }

    #[test]
    fn gap_matches_entropy_difference_for_binary_split() {
        let x = dist(&[0.4, 0.3, 0.2, 0.1]);
        // Split outcomes {0,2} vs {1,3}.
        let w0 = 0.6;
        let w1 = 0.4;
        let m0 = dist(&[0.4 / w0, 0.0, 0.2 / w0, 0.0]);
        let m1 = dist(&[0.0, 0.3 / w1, 0.0, 0.1 / w1]);
        let e = ClassicalEnsemble::new(vec![w0, w1], vec![m0.clone(), m1.clone()]).unwrap();
        let gap = ensemble_entropy_gap(&x, &e).unwrap();
        let direct = shannon_entropy(&x) - w0 * shannon_entropy(&m0) - w1 * shannon_entropy(&m1);
        assert!((gap - direct).abs() < 1e-10);
    }

    #[test]
    fn gap_rejects_wrong_barycenter() {
        let x = dist(&[0.5, 0.5]);
        let e = ClassicalEnsemble::new(vec![1.0], vec![dist(&[0.4, 0.6])]).unwrap();
        assert!(matches!(ensemble_entropy_gap(&x, &e), Err(ClassicalError::BarycenterMismatch { .. })));
    }

    #[test]
    fn bound_zero_when_support_fits() {
        let x = dist(&[0.5, 0.5, 0.0, 0.0]);
        assert_eq!(delta_k_shannon_bound(&x, 2), 0.0);
        assert_eq!(delta_k_shannon_bound(&x, 5), 0.0);
    }

    #[test]
    fn bound_matches_geometric_tail_formula() {
        // Coarse-graining geometric(1/2) in sorted blocks of k gives a
        // geometric with ratio 2^-k; entropy from the closed form.
        let x = geometric(0.5, 40);
        for k in 1..=8usize {
            let q = 0.5f64.powi(k as i32);
            let analytic = geometric_entropy(q);
            assert!((delta_k_shannon_bound(&x, k) - analytic).abs() < 1e-4, "k={}", k);
        }
        assert!((delta_k_shannon_bound(&x, 4) - 0.24937776928688987).abs() < 1e-4);
    }

    #[test]
    fn bound_nonincreasing_in_k() {
        let x = dist(&[0.31, 0.17, 0.13, 0.11, 0.09, 0.08, 0.06, 0.05]);
        let mut prev = f64::INFINITY;
        for k in 1..=8 {
            let b = delta_k_shannon_bound(&x, k);
            assert!(b <= prev + 1e-10, "k={}", k);
            prev = b;
        }
    }

    #[test]
    fn oracle_zero_when_k_covers_support() {
        let x = dist(&[0.4, 0.3, 0.3]);
        assert_eq!(delta_k_shannon_oracle(&x, 3).unwrap(), 0.0);
        assert_eq!(delta_k_shannon_oracle(&x, 7).unwrap(), 0.0);
    }

    #[test]
    fn oracle_four_outcome_pairing() {
        // Exhaustive enumeration over partitions into blocks of ≤ 2; the
        // best pairing groups {0,1} and {2,3}, with gap S([0.7, 0.3]).
        let x = dist(&[0.4, 0.3, 0.2, 0.1]);
        let v = delta_k_shannon_oracle(&x, 2).unwrap();
        assert!((v - 0.6108643020548935).abs() < 1e-12);
    }

    #[test]
    fn oracle_never_exceeds_bound() {
        let xs = [
            vec![0.4, 0.3, 0.2, 0.1],
            vec![0.25, 0.25, 0.25, 0.25],
            vec![0.5, 0.2, 0.15, 0.1, 0.05],
            vec![0.9, 0.04, 0.03, 0.02, 0.01],
            vec![0.35, 0.3, 0.2, 0.1, 0.03, 0.02],
        ];
        for probs in &xs {
            let x = dist(probs);
            for k in 1..=probs.len() {
                let oracle = delta_k_shannon_oracle(&x, k).unwrap();
                let bound = delta_k_shannon_bound(&x, k);
                assert!(oracle <= bound + 1e-12, "probs={:?} k={}", probs, k);
            }
        }
    }

    #[test]
    fn oracle_rejects_large_support() {
        let x = dist(&[1.0 / 12.0; 12]);
        assert!(matches!(delta_k_shannon_oracle(&x, 2), Err(ClassicalError::SupportTooLarge { .. })));
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&dist(&[1.0, 0.0]), &dist(&[0.5, 0.5])));
        assert!(!majorizes(&dist(&[0.5, 0.5]), &dist(&[1.0, 0.0])));
        assert!(majorizes(&dist(&[0.5, 0.5]), &dist(&[0.4, 0.3, 0.2, 0.1])));
        let x = dist(&[0.2, 0.3, 0.5]);
        assert!(majorizes(&x, &x));
    }

    #[test]
    fn majorization_is_order_free() {
        assert!(majorizes(&dist(&[0.0, 1.0]), &dist(&[0.25, 0.5, 0.25])));
    }

    #[test]
    fn ingest_rejects_large_tail() {
        let probs = vec![0.5, 0.3]; // deficit 0.2 far above tolerance
        assert!(matches!(Distribution::ingest(probs), Err(ClassicalError::NotNormalized { .. })));
    }

    #[test]
    fn new_rejects_negative_entry() {
        let err = Distribution::new(vec![0.5, -0.1, 0.6]).unwrap_err();
        match err {
            ClassicalError::NegativeProbability { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
