//! Invariants of the certification layer: monotone gap decay, exactness on
//! low-complexity states, ball soundness, and independent recomputation of
//! every audited inequality from raw module outputs.

use entrocert::channels::{self, KrausChannel};
use entrocert::classical::{self, Distribution};
use entrocert::continuity::{
    audit_corollary_chi, audit_corollary_mi, certify_shannon_set, certify_vn_set,
    majorization_ball_samples, StateSet,
};
use entrocert::quantum::{self, DensityMatrix};
use entrocert::random;
use rand::Rng;

fn assert_nonincreasing(bounds: &[f64]) {
    for w in bounds.windows(2) {
        assert!(w[1] <= w[0] + 1e-10, "bounds not monotone: {:?}", w);
    }
}

#[test]
fn every_report_is_monotone_in_k() {
    let mut rng = random::seeded(701);
    for _ in 0..10 {
        let n = rng.gen_range(3..=24);
        let x = random::distribution(&mut rng, n);
        let r = certify_shannon_set(&StateSet::MajorizationBall(x), 8, 1e-3).unwrap();
        assert_nonincreasing(&r.gap_bounds);
    }
    for _ in 0..10 {
        let dim = rng.gen_range(2..=6);
        let members: Vec<DensityMatrix> = (0..3).map(|_| random::density_matrix(&mut rng, dim)).collect();
        let r = certify_vn_set(&StateSet::ExplicitQuantum(members), dim + 2, 1e-3).unwrap();
        assert_nonincreasing(&r.gap_bounds);
    }
}

#[test]
fn members_of_bounded_complexity_contribute_exact_zero() {
    // Support (or rank) ≤ k pins the contribution at exactly 0.0.
    let x = Distribution::new(vec![0.5, 0.3, 0.2]).unwrap();
    assert_eq!(classical::delta_k_shannon_bound(&x, 3), 0.0);
    let mut rng = random::seeded(702);
    for dim in 2..=5usize {
        let rho = random::density_matrix(&mut rng, dim);
        assert_eq!(quantum::delta_k_vn_bound(&rho, dim), 0.0);
        let psi = random::pure_state(&mut rng, dim);
        assert_eq!(quantum::delta_k_vn_bound(&psi, 1), 0.0);
    }
}

#[test]
fn ball_certificate_covers_five_hundred_samples() {
    let mut probs: Vec<f64> = (1..=24).map(|i| 0.5f64.powi(i)).collect();
    let s: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= s);
    let x0 = Distribution::new(probs).unwrap();
    let mut rng = random::seeded(703);
    let samples = majorization_ball_samples(&mut rng, &x0, 500, 8);
    for x in &samples {
        assert!(classical::majorizes(x, &x0));
        for k in 1..=8usize {
            let member_bound = classical::delta_k_shannon_bound(x, k);
            let ball_bound = classical::delta_k_shannon_bound(&x0, k);
            assert!(member_bound <= ball_bound + 1e-10);
        }
    }
}

#[test]
fn mi_audit_rows_match_raw_recomputation() {
    let mut rng = random::seeded(704);
    let phi = random::channel(&mut rng, 3, 3, 2);
    let members: Vec<DensityMatrix> = (0..2).map(|_| random::density_matrix(&mut rng, 3)).collect();
    let set = StateSet::ExplicitQuantum(members.clone());
    let audit = audit_corollary_mi(&phi, &set, None, 3).unwrap();
    assert!(audit.passed);
    for row in &audit.rows {
        let vn: Vec<f64> = members.iter().map(|r| quantum::delta_k_vn_bound(r, row.k)).collect();
        let mi: Vec<f64> =
            members.iter().map(|r| channels::delta_k_mi_bound(&phi, r, row.k).unwrap()).collect();
        let vn_max = vn.iter().copied().fold(0.0, f64::max);
        let mi_max = mi.iter().copied().fold(0.0, f64::max);
        let slack = vn.iter().zip(&mi).map(|(v, m)| 2.0 * v - m).fold(f64::INFINITY, f64::min);
        assert!((row.vn_bound - vn_max).abs() < 1e-14);
        assert!((row.mi_bound - mi_max).abs() < 1e-14);
        assert!((row.sandwich_slack - slack).abs() < 1e-14);
        assert!(row.sandwich_slack >= -1e-9);
    }
}

#[test]
fn chi_audit_rows_match_raw_recomputation() {
    let mut rng = random::seeded(705);
    let phi = random::channel(&mut rng, 3, 3, 3);
    let members: Vec<DensityMatrix> = (0..2).map(|_| random::density_matrix(&mut rng, 3)).collect();
    let set = StateSet::ExplicitQuantum(members.clone());
    let audit = audit_corollary_chi(&phi, &set, 3).unwrap();
    assert!(audit.passed);
    for row in &audit.rows {
        let mut out_max: f64 = 0.0;
        let mut mono = f64::INFINITY;
        let mut ident: f64 = 0.0;
        for rho in &members {
            let e = quantum::rank_k_decomposition(rho, row.k);
            let gap = channels::chi_lower_bound(&phi, rho, &e).unwrap();
            let vn = quantum::delta_k_vn_bound(rho, row.k);
            let direct = channels::output_entropy(&phi, rho).unwrap()
                - e.weights()
                    .iter()
                    .zip(e.members())
                    .map(|(w, m)| w * channels::output_entropy(&phi, m).unwrap())
                    .sum::<f64>();
            out_max = out_max.max(gap);
            mono = mono.min(vn - gap);
            ident = ident.max((direct - gap).abs());
        }
        assert!((row.output_gap - out_max).abs() < 1e-14);
        assert!((row.monotonicity_slack - mono).abs() < 1e-14);
        assert!((row.identity_residual - ident).abs() < 1e-14);
        assert!(row.monotonicity_slack >= -1e-9);
        assert!(row.identity_residual <= 1e-8);
    }
}

#[test]
fn random_diagonal_chi_audit_passes() {
    let mut rng = random::seeded(706);
    for _ in 0..50 {
        let dim = rng.gen_range(2..=4);
        let m = rng.gen_range(1..=4);
        let phi = random::channel(&mut rng, dim, dim, m);
        let members: Vec<DensityMatrix> = (0..2)
            .map(|_| DensityMatrix::from_distribution(&random::distribution(&mut rng, dim)))
            .collect();
        let audit = audit_corollary_chi(&phi, &StateSet::ExplicitQuantum(members), dim).unwrap();
        assert!(audit.passed);
    }
}

#[test]
fn audits_reject_classical_sets() {
    let phi = KrausChannel::identity(2);
    let set = StateSet::ExplicitClassical(vec![Distribution::new(vec![1.0]).unwrap()]);
    assert!(audit_corollary_mi(&phi, &set, None, 2).is_err());
    assert!(audit_corollary_chi(&phi, &set, 2).is_err());
}
