//! Randomized invariants with a fixed proptest seed.

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use restricted_wiretap::bounds::{self, er_bound_at, EPS_ROOT};
use restricted_wiretap::channel::{build_joint_state, ChannelParams, A, B, E, F, R};
use restricted_wiretap::gaussian::{
    apply_symplectic, beamsplitter, check_physical, symplectic_eigenvalues, thermal_cov,
    tmsv_cov, von_neumann_entropy,
};
use restricted_wiretap::rates::{dr_rate, rr_rate};
use restricted_wiretap::sweep::{run_sweep, write_csv, SweepSpec};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_2024),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn channel() -> impl Strategy<Value = ChannelParams> {
    (0.02..0.98f64, 0.02..=1.0f64, prop_oneof![Just(0.0), 0.0..3.0f64], 0.0..50.0f64)
        .prop_map(|(eta, kappa, n_e, mu)| ChannelParams { eta, kappa, n_e, mu })
}

fn eve_and_lost(p: &ChannelParams) -> Vec<&'static str> {
    if p.is_pure_loss() {
        vec![E, F]
    } else {
        vec![E, F, R]
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn joint_state_is_pure(p in channel()) {
        let s = build_joint_state(p).unwrap();
        let scale = 1.0 + p.mu + p.n_e;
        for nu in symplectic_eigenvalues(&s.cov).unwrap() {
            prop_assert!((nu - 1.0).abs() <= 1e-9 * scale, "nu = {nu}");
        }
    }

    #[test]
    fn complementary_entropies_agree(p in channel()) {
        let s = build_joint_state(p).unwrap();
        let scale = 1.0 + p.mu + p.n_e;
        let ab = von_neumann_entropy(&s.marginal(&[A, B]).unwrap()).unwrap();
        let rest = von_neumann_entropy(&s.marginal(&eve_and_lost(&p)).unwrap()).unwrap();
        prop_assert!((ab - rest).abs() <= 1e-8 * scale);
        let mut not_a = vec![B];
        not_a.extend(eve_and_lost(&p));
        let a = von_neumann_entropy(&s.marginal(&[A]).unwrap()).unwrap();
        let b_rest = von_neumann_entropy(&s.marginal(&not_a).unwrap()).unwrap();
        prop_assert!((a - b_rest).abs() <= 1e-8 * scale);
    }

    #[test]
    fn photons_are_conserved(p in channel()) {
        let s = build_joint_state(p).unwrap();
        let expected = 2.0 * (p.mu + p.n_e);
        prop_assert!((s.cov.total_mean_photons() - expected).abs() <= 1e-10 * (1.0 + expected));
        let out = s.cov.mean_photons(1) + s.cov.mean_photons(2) + s.cov.mean_photons(3);
        prop_assert!((out - (p.mu + p.n_e)).abs() <= 1e-10 * (1.0 + expected));
    }

    #[test]
    fn beamsplitter_preserves_spectrum(t in 0.0..=1.0f64, m0 in 0.0..10.0f64, m1 in 0.0..10.0f64) {
        let v = tmsv_cov(m0).unwrap().direct_sum(&thermal_cov(m1).unwrap()).unwrap();
        let before = symplectic_eigenvalues(&v).unwrap();
        let after = symplectic_eigenvalues(&apply_symplectic(&beamsplitter(t, 1, 2, 3).unwrap(), &v).unwrap()).unwrap();
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() <= 1e-9 * x);
        }
    }

    #[test]
    fn rates_fall_with_kappa(eta in 0.02..0.98f64, k1 in 0.02..=1.0f64, k2 in 0.02..=1.0f64, n_e in 0.0..3.0f64) {
        let (lo, hi) = (k1.min(k2), k1.max(k2));
        for rate in [dr_rate, rr_rate] {
            let a = rate(eta, lo, n_e, f64::INFINITY).unwrap().raw;
            let b = rate(eta, hi, n_e, f64::INFINITY).unwrap().raw;
            prop_assert!(a >= b - 1e-9);
        }
    }

    #[test]
    fn rates_fall_with_noise(eta in 0.02..0.98f64, kappa in 0.02..=1.0f64, n1 in 0.0..3.0f64, n2 in 0.0..3.0f64) {
        let (lo, hi) = (n1.min(n2), n1.max(n2));
        for rate in [dr_rate, rr_rate] {
            let a = rate(eta, kappa, lo, f64::INFINITY).unwrap().raw;
            let b = rate(eta, kappa, hi, f64::INFINITY).unwrap().raw;
            prop_assert!(a >= b - 1e-9);
        }
    }

    #[test]
    fn positive_rates_grow_with_signal(p in channel(), m1 in 0.0..100.0f64, m2 in 0.0..100.0f64) {
        let (lo, hi) = (m1.min(m2), m1.max(m2));
        for rate in [dr_rate, rr_rate] {
            let a = rate(p.eta, p.kappa, p.n_e, lo).unwrap().raw;
            if a > 0.0 {
                prop_assert!(rate(p.eta, p.kappa, p.n_e, hi).unwrap().raw >= a - 1e-9);
            }
        }
    }

    #[test]
    fn pure_loss_rates_below_upper_bound(eta in 0.02..0.98f64, kappa in 0.02..=1.0f64) {
        let ub = bounds::er_upper_bound_pure_loss(eta, kappa).unwrap();
        let lb = dr_rate(eta, kappa, 0.0, f64::INFINITY).unwrap().raw
            .max(rr_rate(eta, kappa, 0.0, f64::INFINITY).unwrap().raw);
        prop_assert!(ub >= lb - 1e-9);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn separable_candidate_is_certified(p in channel().prop_filter("signal", |p| p.mu > 0.05)) {
        let (d, cand) = er_bound_at(p).unwrap();
        prop_assert!(check_physical(&cand.cov).physical);
        prop_assert!(cand.min_ppt_eig >= -EPS_ROOT);
        prop_assert!(d >= -1e-9);
    }
}

#[test]
fn sweep_output_is_deterministic() {
    let spec = SweepSpec::parse(
        "target=dr,rr,ccq,er_ub,bb84_restricted\nkappa=list:0.1,0.5\nne=list:0,0.2\nmu=log:0.1:100:5\nloss_db=lin:1:10:4\n",
    )
    .unwrap();
    let render = || {
        let mut buf = Vec::new();
        write_csv(&run_sweep(&spec).unwrap(), &mut buf, false).unwrap();
        buf
    };
    let first = render();
    assert_eq!(first, render());
    let text = String::from_utf8(first).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 2 * 2 * 5 * 4);
}
