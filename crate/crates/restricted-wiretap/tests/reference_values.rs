//! Frozen reference values for each module.

use nalgebra::DMatrix;
use restricted_wiretap::bb84::{self, Bb84Params};
use restricted_wiretap::bounds::{
    closest_sep_two_mode, er_upper_bound_pure_loss, gaussian_relative_entropy, ppt_min_eig,
};
use restricted_wiretap::channel::{build_joint_state, ChannelParams, A, E};
use restricted_wiretap::fock::{entropy_fock, relative_entropy_fock, thermal_fock, tmsv_fock};
use restricted_wiretap::gaussian::{
    beamsplitter, check_physical, g_entropy, heterodyne_condition_index, partial_trace,
    symplectic_eigenvalues, thermal_cov, tmsv_cov, vacuum_cov, von_neumann_entropy,
    CovarianceMatrix,
};
use restricted_wiretap::rates::{self, plob};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn entropy_function() {
    assert_eq!(g_entropy(0.0).unwrap(), 0.0);
    assert!(close(g_entropy(1.0).unwrap(), 2.0, 1e-15));
    assert!(close(g_entropy(0.5).unwrap(), 1.377_443_751_081_734_4, 1e-14));
}

#[test]
fn standard_states() {
    assert_eq!(vacuum_cov(3).unwrap().entries(), &DMatrix::identity(6, 6));
    assert_eq!(thermal_cov(0.5).unwrap().entries(), &(DMatrix::identity(2, 2) * 2.0));
    let th = thermal_cov(1.0).unwrap();
    assert!(close(symplectic_eigenvalues(&th).unwrap()[0], 3.0, 1e-12));
    assert!(close(von_neumann_entropy(&th).unwrap(), 2.0, 1e-12));

    let v = tmsv_cov(1.0).unwrap();
    let m = v.entries();
    assert_eq!(m[(0, 0)], 3.0);
    assert!(close(m[(0, 1)], 2.0 * 2f64.sqrt(), 1e-15));
    assert!(close(m[(2, 3)], -2.0 * 2f64.sqrt(), 1e-15));
    assert!(symplectic_eigenvalues(&v).unwrap().iter().all(|nu| close(*nu, 1.0, 1e-12)));
    assert!(von_neumann_entropy(&v).unwrap().abs() < 1e-12);
    let arm = partial_trace(&v, &["m0"]).unwrap();
    assert_eq!(arm.entries(), &(DMatrix::identity(2, 2) * 3.0));
}

#[test]
fn swap_and_conditioning() {
    let s = beamsplitter(0.0, 0, 1, 2).unwrap();
    let v = CovarianceMatrix::from_matrix(DMatrix::from_diagonal(&nalgebra::dvector![3.0, 1.0, 3.0, 1.0]))
        .unwrap();
    let out = restricted_wiretap::gaussian::apply_symplectic(&s, &v).unwrap();
    assert!(close(out.mean_photons(1), 1.0, 1e-12));
    assert!(close(out.mean_photons(0), 0.0, 1e-12));

    for mu in [0.1, 1.0, 100.0] {
        let c = heterodyne_condition_index(&tmsv_cov(mu).unwrap(), 1).unwrap();
        assert!((c.entries() - DMatrix::identity(2, 2)).amax() < 1e-9);
        assert!(check_physical(&tmsv_cov(mu).unwrap()).physical);
    }
    let sub = CovarianceMatrix::from_matrix(DMatrix::identity(2, 2) * 0.5).unwrap();
    assert!(!check_physical(&sub).physical);
}

#[test]
fn channel_marginals() {
    let (eta, kappa, mu) = (0.6, 0.3, 2.0);
    let s = build_joint_state(ChannelParams::pure_loss(eta, kappa, mu).unwrap()).unwrap();
    let e = s.marginal(&[E]).unwrap();
    assert!((e.entries() - thermal_cov(kappa * (1.0 - eta) * mu).unwrap().entries()).amax() < 1e-12);
    let a = s.marginal(&[A]).unwrap();
    assert!((a.entries() - DMatrix::identity(2, 2) * (2.0 * mu + 1.0)).amax() < 1e-12);
    let b = s.marginal(&["B"]).unwrap();
    assert!(close(
        von_neumann_entropy(&b).unwrap(),
        g_entropy(eta * mu).unwrap(),
        1e-12
    ));
}

#[test]
fn pure_loss_rates() {
    assert!(close(rates::dr_pure_loss(0.6, 1.0, 1.0).unwrap().raw, 0.318_726, 1e-6));
    assert!(close(rates::dr_pure_loss_limit(0.6, 1.0).unwrap().raw, 0.584_963, 1e-6));
    assert!(close(rates::dr_pure_loss_limit(0.6, 0.1).unwrap().raw, 15f64.log2(), 1e-12));
    // kappa (1 - eta) = eta
    assert!(rates::dr_pure_loss(0.25, 1.0 / 3.0, 7.0).unwrap().raw.abs() < 1e-12);
    assert!(close(rates::rr_pure_loss(0.5, 1.0, 1e6).unwrap().raw, 1.0, 1e-3));
    assert!(close(rates::rr_pure_loss_limit(0.6, 0.1).unwrap().raw, 3.385_381_270_075_091_4, 1e-12));
    assert_eq!(rates::rr_pure_loss(0.5, 0.5, 0.0).unwrap().raw, 0.0);
}

#[test]
fn thermal_rates() {
    let p = ChannelParams::new(0.6, 0.3, 0.0, 2.0).unwrap();
    let pl = rates::dr_pure_loss(0.6, 0.3, 2.0).unwrap().raw;
    assert!(close(rates::dr_thermal(p).unwrap().raw, pl, 1e-9));
    let pl = rates::rr_pure_loss(0.6, 0.3, 2.0).unwrap().raw;
    assert!(close(rates::rr_thermal(p).unwrap().raw, pl, 1e-9));

    let noisy = ChannelParams::new(0.6, 0.3, 0.5, 0.0).unwrap();
    assert!(rates::dr_thermal(noisy).unwrap().raw <= 1e-12);

    let unrestricted = rates::dr_thermal_limit(0.7, 1.0, 0.5).unwrap().raw;
    let expect = (0.7f64 / 0.3).log2() - g_entropy(0.5).unwrap();
    assert!(close(unrestricted, expect, 1e-12));

    for (eta, kappa, n_e) in [(0.8, 0.4, 1.0), (0.7, 0.6, 1.0)] {
        let p = ChannelParams::new(eta, kappa, n_e, 1e6).unwrap();
        let dr = rates::dr_thermal_limit(eta, kappa, n_e).unwrap().raw;
        let rr = rates::rr_thermal_limit(eta, kappa, n_e).unwrap().raw;
        assert!(close(dr, rates::dr_thermal(p).unwrap().raw, 1e-3));
        assert!(close(rr, rates::rr_thermal(p).unwrap().raw, 1e-3));
    }
    assert!(close(rates::ccq_rate(ChannelParams::pure_loss(0.5, 0.5, 0.0).unwrap(), 1.0).unwrap().raw, 0.0, 1e-12));
}

#[test]
fn entanglement_bounds() {
    let vac = vacuum_cov(2).unwrap();
    assert!(ppt_min_eig(&vac, &["m0"]).unwrap().abs() < 1e-12);
    assert!(ppt_min_eig(&tmsv_cov(1.0).unwrap(), &["m0"]).unwrap() < 0.0);
    assert!(close(closest_sep_two_mode(3.0, 3.0).unwrap(), 2.0, 1e-12));
    assert_eq!(closest_sep_two_mode(1.0, 5.0).unwrap(), 0.0);

    let th = thermal_cov(1.0).unwrap();
    assert!(gaussian_relative_entropy(&th, &th).unwrap().abs() < 1e-12);
    let v = vacuum_cov(1).unwrap();
    assert!(close(gaussian_relative_entropy(&v, &th).unwrap(), 1.0, 1e-12));

    assert!(close(er_upper_bound_pure_loss(0.6, 0.1).unwrap(), 4.0, 1e-12));
    for k in 1..10 {
        let eta = f64::from(k) / 10.0;
        assert_eq!(er_upper_bound_pure_loss(eta, 1.0).unwrap(), plob(eta).unwrap());
    }
}

#[test]
fn decoy_bb84() {
    assert_eq!(bb84::h2(0.0).unwrap(), 0.0);
    assert_eq!(bb84::h2(0.5).unwrap(), 1.0);
    assert!(close(bb84::h2(0.11).unwrap(), 0.499_915_958_164_528, 1e-12));

    let p = Bb84Params::new(1e9, 0.1, 0.0, 0.0, 1.1, 1.0).unwrap();
    assert!(close(bb84::p_sift(&p), 0.095_163, 1e-6));
    assert_eq!(bb84::p_sift(&p.with_mu(0.0)), 0.0);
    assert_eq!(bb84::skr_restricted(&p.with_mu(0.0)).unwrap(), 0.0);

    // Eve blind: rate = R Pr(B1) (1 - f h2(Pr(Be))) / 2
    let p = Bb84Params::new(1e9, 0.005, 0.0, 1e-4, 1.1, 0.5).unwrap();
    let be = bb84::conditional_probs(&p).unwrap().be;
    let expect = p.rate * bb84::p_sift(&p) * (1.0 - p.f_l * bb84::h2(be).unwrap()) / 2.0;
    assert!(close(bb84::skr_restricted(&p).unwrap(), expect, 1e-6 * expect));

    let leaky = Bb84Params::new(1e9, 0.005, 0.99, 1e-4, 1.1, 10.0).unwrap();
    assert_eq!(bb84::skr_restricted(&leaky).unwrap(), 0.0);
}

#[test]
fn fock_values() {
    let s = tmsv_fock(0.0, 6).unwrap();
    assert_eq!(s.amplitudes()[0], 1.0);
    let s = tmsv_fock(0.2, 25).unwrap();
    assert!(s.leakage() < 1e-12);
    assert!(close(entropy_fock(&s, &["m0"]).unwrap(), g_entropy(0.2).unwrap(), 1e-6));
    let vac = thermal_fock(0.0, 40).unwrap();
    let th = thermal_fock(1.0, 40).unwrap();
    assert!(close(relative_entropy_fock(&vac, &th).unwrap(), 1.0, 1e-6));
}
