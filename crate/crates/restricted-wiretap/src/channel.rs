//! The restricted wiretap channel as a labelled Gaussian state.
//!
//! Alice keeps `A` of a TMSV and sends `A'` through a beamsplitter of
//! transmissivity `eta` whose other input is Eve's injected mode. The reflected
//! light meets a second beamsplitter of transmissivity `kappa`: Eve collects
//! the transmitted part `E`, the rest `F` is lost. For thermal attacks Eve
//! keeps the purification `R` of her injected mode.

use crate::error::{check_range, Result};
use crate::gaussian::{
    apply_symplectic, beamsplitter, partial_trace, tmsv_cov, vacuum_cov, CovarianceMatrix,
};

pub const A: &str = "A";
pub const B: &str = "B";
pub const E: &str = "E";
pub const F: &str = "F";
pub const R: &str = "R";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    pub eta: f64,
    pub kappa: f64,
    pub n_e: f64,
    pub mu: f64,
}

impl ChannelParams {
    pub fn new(eta: f64, kappa: f64, n_e: f64, mu: f64) -> Result<Self> {
        let p = Self { eta, kappa, n_e, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn pure_loss(eta: f64, kappa: f64, mu: f64) -> Result<Self> {
        Self::new(eta, kappa, 0.0, mu)
    }

    pub fn validate(&self) -> Result<()> {
        validate_channel(self.eta, self.kappa, self.n_e)?;
        check_range("mu", self.mu, self.mu >= 0.0, "mu >= 0 and finite")
    }

    pub fn is_pure_loss(&self) -> bool {
        self.n_e == 0.0
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }
}

/// Checks the channel part of the parameters (no signal).
pub fn validate_channel(eta: f64, kappa: f64, n_e: f64) -> Result<()> {
    check_range("eta", eta, eta > 0.0 && eta < 1.0, "0 < eta < 1")?;
    check_range("kappa", kappa, kappa > 0.0 && kappa <= 1.0, "0 < kappa <= 1")?;
    check_range("n_e", n_e, n_e >= 0.0, "n_e >= 0")
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    pub cov: CovarianceMatrix,
    pub params: ChannelParams,
}

impl JointState {
    pub fn marginal<S: AsRef<str>>(&self, labels: &[S]) -> Result<CovarianceMatrix> {
        partial_trace(&self.cov, labels)
    }

    /// Labels present in this state (`R` only for thermal attacks).
    pub fn labels(&self) -> &[String] {
        self.cov.labels()
    }
}

/// Global pure state over `A, B, E, F` (and `R` when `n_e > 0`).
pub fn build_joint_state(params: ChannelParams) -> Result<JointState> {
    params.validate()?;
    let thermal = !params.is_pure_loss();
    // raw order: A, A', E', F'[, R]
    let source = tmsv_cov(params.mu)?.relabel(&["A", "A'"])?;
    let lost = vacuum_cov(1)?.relabel(&["F'"])?;
    let v = if thermal {
        let eve = tmsv_cov(params.n_e)?.relabel(&["E'", "R"])?;
        let v = source.direct_sum(&eve)?.direct_sum(&lost)?;
        partial_trace(&v, &["A", "A'", "E'", "F'", "R"])?
    } else {
        let eve = vacuum_cov(1)?.relabel(&["E'"])?;
        source.direct_sum(&eve)?.direct_sum(&lost)?
    };
    let n = v.n_modes();
    let s = beamsplitter(params.eta, 1, 2, n)?.then(&beamsplitter(params.kappa, 2, 3, n)?);
    let out = apply_symplectic(&s, &v)?;
    let labels: &[&str] = if thermal {
        &[A, B, E, F, R]
    } else {
        &[A, B, E, F]
    };
    Ok(JointState {
        cov: out.relabel(labels)?,
        params,
    })
}

pub fn marginal<S: AsRef<str>>(state: &JointState, labels: &[S]) -> Result<CovarianceMatrix> {
    state.marginal(labels)
}

/// Unrestricted wiring (`A, B, E[, R]`) with a single beamsplitter.
pub fn build_unrestricted_state(eta: f64, n_e: f64, mu: f64) -> Result<CovarianceMatrix> {
    validate_channel(eta, 1.0, n_e)?;
    check_range("mu", mu, mu >= 0.0, "mu >= 0 and finite")?;
    let thermal = n_e > 0.0;
    let source = tmsv_cov(mu)?.relabel(&["A", "A'"])?;
    let v = if thermal {
        source.direct_sum(&tmsv_cov(n_e)?.relabel(&["E'", "R"])?)?
    } else {
        source.direct_sum(&vacuum_cov(1)?.relabel(&["E'"])?)?
    };
    let out = apply_symplectic(&beamsplitter(eta, 1, 2, v.n_modes())?, &v)?;
    if thermal {
        out.relabel(&[A, B, E, R])
    } else {
        out.relabel(&[A, B, E])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{symplectic_eigenvalues, thermal_cov};

    #[test]
    fn pure_loss_photon_bookkeeping() {
        let (eta, kappa, mu) = (0.6, 0.3, 2.5);
        let s = build_joint_state(ChannelParams::pure_loss(eta, kappa, mu).unwrap()).unwrap();
        assert_eq!(s.labels(), [A, B, E, F]);
        let c = &s.cov;
        assert!((c.mean_photons(1) - eta * mu).abs() < 1e-12);
        assert!((c.mean_photons(2) - kappa * (1.0 - eta) * mu).abs() < 1e-12);
        assert!((c.mean_photons(3) - (1.0 - kappa) * (1.0 - eta) * mu).abs() < 1e-12);
        let e = s.marginal(&[E]).unwrap();
        let expect = thermal_cov(kappa * (1.0 - eta) * mu).unwrap();
        assert!((e.entries() - expect.entries()).amax() < 1e-12);
    }

    #[test]
    fn limits() {
        let s = build_joint_state(ChannelParams::pure_loss(0.4, 1.0, 3.0).unwrap()).unwrap();
        let f = s.marginal(&[F]).unwrap();
        assert!((f.entries() - thermal_cov(0.0).unwrap().entries()).amax() < 1e-12);

        let s = build_joint_state(ChannelParams::pure_loss(0.4, 0.5, 0.0).unwrap()).unwrap();
        assert!((s.cov.entries() - nalgebra::DMatrix::identity(8, 8)).amax() < 1e-12);
    }

    #[test]
    fn thermal_state_is_pure_with_r() {
        let s = build_joint_state(ChannelParams::new(0.7, 0.6, 1.0, 4.0).unwrap()).unwrap();
        assert_eq!(s.labels(), [A, B, E, F, R]);
        let nu = symplectic_eigenvalues(&s.cov).unwrap();
        assert!(nu.iter().all(|&x| (x - 1.0).abs() < 1e-9));
        let a = s.marginal(&[A]).unwrap();
        assert!((a.entries()[(0, 0)] - 9.0).abs() < 1e-12);
    }

    #[test]
    fn unrestricted_matches_kappa_one() {
        for n_e in [0.0, 0.5] {
            let s = build_joint_state(ChannelParams::new(0.3, 1.0, n_e, 2.0).unwrap()).unwrap();
            let labels: Vec<&str> = if n_e > 0.0 { vec![A, B, E, R] } else { vec![A, B, E] };
            let traced = s.marginal(&labels).unwrap();
            let direct = build_unrestricted_state(0.3, n_e, 2.0).unwrap();
            assert!((traced.entries() - direct.entries()).amax() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ChannelParams::new(1.0, 0.5, 0.0, 1.0).is_err());
        assert!(ChannelParams::new(0.5, 0.0, 0.0, 1.0).is_err());
        assert!(ChannelParams::new(0.5, 0.5, -1.0, 1.0).is_err());
        assert!(ChannelParams::new(0.5, 0.5, 0.0, f64::INFINITY).is_err());
    }
}
