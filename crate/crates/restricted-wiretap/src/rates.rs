//! Achievable secret-key rates (bits per channel use) with heterodyne detection.
//!
//! Each rate exists in a closed form and as a generic covariance pipeline
//! (`hashing_*_numeric`). Heterodyne conditioning on a Gaussian state does not
//! depend on the outcome, so the average over outcomes collapses to a single
//! conditional covariance matrix.

use std::fmt;

use crate::channel::{build_joint_state, validate_channel, ChannelParams, JointState, A, B, E, R};
use crate::error::{check_range, Result};
use crate::gaussian::{
    g, heterodyne_condition, partial_trace, symplectic_eigenvalues, von_neumann_entropy,
    CovarianceMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Alice measures, classical side information flows to Bob.
    Direct,
    /// Bob measures, classical side information flows to Alice.
    Reverse,
    /// Both measure (Gaussian-modulated CV-QKD), reverse reconciliation.
    Ccq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    PureLoss,
    Thermal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    ClosedForm,
    Numeric,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateResult {
    /// Unclamped value; negative means no key at these parameters.
    pub raw: f64,
    pub direction: Direction,
    pub channel: ChannelKind,
    pub path: Path,
}

impl RateResult {
    fn new(raw: f64, direction: Direction, n_e: f64, path: Path) -> Self {
        let channel = if n_e == 0.0 {
            ChannelKind::PureLoss
        } else {
            ChannelKind::Thermal
        };
        Self {
            raw,
            direction,
            channel,
            path,
        }
    }

    pub fn clamped(&self) -> f64 {
        self.raw.max(0.0)
    }
}

impl fmt::Display for RateResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.9} bits ({:?}, {:?}, {:?})",
            self.raw, self.direction, self.channel, self.path
        )
    }
}

fn entropy_sum(nus: &[f64]) -> f64 {
    nus.iter().map(|&nu| g((nu - 1.0) / 2.0)).sum()
}

fn check_mu(mu: f64) -> Result<()> {
    check_range("mu", mu, mu >= 0.0, "mu >= 0 and finite")
}

/// Direct reconciliation, pure loss.
pub fn dr_pure_loss(eta: f64, kappa: f64, mu: f64) -> Result<RateResult> {
    validate_channel(eta, kappa, 0.0)?;
    check_mu(mu)?;
    let raw = g(eta * mu) - g(kappa * mu * (1.0 - eta));
    Ok(RateResult::new(raw, Direction::Direct, 0.0, Path::ClosedForm))
}

/// Direct reconciliation, pure loss, `mu -> ∞`.
pub fn dr_pure_loss_limit(eta: f64, kappa: f64) -> Result<RateResult> {
    validate_channel(eta, kappa, 0.0)?;
    let raw = (eta / (kappa * (1.0 - eta))).log2();
    Ok(RateResult::new(raw, Direction::Direct, 0.0, Path::Asymptotic))
}

/// Reverse reconciliation, pure loss.
pub fn rr_pure_loss(eta: f64, kappa: f64, mu: f64) -> Result<RateResult> {
    validate_channel(eta, kappa, 0.0)?;
    check_mu(mu)?;
    let leak = 1.0 - eta;
    let denom = 1.0 + eta * mu;
    let raw = g(mu) - g(kappa * mu * leak) - (g(mu * leak / denom) - g(leak * kappa * mu / denom));
    Ok(RateResult::new(raw, Direction::Reverse, 0.0, Path::ClosedForm))
}

/// Reverse reconciliation, pure loss, `mu -> ∞`.
pub fn rr_pure_loss_limit(eta: f64, kappa: f64) -> Result<RateResult> {
    validate_channel(eta, kappa, 0.0)?;
    let leak = 1.0 - eta;
    let raw = (1.0 / (kappa * leak)).log2() - (g(leak / eta) - g(leak * kappa / eta));
    Ok(RateResult::new(raw, Direction::Reverse, 0.0, Path::Asymptotic))
}

/// Eve's modes present in a joint state.
fn eve_labels(state: &JointState) -> Vec<&'static str> {
    if state.params.is_pure_loss() {
        vec![E]
    } else {
        vec![E, R]
    }
}

fn with_prefix<'a>(first: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    std::iter::once(first).chain(rest.iter().copied()).collect()
}

/// Direct reconciliation, thermal attack; Eve's entropies from her reduced state.
pub fn dr_thermal(params: ChannelParams) -> Result<RateResult> {
    let state = build_joint_state(params)?;
    let eve = eve_labels(&state);
    let nu_er = symplectic_eigenvalues(&state.marginal(&eve)?)?;
    let ChannelParams { eta, kappa, n_e, mu } = params;
    let raw = g(n_e * (1.0 - eta) + eta * mu)
        - entropy_sum(&nu_er)
        - (g(n_e * (1.0 - eta)) - g(n_e * (1.0 - eta * kappa)));
    Ok(RateResult::new(raw, Direction::Direct, n_e, Path::ClosedForm))
}

/// Direct reconciliation, thermal attack, `mu -> ∞`.
pub fn dr_thermal_limit(eta: f64, kappa: f64, n_e: f64) -> Result<RateResult> {
    validate_channel(eta, kappa, n_e)?;
    let raw = (eta / (kappa * (1.0 - eta))).log2() - g(n_e) - g(n_e * (1.0 - eta))
        + g(n_e * (1.0 - eta * kappa));
    Ok(RateResult::new(raw, Direction::Direct, n_e, Path::Asymptotic))
}

/// Reverse reconciliation, thermal attack.
pub fn rr_thermal(params: ChannelParams) -> Result<RateResult> {
    let state = build_joint_state(params)?;
    let eve = eve_labels(&state);
    let nu_er = symplectic_eigenvalues(&state.marginal(&eve)?)?;
    let ber = state.marginal(&with_prefix(B, &eve))?;
    let nu_er_y = symplectic_eigenvalues(&heterodyne_condition(&ber, B)?)?;
    let ChannelParams { eta, n_e, mu, .. } = params;
    let a_given_y = mu - eta * mu * (1.0 + mu) / (1.0 + n_e - n_e * eta + eta * mu);
    let raw = g(mu) - entropy_sum(&nu_er) - g(a_given_y) + entropy_sum(&nu_er_y);
    Ok(RateResult::new(raw, Direction::Reverse, n_e, Path::ClosedForm))
}

/// Limiting symplectic eigenvalues of Eve's state conditioned on Bob's outcome.
pub fn rr_thermal_limit_eigenvalues(eta: f64, kappa: f64, n_e: f64) -> Result<[f64; 2]> {
    validate_channel(eta, kappa, n_e)?;
    let c_a = eta * eta * (2.0 * n_e * (n_e + 1.0) + 1.0);
    let c_b = 2.0 * eta * kappa * (eta + 2.0 * n_e * n_e + n_e - 1.0);
    let c_c = 2.0 * kappa * kappa * (1.0 + n_e - eta).powi(2);
    let c_e = eta * eta * (1.0 + n_e - kappa).powi(2);
    let c_f = 2.0 * eta * kappa * (n_e + 1.0) * (kappa + n_e - 1.0);
    let c_g = kappa * kappa * (n_e + 1.0).powi(2);
    let mix = kappa - eta * kappa + n_e * (kappa - eta);
    let c_d = 2.0 * ((c_e - c_f + c_g) * mix * mix).sqrt();
    let nu1 = (c_a - c_b + c_c + c_d).abs().sqrt() / eta;
    let nu2 = (-c_a + c_b - c_c + c_d).abs().sqrt() / eta;
    Ok([nu1.max(1.0), nu2.max(1.0)])
}

/// Reverse reconciliation, thermal attack, `mu -> ∞`.
pub fn rr_thermal_limit(eta: f64, kappa: f64, n_e: f64) -> Result<RateResult> {
    let nus = rr_thermal_limit_eigenvalues(eta, kappa, n_e)?;
    let raw = (1.0 / (kappa * (1.0 - eta))).log2()
        - g(n_e)
        - g((1.0 + n_e - n_e * eta - eta) / eta)
        + entropy_sum(&nus);
    Ok(RateResult::new(raw, Direction::Reverse, n_e, Path::Asymptotic))
}

/// Conditional entropies after heterodyning `measured`, for `kept` and Eve.
fn conditioned_entropies(
    state: &JointState,
    measured: &str,
    kept: &str,
) -> Result<(f64, f64)> {
    let eve = eve_labels(state);
    let mut labels = vec![measured, kept];
    labels.extend(eve.iter().copied());
    let cond = heterodyne_condition(&state.marginal(&labels)?, measured)?;
    let h_kept = von_neumann_entropy(&partial_trace(&cond, &[kept])?)?;
    let h_eve = von_neumann_entropy(&partial_trace(&cond, &eve)?)?;
    Ok((h_kept, h_eve))
}

/// Direct reconciliation from the generic covariance pipeline.
pub fn hashing_dr_numeric(params: ChannelParams) -> Result<RateResult> {
    let state = build_joint_state(params)?;
    let eve = eve_labels(&state);
    let h_b = von_neumann_entropy(&state.marginal(&[B])?)?;
    let h_e = von_neumann_entropy(&state.marginal(&eve)?)?;
    let (h_b_x, h_e_x) = conditioned_entropies(&state, A, B)?;
    let raw = h_b - h_e - (h_b_x - h_e_x);
    Ok(RateResult::new(raw, Direction::Direct, params.n_e, Path::Numeric))
}

/// Reverse reconciliation from the generic covariance pipeline.
pub fn hashing_rr_numeric(params: ChannelParams) -> Result<RateResult> {
    let state = build_joint_state(params)?;
    let (h_e, h_e_y) = eve_holevo_terms(&state)?;
    let h_a = von_neumann_entropy(&state.marginal(&[A])?)?;
    let (h_a_y, _) = conditioned_entropies(&state, B, A)?;
    let raw = h_a - h_e - (h_a_y - h_e_y);
    Ok(RateResult::new(raw, Direction::Reverse, params.n_e, Path::Numeric))
}

/// `H(ER)` and `H(ER | y)` with `y` Bob's heterodyne outcome.
fn eve_holevo_terms(state: &JointState) -> Result<(f64, f64)> {
    let eve = eve_labels(state);
    let h_e = von_neumann_entropy(&state.marginal(&eve)?)?;
    let cond = heterodyne_condition(&state.marginal(&with_prefix(B, &eve))?, B)?;
    Ok((h_e, von_neumann_entropy(&cond)?))
}

/// Classical mutual information in bits between Alice's and Bob's heterodyne outcomes.
pub fn heterodyne_mutual_information(v_ab: &CovarianceMatrix) -> Result<f64> {
    let outcome = |v: &CovarianceMatrix| {
        let n = v.entries().nrows();
        (v.entries() + nalgebra::DMatrix::identity(n, n)) * 0.5
    };
    let det_a = outcome(&v_ab.select(&[0])?).determinant();
    let det_b = outcome(&v_ab.select(&[1])?).determinant();
    let det_ab = outcome(v_ab).determinant();
    Ok(0.5 * (det_a * det_b / det_ab).log2())
}

/// Reverse-reconciled CV-QKD rate with reconciliation efficiency `beta`.
pub fn ccq_rate(params: ChannelParams, beta: f64) -> Result<RateResult> {
    check_range("beta", beta, beta > 0.0 && beta <= 1.0, "0 < beta <= 1")?;
    let state = build_joint_state(params)?;
    let i_xy = heterodyne_mutual_information(&state.marginal(&[A, B])?)?;
    let (h_e, h_e_y) = eve_holevo_terms(&state)?;
    let raw = beta * i_xy - (h_e - h_e_y);
    Ok(RateResult::new(raw, Direction::Ccq, params.n_e, Path::Numeric))
}

/// Closed-form direct rate for either channel; `mu = ∞` selects the limit.
pub fn dr_rate(eta: f64, kappa: f64, n_e: f64, mu: f64) -> Result<RateResult> {
    match (mu == f64::INFINITY, n_e == 0.0) {
        (true, true) => dr_pure_loss_limit(eta, kappa),
        (true, false) => dr_thermal_limit(eta, kappa, n_e),
        (false, true) => dr_pure_loss(eta, kappa, mu),
        (false, false) => dr_thermal(ChannelParams::new(eta, kappa, n_e, mu)?),
    }
}

/// Closed-form reverse rate for either channel; `mu = ∞` selects the limit.
pub fn rr_rate(eta: f64, kappa: f64, n_e: f64, mu: f64) -> Result<RateResult> {
    match (mu == f64::INFINITY, n_e == 0.0) {
        (true, true) => rr_pure_loss_limit(eta, kappa),
        (true, false) => rr_thermal_limit(eta, kappa, n_e),
        (false, true) => rr_pure_loss(eta, kappa, mu),
        (false, false) => rr_thermal(ChannelParams::new(eta, kappa, n_e, mu)?),
    }
}

/// Unrestricted pure-loss capacity `-log2(1 - eta)`.
pub fn plob(eta: f64) -> Result<f64> {
    check_range("eta", eta, eta > 0.0 && eta < 1.0, "0 < eta < 1")?;
    Ok(-(1.0 - eta).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn pure_loss_reference_values() {
        assert!(close(dr_pure_loss(0.6, 1.0, 1.0).unwrap().raw, 0.318726, 1e-6));
        assert!(close(dr_pure_loss_limit(0.6, 1.0).unwrap().raw, 1.5f64.log2(), 1e-12));
        assert!(close(dr_pure_loss_limit(0.6, 0.1).unwrap().raw, 3.906891, 1e-6));
        assert!(close(rr_pure_loss_limit(0.6, 0.1).unwrap().raw, 3.3853812700750914, 1e-12));
        assert_eq!(dr_pure_loss(0.3, 0.5, 0.0).unwrap().raw, 0.0);
        assert_eq!(rr_pure_loss(0.3, 0.5, 0.0).unwrap().raw, 0.0);
        // kappa(1-eta) = eta
        let eta = 0.2;
        assert!(dr_pure_loss(eta, eta / (1.0 - eta), 5.0).unwrap().raw.abs() < 1e-12);
    }

    #[test]
    fn plob_reduction() {
        for k in 1..10 {
            let eta = k as f64 / 10.0;
            assert!(close(rr_pure_loss_limit(eta, 1.0).unwrap().raw, plob(eta).unwrap(), 1e-9));
        }
        let r = rr_pure_loss(0.5, 1.0, 1e6).unwrap().raw;
        assert!(close(r, 1.0, 1e-3));
    }

    #[test]
    fn dr_threshold() {
        for kappa in [0.05, 0.3, 1.0] {
            let eta0 = kappa / (1.0 + kappa);
            assert!(dr_pure_loss_limit(eta0 * 1.01, kappa).unwrap().raw > 0.0);
            assert!(dr_pure_loss_limit(eta0 * 0.99, kappa).unwrap().raw < 0.0);
        }
    }

    #[test]
    fn closed_form_matches_pipeline() {
        for (eta, kappa, n_e, mu) in [(0.3, 0.5, 0.0, 1.0), (0.7, 0.2, 1.0, 10.0), (0.5, 0.9, 0.5, 0.1)] {
            let p = ChannelParams::new(eta, kappa, n_e, mu).unwrap();
            let dr = dr_rate(eta, kappa, n_e, mu).unwrap().raw;
            let rr = rr_rate(eta, kappa, n_e, mu).unwrap().raw;
            assert!(close(dr, hashing_dr_numeric(p).unwrap().raw, 1e-10), "{p:?}");
            assert!(close(rr, hashing_rr_numeric(p).unwrap().raw, 1e-10), "{p:?}");
        }
    }

    #[test]
    fn thermal_limits_converge() {
        for (eta, kappa, n_e) in [(0.7, 0.6, 1.0), (0.8, 0.4, 1.0), (0.3, 0.2, 0.5)] {
            let p = ChannelParams::new(eta, kappa, n_e, 1e6).unwrap();
            let rr = rr_thermal(p).unwrap().raw;
            let dr = dr_thermal(p).unwrap().raw;
            assert!(close(rr, rr_thermal_limit(eta, kappa, n_e).unwrap().raw, 1e-3));
            assert!(close(dr, dr_thermal_limit(eta, kappa, n_e).unwrap().raw, 1e-3));
        }
    }

    #[test]
    fn thermal_limit_reduces_to_pure_loss() {
        for (eta, kappa) in [(0.6, 0.1), (0.2, 0.7), (0.9, 0.9)] {
            let t = rr_thermal_limit(eta, kappa, 0.0).unwrap().raw;
            let p = rr_pure_loss_limit(eta, kappa).unwrap().raw;
            assert!(close(t, p, 1e-9), "{eta} {kappa}: {t} vs {p}");
        }
    }

    #[test]
    fn ccq_bounds() {
        let p = ChannelParams::new(0.5, 0.3, 0.1, 5.0).unwrap();
        assert!(ccq_rate(p, 1.0).unwrap().raw <= hashing_rr_numeric(p).unwrap().raw + 1e-12);
        let quiet = ChannelParams::pure_loss(0.5, 0.3, 0.0).unwrap();
        assert!(ccq_rate(quiet, 1.0).unwrap().raw.abs() < 1e-12);
        // thermal noise alone correlates Bob with Eve's purification
        assert!(ccq_rate(p.with_mu(0.0), 1.0).unwrap().raw < 0.0);
        assert!(ccq_rate(p, 0.0).is_err());
        assert!(ccq_rate(p, 1.1).is_err());
    }

    #[test]
    fn crossover_at_eta_06() {
        let dr = |k| dr_pure_loss_limit(0.6, k).unwrap().raw;
        let rr = |k| rr_pure_loss_limit(0.6, k).unwrap().raw;
        assert!(dr(0.1) > rr(0.1));
        assert!(dr(0.9) < rr(0.9));
    }
}
