//! Self-verification suite: nine numbered checks, each reported as one
//! PASS/FAIL line. Shared by the `wiretap verify` subcommand and the
//! acceptance test target.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bb84::{self, monte_carlo, Bb84Params, Eve, MuSearch};
use crate::bounds::{self, EPS_ROOT};
use crate::channel::{self, build_joint_state, ChannelParams};
use crate::error::Result;
use crate::fock;
use crate::gaussian::{check_physical, symplectic_eigenvalues, von_neumann_entropy};
use crate::rates;

/// Seed for every randomized check.
pub const SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

type Check = fn() -> Result<(bool, String)>;

const CRITERIA: [(&str, Check); 9] = [
    ("unrestricted capacity reduction", plob_reduction),
    ("closed form vs covariance pipeline", closed_vs_numeric),
    ("asymptotic closed forms", asymptotic_limits),
    ("direct/reverse crossover at eta=0.6", crossover),
    ("pure-loss upper bound", upper_bound_closed_form),
    ("upper bound above lower bounds", sandwich),
    ("Fock-space oracle", fock_oracle),
    ("decoy-state BB84", decoy_bb84),
    ("randomized property checks", properties),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs check `id` (1-based).
pub fn run_criterion(id: u8) -> Option<CriterionReport> {
    let (name, check) = *CRITERIA.get(usize::from(id).checked_sub(1)?)?;
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CriterionReport {
        id,
        name,
        passed,
        detail,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=CRITERIA.len() as u8).filter_map(run_criterion).collect()
}

const GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const NOISE: [f64; 3] = [0.0, 0.5, 1.0];

fn channel_grid() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for eta in GRID {
        for kappa in GRID {
            for n_e in NOISE {
                out.push((eta, kappa, n_e));
            }
        }
    }
    out
}

fn plob_reduction() -> Result<(bool, String)> {
    let mut worst_rr = 0.0f64;
    let mut exact = true;
    for k in 1..=9 {
        let eta = k as f64 / 10.0;
        let cap = rates::plob(eta)?;
        worst_rr = worst_rr.max((rates::rr_pure_loss_limit(eta, 1.0)?.raw - cap).abs());
        exact &= bounds::er_upper_bound_pure_loss(eta, 1.0)? == cap;
    }
    Ok((
        worst_rr <= 1e-9 && exact,
        format!("max |RR limit - capacity| = {worst_rr:.2e}, upper bound identical: {exact}"),
    ))
}

fn closed_vs_numeric() -> Result<(bool, String)> {
    let points: Vec<ChannelParams> = channel_grid()
        .into_iter()
        .flat_map(|(eta, kappa, n_e)| {
            [0.1, 1.0, 10.0].map(move |mu| ChannelParams { eta, kappa, n_e, mu })
        })
        .collect();
    let worst = points
        .par_iter()
        .map(|&p| -> Result<f64> {
            let dr = rates::dr_rate(p.eta, p.kappa, p.n_e, p.mu)?.raw;
            let rr = rates::rr_rate(p.eta, p.kappa, p.n_e, p.mu)?.raw;
            let dr_n = rates::hashing_dr_numeric(p)?.raw;
            let rr_n = rates::hashing_rr_numeric(p)?.raw;
            let excess = |c: f64, n: f64| (c - n).abs() / (1e-9 * c.abs()).max(1e-12);
            Ok(excess(dr, dr_n).max(excess(rr, rr_n)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok((
        worst <= 1.0,
        format!(
            "{} points, worst deviation {worst:.3} x tolerance (1e-9 relative, 1e-12 floor)",
            points.len()
        ),
    ))
}

fn asymptotic_limits() -> Result<(bool, String)> {
    let mu = 1e6;
    let (mut dr_worst, mut rr_worst) = (0.0f64, 0.0f64);
    for (eta, kappa, n_e) in channel_grid() {
        let p = ChannelParams::new(eta, kappa, n_e, mu)?;
        dr_worst = dr_worst
            .max((rates::dr_thermal_limit(eta, kappa, n_e)?.raw - rates::dr_thermal(p)?.raw).abs());
        rr_worst = rr_worst
            .max((rates::rr_thermal_limit(eta, kappa, n_e)?.raw - rates::rr_thermal(p)?.raw).abs());
    }
    Ok((
        dr_worst <= 1e-3 && rr_worst <= 1e-3,
        format!("at mu=1e6: max DR gap {dr_worst:.2e}, max RR gap {rr_worst:.2e} bits"),
    ))
}

fn crossover() -> Result<(bool, String)> {
    let dr_low = rates::dr_pure_loss_limit(0.6, 0.1)?.raw;
    let rr_low = rates::rr_pure_loss_limit(0.6, 0.1)?.raw;
    let dr_high = rates::dr_pure_loss_limit(0.6, 0.9)?.raw;
    let rr_high = rates::rr_pure_loss_limit(0.6, 0.9)?.raw;
    let ok = (dr_low - 3.906891).abs() <= 1e-5
        && (rr_low - 3.385387).abs() <= 1e-5
        && dr_low > rr_low
        && rr_high > dr_high;
    Ok((
        ok,
        format!(
            "kappa=0.1: DR {dr_low:.7} > RR {rr_low:.7}; kappa=0.9: DR {dr_high:.7} < RR {rr_high:.7}"
        ),
    ))
}

fn upper_bound_closed_form() -> Result<(bool, String)> {
    let exact = bounds::er_upper_bound_pure_loss(0.6, 0.1)?;
    let schedule = bounds::default_mu_schedule();
    let mut cases = Vec::new();
    for eta in [0.3, 0.6, 0.9] {
        for kappa in [0.1, 0.5, 0.9] {
            cases.push((eta, kappa));
        }
    }
    let worst = cases
        .par_iter()
        .map(|&(eta, kappa)| -> Result<f64> {
            let numeric = bounds::er_upper_bound_numeric(eta, kappa, 0.0, &schedule)?.value;
            Ok((numeric - bounds::er_upper_bound_pure_loss(eta, kappa)?).abs())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok((
        (exact - 4.0).abs() <= 1e-9 && worst <= 1e-2,
        format!("UB(0.6, 0.1) = {exact:.12}; numeric search max gap {worst:.2e} bits over 9 points"),
    ))
}

fn sandwich() -> Result<(bool, String)> {
    let schedule = bounds::geometric_schedule(1.0, 1e5, 3)?;
    let mut points = Vec::new();
    for n_e in [0.0, 0.05, 0.5] {
        for kappa in [0.01, 0.1, 0.5] {
            for step in 1..=40 {
                points.push((f64::from(step) * 0.5, kappa, n_e));
            }
        }
    }
    let slack = points
        .par_iter()
        .map(|&(db, kappa, n_e)| -> Result<f64> {
            let eta = 10f64.powf(-db / 10.0);
            let lower = rates::dr_rate(eta, kappa, n_e, f64::INFINITY)?
                .raw
                .max(rates::rr_rate(eta, kappa, n_e, f64::INFINITY)?.raw);
            let upper = if n_e == 0.0 {
                bounds::er_upper_bound_pure_loss(eta, kappa)?
            } else {
                bounds::er_upper_bound_numeric(eta, kappa, n_e, &schedule)?.value
            };
            Ok(upper - lower)
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = slack.iter().filter(|&&s| s < -1e-6).count();
    let min = slack.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((
        violations == 0,
        format!(
            "{} points, {violations} violations, smallest UB - LB = {min:.3e} bits",
            points.len()
        ),
    ))
}

fn fock_oracle() -> Result<(bool, String)> {
    let cases = [
        (ChannelParams::pure_loss(0.6, 0.3, 0.2)?, 25, 1e-4),
        (ChannelParams::pure_loss(0.3, 0.8, 0.1)?, 25, 1e-4),
        (ChannelParams::new(0.6, 0.3, 0.2, 0.2)?, 12, 1e-3),
        (ChannelParams::new(0.8, 0.5, 0.05, 0.15)?, 12, 1e-3),
    ];
    let checks = cases
        .par_iter()
        .map(|&(p, dim, tol)| fock::cross_check(p, dim).map(|c| (c, tol)))
        .collect::<Result<Vec<_>>>()?;
    let ok = checks.iter().all(|(c, tol)| c.max_error() <= *tol);
    let parts: Vec<String> = checks
        .iter()
        .map(|(c, _)| {
            format!(
                "dim {} {} quantities max err {:.1e} leakage {:.1e}",
                c.dim,
                c.entropies.len() + c.relative_entropies.len(),
                c.max_error(),
                c.leakage
            )
        })
        .collect();
    Ok((ok, parts.join("; ")))
}

fn decoy_bb84() -> Result<(bool, String)> {
    let kappa = 0.1;
    let search = MuSearch::default();
    let grid: Vec<f64> = (0..search.coarse_points)
        .map(|i| {
            let f = i as f64 / (search.coarse_points - 1) as f64;
            (search.lo.ln() + (search.hi.ln() - search.lo.ln()) * f).exp()
        })
        .collect();
    let mut pointwise = true;
    for &mu in &grid {
        let p = Bb84Params::reference(kappa, mu)?;
        pointwise &= bb84::skr_restricted_raw(&p)? > bb84::skr_unrestricted_raw(&p)?;
        pointwise &= bb84::skr_restricted(&p)? >= bb84::skr_unrestricted(&p)?;
    }
    let base = Bb84Params::reference(kappa, 1.0)?;
    let restricted = bb84::optimize_mu(&base, Eve::Restricted, search)?;
    let unrestricted = bb84::optimize_mu(&base, Eve::Unrestricted, search)?;
    let interior = |o: &bb84::MuOptimum| !o.flat && !o.at_boundary;

    let p = base.with_mu(restricted.mu);
    let pulses = 10_000_000;
    let est = monte_carlo::simulate(&p, pulses, SEED)?;
    let c = bb84::conditional_probs(&p)?;
    let (z_b1, z_be) = (est.p_b1.sigmas_from(bb84::p_sift(&p)), est.p_be.sigmas_from(c.be));

    let ok = pointwise
        && interior(&restricted)
        && interior(&unrestricted)
        && z_b1 <= 3.0
        && z_be <= 3.0;
    Ok((
        ok,
        format!(
            "kappa={kappa}: restricted > unrestricted at all {} mu: {pointwise}; \
             optima mu*={:.3} ({:.3e} b/s) and mu*={:.3} ({:.3e} b/s); \
             Monte Carlo {pulses} pulses: Pr(B1) {z_b1:.2} sigma, Pr(Be) {z_be:.2} sigma",
            grid.len(),
            restricted.mu,
            restricted.skr,
            unrestricted.mu,
            unrestricted.skr,
        ),
    ))
}

fn random_params(rng: &mut ChaCha8Rng, max_mu: f64) -> ChannelParams {
    ChannelParams {
        eta: rng.random_range(0.05..0.95),
        kappa: rng.random_range(0.05..=1.0),
        n_e: if rng.random_bool(0.25) {
            0.0
        } else {
            rng.random_range(0.0..2.0)
        },
        mu: rng.random_range(0.0..max_mu),
    }
}

fn channel_invariants(rng: &mut ChaCha8Rng, n: usize) -> Result<usize> {
    let mut failures = 0;
    for _ in 0..n {
        let p = random_params(rng, 20.0);
        let s = build_joint_state(p)?;
        let scale = 1.0 + p.mu + p.n_e;
        let pure = symplectic_eigenvalues(&s.cov)?
            .iter()
            .all(|nu| (nu - 1.0).abs() <= 1e-9 * scale);
        let mut rest = vec![channel::E, channel::F];
        if !p.is_pure_loss() {
            rest.push(channel::R);
        }
        let complement = (von_neumann_entropy(&s.marginal(&[channel::A, channel::B])?)?
            - von_neumann_entropy(&s.marginal(&rest)?)?)
        .abs()
            <= 1e-8 * scale;
        let photons = (s.cov.total_mean_photons() - 2.0 * (p.mu + p.n_e)).abs() <= 1e-10 * scale;
        failures += usize::from(!(pure && complement && photons));
    }
    Ok(failures)
}

fn rate_monotonicity(rng: &mut ChaCha8Rng, n: usize) -> Result<usize> {
    let tol = 1e-9;
    let mut failures = 0;
    for _ in 0..n {
        let p = random_params(rng, 50.0);
        let (lo, hi): (f64, f64) = (rng.random_range(0.05..1.0), rng.random_range(0.05..1.0));
        let (k1, k2) = (lo.min(hi), lo.max(hi));
        let (n1, n2) = (rng.random_range(0.0..2.0), rng.random_range(0.0..2.0));
        let (n1, n2) = (f64::min(n1, n2), f64::max(n1, n2));
        let (m1, m2) = (rng.random_range(0.0..50.0), rng.random_range(0.0..50.0));
        let (m1, m2) = (f64::min(m1, m2), f64::max(m1, m2));
        for rate in [rates::dr_rate, rates::rr_rate] {
            let inf = f64::INFINITY;
            let kappa_ok = rate(p.eta, k1, p.n_e, inf)?.raw >= rate(p.eta, k2, p.n_e, inf)?.raw - tol;
            let noise_ok = rate(p.eta, p.kappa, n1, inf)?.raw >= rate(p.eta, p.kappa, n2, inf)?.raw - tol;
            let low = rate(p.eta, p.kappa, p.n_e, m1)?.raw;
            let mu_ok = low <= 0.0 || rate(p.eta, p.kappa, p.n_e, m2)?.raw >= low - tol;
            failures += usize::from(!(kappa_ok && noise_ok && mu_ok));
        }
    }
    Ok(failures)
}

fn bound_certificates(rng: &mut ChaCha8Rng, n: usize) -> Result<usize> {
    let params: Vec<ChannelParams> = (0..n)
        .map(|_| {
            let mut p = random_params(rng, 100.0);
            p.mu = p.mu.max(0.1);
            p
        })
        .collect();
    let failures = params
        .par_iter()
        .map(|&p| -> Result<usize> {
            let (d, cand) = bounds::er_bound_at(p)?;
            let physical = check_physical(&cand.cov).physical;
            let ppt = cand.min_ppt_eig >= -EPS_ROOT;
            Ok(usize::from(!(physical && ppt && d >= -1e-9)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(failures.into_iter().sum())
}

fn properties() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (n_ch, n_rate, n_bound) = (200, 200, 40);
    let ch = channel_invariants(&mut rng, n_ch)?;
    let rate = rate_monotonicity(&mut rng, n_rate)?;
    let bound = bound_certificates(&mut rng, n_bound)?;
    Ok((
        ch + rate + bound == 0,
        format!(
            "seed {SEED:#x}: channel invariants {ch}/{n_ch} failed, \
             rate monotonicity {rate}/{} failed, bound certificates {bound}/{n_bound} failed",
            2 * n_rate
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_cover_all_checks() {
        assert_eq!(criterion_count(), 9);
        assert!(run_criterion(0).is_none());
        assert!(run_criterion(10).is_none());
    }

    #[test]
    fn quick_checks_pass() {
        for id in [1, 4] {
            let r = run_criterion(id).unwrap();
            assert!(r.passed, "{r}");
        }
    }
}
