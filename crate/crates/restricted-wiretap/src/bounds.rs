//! Relative-entropy-of-entanglement upper bounds across the `AF | B` cut.
//!
//! The closest separable state is searched inside a one-parameter family of
//! Gaussian states obtained by shrinking the correlations between Bob and the
//! rest; the bound is the Gaussian relative entropy to the PPT boundary of that
//! family, maximized over the signal strength.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::channel::{build_joint_state, validate_channel, ChannelParams, A, B, F};
use crate::error::{check_range, Error, Result};
use crate::gaussian::{
    check_physical, complex_from, hermitian_eigenvalues, omega, von_neumann_entropy, williamson,
    CovarianceMatrix,
};

/// Tolerance on the PPT boundary during the separable-state search.
pub const EPS_ROOT: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;

/// Minimum eigenvalue of `V^Γ - iΩ`, with `Γ` the partial transpose on `transpose_set`.
pub fn ppt_min_eig<S: AsRef<str>>(v: &CovarianceMatrix, transpose_set: &[S]) -> Result<f64> {
    let idx = transpose_set
        .iter()
        .map(|l| v.index_of(l.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ppt_min_eig_indices(v.entries(), &idx))
}

fn ppt_min_eig_indices(v: &DMatrix<f64>, modes: &[usize]) -> f64 {
    let n = v.nrows() / 2;
    let mut t = v.clone();
    for &m in modes {
        // p -> -p on the transposed modes
        let row = n + m;
        for j in 0..2 * n {
            if j != row {
                t[(row, j)] = -t[(row, j)];
                t[(j, row)] = -t[(j, row)];
            }
        }
    }
    hermitian_eigenvalues(complex_from(&t, &omega(n)))[0]
}

/// Largest correlation `c` keeping a symmetric two-mode state separable.
pub fn closest_sep_two_mode(a: f64, b: f64) -> Result<f64> {
    check_range("a", a, a >= 1.0, "a >= 1")?;
    check_range("b", b, b >= 1.0, "b >= 1")?;
    Ok(((a - 1.0) * (b - 1.0)).sqrt())
}

/// Which correlations the separable-state search is allowed to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SeparableFamily {
    /// Scale every correlation between Bob and `{A, F}` by one factor `s ∈ [0, 1]`.
    #[default]
    CrossBlock,
    /// Replace only the `A`–`B` correlation by `c`, all other entries frozen.
    CorrelationOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparableCandidate {
    pub cov: CovarianceMatrix,
    pub family: SeparableFamily,
    /// Scale applied to the `AF`–`B` block (1 for the correlation-only family
    /// when nothing changes).
    pub scale: f64,
    /// Magnitude of the resulting `A`–`B` x-quadrature correlation.
    pub c: f64,
    pub min_ppt_eig: f64,
    /// Local reflections applied to reach the canonical sign pattern.
    pub reflections: Vec<String>,
}

/// Bisection for the largest parameter in `[lo, hi]` whose margin is at least `-EPS_ROOT`.
///
/// Returns `Ok(hi)` when the whole bracket is feasible.
fn largest_feasible(
    mut lo: f64,
    mut hi: f64,
    margin: impl Fn(f64) -> f64,
) -> std::result::Result<f64, (f64, f64)> {
    let (m_lo, m_hi) = (margin(lo), margin(hi));
    if m_hi >= -EPS_ROOT {
        return Ok(hi);
    }
    if m_lo < -EPS_ROOT {
        return Err((m_lo, m_hi));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if margin(mid) >= -EPS_ROOT {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi.max(1.0) {
            break;
        }
    }
    Ok(lo)
}

/// Closest separable candidate for a three-mode state ordered `A, B, F`.
pub fn closest_sep_three_mode(v_abf: &CovarianceMatrix) -> Result<SeparableCandidate> {
    closest_sep_three_mode_with(v_abf, SeparableFamily::default())
}

pub fn closest_sep_three_mode_with(
    v_abf: &CovarianceMatrix,
    family: SeparableFamily,
) -> Result<SeparableCandidate> {
    if v_abf.n_modes() != 3 {
        return Err(Error::Dimension(format!(
            "expected modes (A, B, F), got {:?}",
            v_abf.labels()
        )));
    }
    let report = check_physical(v_abf);
    if !report.physical {
        return Err(Error::NotPhysical {
            min_eig: report.min_eig,
        });
    }
    let (a_i, b_i, f_i) = (0, 1, 2);
    let n = 3;
    let base = v_abf.entries().clone();
    let labels = v_abf.labels().to_vec();

    let (scale, c, reflections, cov) = match family {
        SeparableFamily::CrossBlock => {
            let build = |s: f64| {
                let mut w = base.clone();
                for other in [a_i, f_i] {
                    for off in [0, n] {
                        w[(off + other, off + b_i)] *= s;
                        w[(off + b_i, off + other)] *= s;
                    }
                }
                w
            };
            let s = largest_feasible(0.0, 1.0, |s| ppt_min_eig_indices(&build(s), &[b_i]))
                .map_err(|(lo, hi)| Error::BracketFailure { lo, hi, mu: None })?;
            let w = build(s);
            (s, w[(a_i, b_i)].abs(), Vec::new(), w)
        }
        SeparableFamily::CorrelationOnly => {
            let (sx, sp) = (base[(a_i, b_i)], base[(n + a_i, n + b_i)]);
            let mut reflections = Vec::new();
            // canonical pattern: +c in x, -c in p; a π rotation of B flips both
            let flip = sx < 0.0 && sp > 0.0;
            if flip {
                reflections.push(format!("{}: x,p -> -x,-p", labels[b_i]));
            }
            let (gx, gp) = if flip { (-1.0, 1.0) } else { (1.0, -1.0) };
            let build = |c: f64| {
                let mut w = base.clone();
                w[(a_i, b_i)] = gx * c;
                w[(b_i, a_i)] = gx * c;
                w[(n + a_i, n + b_i)] = gp * c;
                w[(n + b_i, n + a_i)] = gp * c;
                w
            };
            let c_max = closest_sep_two_mode(base[(a_i, a_i)], base[(b_i, b_i)])?;
            let margin = |c: f64| {
                let w = build(c);
                ppt_min_eig_indices(&w, &[b_i]).min(crate::gaussian::uncertainty_min_eig(&w))
            };
            let c = largest_feasible(0.0, c_max, margin)
                .map_err(|(lo, hi)| Error::BracketFailure { lo, hi, mu: None })?;
            let scale = if sx.abs() > 0.0 { c / sx.abs() } else { 1.0 };
            (scale, c, reflections, build(c))
        }
    };

    let cov = CovarianceMatrix::new(cov, labels)?;
    let report = check_physical(&cov);
    if !report.physical {
        return Err(Error::NotPhysical {
            min_eig: report.min_eig,
        });
    }
    let min_ppt_eig = ppt_min_eig_indices(cov.entries(), &[b_i]);
    Ok(SeparableCandidate {
        cov,
        family,
        scale,
        c,
        min_ppt_eig,
        reflections,
    })
}

/// Quantum relative entropy `D(ρ1 || ρ2)` in bits between zero-mean Gaussian states.
///
/// Returns `+∞` when `ρ2` has a pure normal mode that `ρ1` populates.
pub fn gaussian_relative_entropy(v1: &CovarianceMatrix, v2: &CovarianceMatrix) -> Result<f64> {
    if v1.n_modes() != v2.n_modes() {
        return Err(Error::Dimension(format!(
            "relative entropy between {} and {} modes",
            v1.n_modes(),
            v2.n_modes()
        )));
    }
    let n = v1.n_modes();
    let h1 = von_neumann_entropy(v1)?;
    let w2 = williamson(v2)?;
    let w = &w2.inverse * v1.entries() * w2.inverse.transpose();
    // Tr(ρ1 log2 ρ2) with ρ2 thermal in its normal modes
    let mut cross = 0.0;
    for (k, &nu) in w2.nu.iter().enumerate() {
        let nk = (nu - 1.0).max(0.0) / 2.0;
        let occ = (w[(k, k)] + w[(n + k, n + k)]) / 4.0 - 0.5;
        if nk == 0.0 {
            if occ > 1e-10 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += -(nk.ln_1p()) / std::f64::consts::LN_2 + occ * (nk / (nk + 1.0)).log2();
    }
    Ok(-h1 - cross)
}

/// Closed-form bound for the pure-loss channel.
pub fn er_upper_bound_pure_loss(eta: f64, kappa: f64) -> Result<f64> {
    validate_channel(eta, kappa, 0.0)?;
    let eve = kappa * (1.0 - eta);
    Ok((eta + eve).log2() - eve.log2())
}

/// Geometric grid from `lo` to `hi` with `per_decade` points per factor of ten.
pub fn geometric_schedule(lo: f64, hi: f64, per_decade: usize) -> Result<Vec<f64>> {
    check_range("lo", lo, lo > 0.0, "lo > 0")?;
    check_range("hi", hi, hi >= lo, "hi >= lo")?;
    let decades = (hi / lo).log10();
    let steps = ((decades * per_decade.max(1) as f64).round() as usize).max(1);
    Ok((0..=steps)
        .map(|i| lo * 10f64.powf(decades * i as f64 / steps as f64))
        .collect())
}

/// The default signal schedule, `1 → 1e4` with three points per decade.
pub fn default_mu_schedule() -> Vec<f64> {
    geometric_schedule(1.0, 1e4, 3).expect("static schedule")
}

#[derive(Clone, Debug, PartialEq)]
pub struct UpperBound {
    /// Supremum over the schedule.
    pub value: f64,
    pub mu_at_sup: f64,
    /// Last two schedule values agree within 1e-3.
    pub converged: bool,
    pub per_mu: Vec<(f64, f64)>,
}

/// Bound at a single signal strength: `D(V_ABF || closest separable)`.
pub fn er_bound_at(params: ChannelParams) -> Result<(f64, SeparableCandidate)> {
    let state = build_joint_state(params)?;
    let v_abf = state.marginal(&[A, B, F])?;
    let cand = closest_sep_three_mode(&v_abf).map_err(|e| match e {
        Error::BracketFailure { lo, hi, .. } => Error::BracketFailure {
            lo,
            hi,
            mu: Some(params.mu),
        },
        other => other,
    })?;
    let d = gaussian_relative_entropy(&v_abf, &cand.cov)?;
    Ok((d, cand))
}

/// Numeric bound maximized over a schedule of signal strengths.
pub fn er_upper_bound_numeric(
    eta: f64,
    kappa: f64,
    n_e: f64,
    mu_schedule: &[f64],
) -> Result<UpperBound> {
    validate_channel(eta, kappa, n_e)?;
    if mu_schedule.is_empty() || mu_schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain {
            name: "mu_schedule",
            value: mu_schedule.len() as f64,
            expected: "non-empty strictly increasing grid",
        });
    }
    let per_mu = mu_schedule
        .par_iter()
        .map(|&mu| {
            let p = ChannelParams::new(eta, kappa, n_e, mu)?;
            er_bound_at(p).map(|(d, _)| (mu, d))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mu_at_sup, value) = per_mu
        .iter()
        .copied()
        .fold((f64::NAN, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let converged = match per_mu.as_slice() {
        [.., a, b] => (a.1 - b.1).abs() <= 1e-3,
        _ => false,
    };
    Ok(UpperBound {
        value,
        mu_at_sup,
        converged,
        per_mu,
    })
}

/// Closed form for pure loss, numeric bound on the default schedule otherwise.
pub fn er_upper_bound(eta: f64, kappa: f64, n_e: f64) -> Result<f64> {
    if n_e == 0.0 {
        er_upper_bound_pure_loss(eta, kappa)
    } else {
        Ok(er_upper_bound_numeric(eta, kappa, n_e, &default_mu_schedule())?.value)
    }
}
