//! Asymptotic decoy-state BB84 key rates against photon-number-splitting
//! attacks, for an unrestricted Eve and for one that only sees a fraction
//! `eta_e` of Alice's light.

use crate::error::{check_range, Error, Result};

pub mod monte_carlo;

/// Physical-layer parameters of a decoy-state BB84 link.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bb84Params {
    /// Pulse rate in pulses per second.
    pub rate: f64,
    /// Overall Alice-to-Bob transmissivity including detector efficiency.
    pub eta: f64,
    /// Alice-to-Eve transmissivity.
    pub eta_e: f64,
    /// Mean dark counts per detector per pulse interval.
    pub n_d: f64,
    /// Reconciliation penalty.
    pub f_l: f64,
    /// Mean photon number of a signal pulse.
    pub mu: f64,
}

impl Bb84Params {
    pub fn new(rate: f64, eta: f64, eta_e: f64, n_d: f64, f_l: f64, mu: f64) -> Result<Self> {
        let p = Self {
            rate,
            eta,
            eta_e,
            n_d,
            f_l,
            mu,
        };
        p.validate()?;
        Ok(p)
    }

    /// The reference link: 1 Gpulse/s, `eta = 0.005`, `n_d = 1e-4`, `f_L = 1.1`,
    /// with Eve collecting a fraction `kappa` of the lost light.
    pub fn reference(kappa: f64, mu: f64) -> Result<Self> {
        let eta = 0.005;
        Self::new(1e9, eta, eve_transmissivity(kappa, eta, 1.0)?, 1e-4, 1.1, mu)
    }

    pub fn validate(&self) -> Result<()> {
        check_range("rate", self.rate, self.rate > 0.0, "rate > 0")?;
        check_range("eta", self.eta, self.eta > 0.0 && self.eta <= 1.0, "0 < eta <= 1")?;
        check_range(
            "eta_e",
            self.eta_e,
            (0.0..1.0).contains(&self.eta_e),
            "0 <= eta_e < 1",
        )?;
        check_range("n_d", self.n_d, self.n_d >= 0.0, "n_d >= 0")?;
        check_range("f_l", self.f_l, self.f_l >= 1.0, "f_l >= 1")?;
        check_range("mu", self.mu, self.mu >= 0.0, "mu >= 0 and finite")
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }
}

/// Eve's share `kappa (1 - eta_c)` of the channel loss, with `eta_c = eta / eta_q`.
pub fn eve_transmissivity(kappa: f64, eta: f64, eta_q: f64) -> Result<f64> {
    check_range("kappa", kappa, kappa > 0.0 && kappa <= 1.0, "0 < kappa <= 1")?;
    check_range("eta_q", eta_q, eta_q > 0.0 && eta_q <= 1.0, "0 < eta_q <= 1")?;
    let eta_c = eta / eta_q;
    check_range("eta_c", eta_c, eta_c > 0.0 && eta_c < 1.0, "0 < eta / eta_q < 1")?;
    Ok(kappa * (1.0 - eta_c))
}

/// Binary entropy in bits; zero at both endpoints.
pub fn h2(p: f64) -> Result<f64> {
    check_range("p", p, (0.0..=1.0).contains(&p), "0 <= p <= 1")?;
    Ok(binary_entropy(p))
}

fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// `1 - e^{-x}` without cancellation.
fn one_minus_exp(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// Probability of exactly one click in a matching-basis interval.
pub fn p_sift(p: &Bb84Params) -> f64 {
    let signal = p.eta * p.mu + p.n_d;
    one_minus_exp(signal) * (-p.n_d).exp() + (-signal).exp() * one_minus_exp(p.n_d)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionalProbs {
    /// Alice sent vacuum, given a sift event.
    pub a0_given_b1: f64,
    /// Alice sent one photon, given a sift event.
    pub a1_given_b1: f64,
    /// Wrong-detector click, given a single photon and a sift event.
    pub be_given_a1b1: f64,
    /// Wrong-detector click, given a sift event (the QBER).
    pub be: f64,
}

/// Joint probabilities of the vacuum and single-photon sift events.
pub fn joint_probs(p: &Bb84Params) -> (f64, f64) {
    let dark = one_minus_exp(p.n_d);
    let quiet = (-p.n_d).exp();
    let a0b1 = 2.0 * (-p.mu).exp() * quiet * dark;
    let single = p.eta * quiet * quiet + (2.0 - p.eta) * quiet * dark;
    let a1b1 = p.mu * (-p.mu).exp() * single;
    (a0b1, a1b1)
}

pub fn conditional_probs(p: &Bb84Params) -> Result<ConditionalProbs> {
    p.validate()?;
    let b1 = p_sift(p);
    if b1 <= 0.0 {
        return Err(Error::NoSiftEvents);
    }
    let dark = one_minus_exp(p.n_d);
    let quiet = (-p.n_d).exp();
    let (a0b1, a1b1) = joint_probs(p);
    let single = p.eta * quiet * quiet + (2.0 - p.eta) * quiet * dark;
    Ok(ConditionalProbs {
        a0_given_b1: a0b1 / b1,
        a1_given_b1: a1b1 / b1,
        be_given_a1b1: (1.0 - p.eta) * quiet * dark / single,
        be: (-(p.eta * p.mu + p.n_d)).exp() * dark / b1,
    })
}

/// Unclamped unrestricted-Eve rate in bits per second.
pub fn skr_unrestricted_raw(p: &Bb84Params) -> Result<f64> {
    p.validate()?;
    let b1 = p_sift(p);
    if b1 <= 0.0 {
        return Ok(0.0);
    }
    let c = conditional_probs(p)?;
    let per_sift = c.a0_given_b1 - p.f_l * binary_entropy(c.be)
        + c.a1_given_b1 * (1.0 - binary_entropy(c.be_given_a1b1));
    Ok(p.rate * b1 * per_sift / 2.0)
}

/// Unclamped restricted-Eve rate in bits per second.
pub fn skr_restricted_raw(p: &Bb84Params) -> Result<f64> {
    p.validate()?;
    let b1 = p_sift(p);
    if b1 <= 0.0 {
        return Ok(0.0);
    }
    let c = conditional_probs(p)?;
    let eve_blind = (-p.eta_e * p.mu).exp();
    Ok(p.rate * b1 * (eve_blind - p.f_l * binary_entropy(c.be)) / 2.0)
}

pub fn skr_unrestricted(p: &Bb84Params) -> Result<f64> {
    Ok(skr_unrestricted_raw(p)?.max(0.0))
}

pub fn skr_restricted(p: &Bb84Params) -> Result<f64> {
    Ok(skr_restricted_raw(p)?.max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Eve {
    Unrestricted,
    Restricted,
}

impl Eve {
    pub fn raw_rate(self, p: &Bb84Params) -> Result<f64> {
        match self {
            Eve::Unrestricted => skr_unrestricted_raw(p),
            Eve::Restricted => skr_restricted_raw(p),
        }
    }

    pub fn rate(self, p: &Bb84Params) -> Result<f64> {
        Ok(self.raw_rate(p)?.max(0.0))
    }
}

/// Bracket and resolution of the signal-strength search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MuSearch {
    pub lo: f64,
    pub hi: f64,
    /// Points of the coarse logarithmic scan.
    pub coarse_points: usize,
}

impl Default for MuSearch {
    fn default() -> Self {
        Self {
            lo: 1e-3,
            hi: 10.0,
            coarse_points: 81,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MuOptimum {
    pub mu: f64,
    pub skr: f64,
    /// The rate is zero over the whole bracket.
    pub flat: bool,
    /// The refined maximum sits on an end of the bracket, so the true
    /// optimum may lie outside it.
    pub at_boundary: bool,
    /// Best point of the coarse scan.
    pub coarse_mu: f64,
    pub coarse_skr: f64,
    /// Ratio between neighbouring coarse grid points.
    pub grid_ratio: f64,
}

/// Maximizes the key rate over `mu` (the `mu` in `p` is ignored).
pub fn optimize_mu(p: &Bb84Params, eve: Eve, search: MuSearch) -> Result<MuOptimum> {
    check_range("lo", search.lo, search.lo > 0.0, "lo > 0")?;
    check_range("hi", search.hi, search.hi > search.lo, "hi > lo")?;
    let n = search.coarse_points.max(3);
    let (llo, lhi) = (search.lo.ln(), search.hi.ln());
    let step = (lhi - llo) / (n - 1) as f64;
    let eval = |lmu: f64| eve.raw_rate(&p.with_mu(lmu.exp()));
    let grid: Vec<f64> = (0..n).map(|i| llo + step * i as f64).collect();
    let vals = grid.iter().map(|&l| eval(l)).collect::<Result<Vec<_>>>()?;
    let best = (0..n).fold(0, |b, i| if vals[i] > vals[b] { i } else { b });
    let grid_ratio = step.exp();
    if vals[best] <= 0.0 {
        return Ok(MuOptimum {
            mu: search.lo,
            skr: 0.0,
            flat: true,
            at_boundary: false,
            coarse_mu: search.lo,
            coarse_skr: 0.0,
            grid_ratio,
        });
    }
    let (mut a, mut b) = (grid[best.saturating_sub(1)], grid[(best + 1).min(n - 1)]);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (eval(x1)?, eval(x2)?);
    for _ in 0..200 {
        if b - a < 1e-12 {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = eval(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = eval(x1)?;
        }
    }
    let (mut lmu, mut skr) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    if vals[best] > skr {
        lmu = grid[best];
        skr = vals[best];
    }
    let at_boundary = (lmu - llo).abs() < 1e-6 || (lhi - lmu).abs() < 1e-6;
    Ok(MuOptimum {
        mu: lmu.exp(),
        skr: skr.max(0.0),
        flat: false,
        at_boundary,
        coarse_mu: grid[best].exp(),
        coarse_skr: vals[best].max(0.0),
        grid_ratio,
    })
}
