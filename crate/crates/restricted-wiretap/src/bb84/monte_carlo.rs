//! Pulse-by-pulse simulation of the link, used to check the closed-form
//! detection probabilities.
//!
//! Each pulse draws a Poisson photon number, routes every photon to the
//! correct detector with probability `eta`, and adds independent dark clicks
//! to both detectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use super::Bb84Params;
use crate::error::Result;

const CHUNK: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PulseTally {
    pub pulses: u64,
    pub sift: u64,
    pub sift_error: u64,
    pub vacuum_sift: u64,
    pub single_sift: u64,
    pub single_sift_error: u64,
}

impl PulseTally {
    fn merge(self, o: Self) -> Self {
        Self {
            pulses: self.pulses + o.pulses,
            sift: self.sift + o.sift,
            sift_error: self.sift_error + o.sift_error,
            vacuum_sift: self.vacuum_sift + o.vacuum_sift,
            single_sift: self.single_sift + o.single_sift,
            single_sift_error: self.single_sift_error + o.single_sift_error,
        }
    }
}

/// A frequency estimate with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_err: f64,
}

impl Estimate {
    fn from_counts(hits: u64, trials: u64) -> Self {
        if trials == 0 {
            return Self {
                value: f64::NAN,
                std_err: f64::NAN,
            };
        }
        let p = hits as f64 / trials as f64;
        Self {
            value: p,
            std_err: (p * (1.0 - p) / trials as f64).sqrt(),
        }
    }

    /// `|value - expected|` in units of the standard error.
    pub fn sigmas_from(&self, expected: f64) -> f64 {
        let d = (self.value - expected).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_err
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseEstimates {
    pub tally: PulseTally,
    pub p_b1: Estimate,
    pub p_be: Estimate,
    pub p_a0b1: Estimate,
    pub p_a1b1: Estimate,
    pub p_be_given_a1b1: Estimate,
}

fn run_chunk(p: &Bb84Params, pulses: u64, seed: u64, stream: u64) -> Result<PulseTally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let poisson = if p.mu > 0.0 {
        Some(Poisson::new(p.mu).map_err(|e| crate::Error::Spec(e.to_string()))?)
    } else {
        None
    };
    let p_dark = -(-p.n_d).exp_m1();
    let mut t = PulseTally {
        pulses,
        ..Default::default()
    };
    for _ in 0..pulses {
        let n = poisson.as_ref().map_or(0, |d| d.sample(&mut rng) as u64);
        let arrived = (0..n).any(|_| rng.random::<f64>() < p.eta);
        let right = arrived | (rng.random::<f64>() < p_dark);
        let wrong = rng.random::<f64>() < p_dark;
        if right != wrong {
            t.sift += 1;
            t.sift_error += wrong as u64;
            match n {
                0 => t.vacuum_sift += 1,
                1 => {
                    t.single_sift += 1;
                    t.single_sift_error += wrong as u64;
                }
                _ => {}
            }
        }
    }
    Ok(t)
}

/// Simulates `pulses` matching-basis pulses with a fixed seed.
pub fn simulate(p: &Bb84Params, pulses: u64, seed: u64) -> Result<PulseEstimates> {
    p.validate()?;
    let chunks = pulses.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n = CHUNK.min(pulses - c * CHUNK);
            run_chunk(p, n, seed, c)
        })
        .try_reduce(PulseTally::default, |a, b| Ok(a.merge(b)))?;
    Ok(PulseEstimates {
        tally,
        p_b1: Estimate::from_counts(tally.sift, tally.pulses),
        p_be: Estimate::from_counts(tally.sift_error, tally.sift),
        p_a0b1: Estimate::from_counts(tally.vacuum_sift, tally.pulses),
        p_a1b1: Estimate::from_counts(tally.single_sift, tally.pulses),
        p_be_given_a1b1: Estimate::from_counts(tally.single_sift_error, tally.single_sift),
    })
}
