//! Brute-force truncated Fock-space model of the wiretap wiring.
//!
//! Used as an independent check on the covariance-matrix pipeline at small
//! photon numbers. Every state here is real: the two-mode squeezed vacuum has
//! real coefficients and the beamsplitter generator `a†b - ab†` is real
//! antisymmetric, so amplitudes are stored as `f64`.

use nalgebra::{DMatrix, DVector};

use crate::channel::{self, ChannelParams};
use crate::error::{check_range, Error, Result};
use crate::gaussian::{partial_trace, von_neumann_entropy, CovarianceMatrix};

/// Largest tolerated probability outside the truncated space.
pub const LEAKAGE_GUARD: f64 = 1e-8;

/// Eigenvalues below this are treated as zero weight.
const EIG_FLOOR: f64 = 1e-14;

/// A pure state on `n_modes` modes, each truncated to photon numbers
/// `0..dim`. Mode 0 is the most significant index.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    dim: usize,
    labels: Vec<String>,
    amps: Vec<f64>,
    leakage: f64,
}

/// A density matrix over the same index layout as [`FockState`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    n_modes: usize,
    rho: DMatrix<f64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::Dimension(format!("truncation dim {dim} < 2")));
    }
    Ok(())
}

fn guard(leakage: f64) -> Result<()> {
    if leakage > LEAKAGE_GUARD {
        return Err(Error::Truncation {
            leakage,
            guard: LEAKAGE_GUARD,
        });
    }
    Ok(())
}

/// Thermal occupation probabilities `p_n`, normalized over `0..dim`, and the
/// discarded tail `(nbar / (nbar + 1))^dim`.
fn thermal_weights(nbar: f64, dim: usize) -> (Vec<f64>, f64) {
    let ratio = nbar / (nbar + 1.0);
    let tail = ratio.powi(dim as i32);
    let mut w = Vec::with_capacity(dim);
    let mut p = 1.0 / (nbar + 1.0);
    for _ in 0..dim {
        w.push(p);
        p *= ratio;
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    (w, tail)
}

impl FockState {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_modes(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    /// Probability discarded by truncation, accumulated over construction
    /// and every beamsplitter applied.
    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    fn stride(&self, mode: usize) -> usize {
        self.dim.pow((self.n_modes() - 1 - mode) as u32)
    }

    fn digit(&self, index: usize, mode: usize) -> usize {
        index / self.stride(mode) % self.dim
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownMode(label.to_string()))
    }

    pub fn relabel<S: AsRef<str>>(mut self, labels: &[S]) -> Result<Self> {
        if labels.len() != self.n_modes() {
            return Err(Error::Dimension(format!(
                "{} labels for {} modes",
                labels.len(),
                self.n_modes()
            )));
        }
        self.labels = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Ok(self)
    }

    /// Tensor product, `self` first.
    pub fn tensor(&self, other: &FockState) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("tensor of different truncations".into()));
        }
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Ok(Self {
            dim: self.dim,
            labels,
            amps,
            leakage: self.leakage + other.leakage,
        })
    }

    /// Mean photon number of one mode.
    pub fn mean_photons(&self, mode: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| a * a * self.digit(i, mode) as f64)
            .sum()
    }

    /// Amplitudes arranged with the `keep` modes (in the given order) as row
    /// index and the rest as column index.
    fn split(&self, keep: &[usize]) -> Result<DMatrix<f64>> {
        let n = self.n_modes();
        let mut seen = vec![false; n];
        for &k in keep {
            if k >= n || seen[k] {
                return Err(Error::Dimension(format!("bad mode selection {keep:?}")));
            }
            seen[k] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|m| !seen[*m]).collect();
        let rows = self.dim.pow(keep.len() as u32);
        let cols = self.dim.pow(rest.len() as u32);
        let mut m = DMatrix::zeros(rows, cols);
        for (i, &a) in self.amps.iter().enumerate() {
            let r = keep.iter().fold(0, |acc, &k| acc * self.dim + self.digit(i, k));
            let c = rest.iter().fold(0, |acc, &k| acc * self.dim + self.digit(i, k));
            m[(r, c)] = a;
        }
        Ok(m)
    }

    fn modes_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// Reduced density matrix on the named modes, in the given order.
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        let modes = self.modes_of(keep)?;
        let m = self.split(&modes)?;
        Ok(DensityMatrix {
            dim: self.dim,
            n_modes: modes.len(),
            rho: &m * m.transpose(),
        })
    }
}

impl DensityMatrix {
    pub fn from_pure(state: &FockState) -> Self {
        let v = DMatrix::from_column_slice(state.amps.len(), 1, &state.amps);
        Self {
            dim: state.dim,
            n_modes: state.n_modes(),
            rho: &v * v.transpose(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("tensor of different truncations".into()));
        }
        Ok(Self {
            dim: self.dim,
            n_modes: self.n_modes + other.n_modes,
            rho: self.rho.kronecker(&other.rho),
        })
    }
}

/// `|0...0>` on `n_modes` modes.
pub fn vacuum_fock(n_modes: usize, dim: usize) -> Result<FockState> {
    check_dim(dim)?;
    let mut amps = vec![0.0; dim.pow(n_modes as u32)];
    amps[0] = 1.0;
    Ok(FockState {
        dim,
        labels: (0..n_modes).map(|i| format!("m{i}")).collect(),
        amps,
        leakage: 0.0,
    })
}

/// Two-mode squeezed vacuum with `mu` mean photons per arm, truncated and
/// renormalized.
pub fn tmsv_fock(mu: f64, dim: usize) -> Result<FockState> {
    check_dim(dim)?;
    check_range("mu", mu, mu >= 0.0, "mu >= 0 and finite")?;
    let (w, leakage) = thermal_weights(mu, dim);
    guard(leakage)?;
    let mut amps = vec![0.0; dim * dim];
    for (n, p) in w.iter().enumerate() {
        amps[n * dim + n] = p.sqrt();
    }
    Ok(FockState {
        dim,
        labels: vec!["m0".into(), "m1".into()],
        amps,
        leakage,
    })
}

/// Truncated single-mode thermal state.
pub fn thermal_fock(nbar: f64, dim: usize) -> Result<DensityMatrix> {
    check_dim(dim)?;
    check_range("nbar", nbar, nbar >= 0.0, "nbar >= 0 and finite")?;
    let (w, leakage) = thermal_weights(nbar, dim);
    guard(leakage)?;
    Ok(DensityMatrix {
        dim,
        n_modes: 1,
        rho: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(w)),
    })
}

/// Unitary on the `n_i + n_j = total` block, basis ordered by `n_i` from
/// `lo` upwards.
fn block_unitary(theta: f64, total: usize, lo: usize, hi: usize) -> DMatrix<f64> {
    let size = hi - lo + 1;
    let mut gen = DMatrix::zeros(size, size);
    for k in lo..hi {
        // <k+1, total-k-1| a_i† a_j |k, total-k>
        let amp = (((k + 1) * (total - k)) as f64).sqrt();
        gen[(k + 1 - lo, k - lo)] = amp;
        gen[(k - lo, k + 1 - lo)] = -amp;
    }
    (gen * theta).exp()
}

/// Beamsplitter of transmissivity `t` between modes `i` and `j`:
/// `|1,0> -> sqrt(t)|1,0> - sqrt(1-t)|0,1>`.
pub fn beamsplitter_fock(t: f64, modes: (usize, usize), mut state: FockState) -> Result<FockState> {
    check_range("t", t, (0.0..=1.0).contains(&t), "0 <= t <= 1")?;
    let (i, j) = modes;
    let n = state.n_modes();
    if i >= n || j >= n || i == j {
        return Err(Error::Dimension(format!("beamsplitter modes ({i}, {j}) of {n}")));
    }
    if t == 1.0 {
        return Ok(state);
    }
    let d = state.dim;
    let theta = t.sqrt().acos();
    let (si, sj) = (state.stride(i), state.stride(j));
    let blocks: Vec<(usize, usize, DMatrix<f64>)> = (0..=2 * (d - 1))
        .map(|total| {
            let lo = total.saturating_sub(d - 1);
            let hi = total.min(d - 1);
            (lo, hi, block_unitary(theta, total, lo, hi))
        })
        .collect();
    // weight sitting in blocks the truncation cuts short
    let mut clipped = 0.0;
    let mut buf = Vec::with_capacity(d);
    for base in 0..state.amps.len() {
        if state.digit(base, i) != 0 || state.digit(base, j) != 0 {
            continue;
        }
        for (total, (lo, hi, u)) in blocks.iter().enumerate() {
            buf.clear();
            buf.extend((*lo..=*hi).map(|k| state.amps[base + k * si + (total - k) * sj]));
            if total >= d {
                clipped += buf.iter().map(|a| a * a).sum::<f64>();
            }
            for (r, k) in (*lo..=*hi).enumerate() {
                let row = u.row(r);
                state.amps[base + k * si + (total - k) * sj] =
                    row.iter().zip(&buf).map(|(x, y)| x * y).sum();
            }
        }
    }
    state.leakage += clipped;
    guard(state.leakage)?;
    Ok(state)
}

/// Eigenpairs of a positive semidefinite matrix via its SVD, which stays
/// accurate on the strongly graded spectra truncated states produce.
fn psd_eigen(m: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let svd = m.clone().svd(true, false);
    let u = svd.u.ok_or(Error::Singular("density matrix decomposition"))?;
    if svd.singular_values.iter().any(|x| !x.is_finite()) {
        return Err(Error::Singular("density matrix decomposition"));
    }
    Ok((svd.singular_values, u))
}

/// Von Neumann entropy in bits from a spectrum, with `0 log 0 = 0`.
fn spectrum_entropy(eigs: impl Iterator<Item = f64>) -> f64 {
    eigs.filter(|&p| p > EIG_FLOOR).map(|p| -p * p.log2()).sum()
}

/// Entropy of the named modes of a pure state: the squared Schmidt
/// coefficients are the reduced spectrum.
pub fn entropy_fock<S: AsRef<str>>(state: &FockState, subset: &[S]) -> Result<f64> {
    let modes = state.modes_of(subset)?;
    let m = state.split(&modes)?;
    let m = if m.nrows() <= m.ncols() { m } else { m.transpose() };
    let s = m.singular_values();
    if s.iter().any(|x| !x.is_finite()) {
        return Err(Error::Singular("Schmidt decomposition"));
    }
    Ok(spectrum_entropy(s.iter().map(|x| x * x)))
}

pub fn density_entropy(rho: &DensityMatrix) -> Result<f64> {
    let (eigs, _) = psd_eigen(&rho.rho)?;
    Ok(spectrum_entropy(eigs.iter().copied()))
}

/// `Tr rho (log rho - log sigma)` in bits. Returns `+inf` when `rho` has
/// weight outside the support of `sigma`.
pub fn relative_entropy_fock(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.rho.shape() != sigma.rho.shape() {
        return Err(Error::Dimension(format!(
            "relative entropy of {:?} against {:?}",
            rho.rho.shape(),
            sigma.rho.shape()
        )));
    }
    for m in [rho, sigma] {
        guard((1.0 - m.trace()).abs())?;
    }
    let (eigs, vecs) = psd_eigen(&sigma.rho)?;
    let weights = (vecs.transpose() * &rho.rho * &vecs).diagonal();
    let mut cross = 0.0;
    for (s, w) in eigs.iter().zip(weights.iter()) {
        if *s > 0.0 {
            cross += w * s.log2();
        } else if *w > 1e-12 {
            return Ok(f64::INFINITY);
        }
    }
    Ok(-density_entropy(rho)? - cross)
}

/// The restricted wiretap wiring built mode by mode in Fock space, labelled
/// like [`channel::build_joint_state`].
pub fn wiretap_fock(params: ChannelParams, dim: usize) -> Result<FockState> {
    params.validate()?;
    let source = tmsv_fock(params.mu, dim)?;
    let lost = vacuum_fock(1, dim)?;
    let (state, labels): (FockState, &[&str]) = if params.is_pure_loss() {
        let eve = vacuum_fock(1, dim)?;
        (
            source.tensor(&eve)?.tensor(&lost)?,
            &[channel::A, channel::B, channel::E, channel::F],
        )
    } else {
        // A, A', E', F', R: move R behind F' by building E'R then reordering
        let eve = tmsv_fock(params.n_e, dim)?;
        let raw = source.tensor(&eve)?.tensor(&lost)?;
        let reordered = reorder(&raw, &[0, 1, 2, 4, 3])?;
        (
            reordered,
            &[channel::A, channel::B, channel::E, channel::F, channel::R],
        )
    };
    let state = beamsplitter_fock(params.eta, (1, 2), state)?;
    let state = beamsplitter_fock(params.kappa, (2, 3), state)?;
    state.relabel(labels)
}

/// Permutes modes so that new mode `k` is old mode `order[k]`.
fn reorder(state: &FockState, order: &[usize]) -> Result<FockState> {
    let m = state.split(order)?;
    Ok(FockState {
        dim: state.dim,
        labels: order.iter().map(|&k| state.labels[k].clone()).collect(),
        amps: m.column(0).iter().copied().collect(),
        leakage: state.leakage,
    })
}

/// One compared quantity: Fock value against the covariance-matrix value.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub quantity: String,
    pub fock: f64,
    pub gaussian: f64,
}

impl Comparison {
    pub fn error(&self) -> f64 {
        (self.fock - self.gaussian).abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub params: ChannelParams,
    pub dim: usize,
    pub leakage: f64,
    pub entropies: Vec<Comparison>,
    pub relative_entropies: Vec<Comparison>,
}

impl CrossCheck {
    pub fn max_entropy_error(&self) -> f64 {
        self.entropies.iter().map(Comparison::error).fold(0.0, f64::max)
    }

    pub fn max_relative_entropy_error(&self) -> f64 {
        self.relative_entropies
            .iter()
            .map(Comparison::error)
            .fold(0.0, f64::max)
    }

    pub fn max_error(&self) -> f64 {
        self.max_entropy_error().max(self.max_relative_entropy_error())
    }
}

fn gaussian_product(a: &CovarianceMatrix, b: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    a.direct_sum(b)?.relabel(&[channel::A, channel::B])
}

/// Compares every marginal entropy of the wiring, and the relative entropies
/// `D(AB || A x B)` and `D(B || E)`, against the covariance-matrix pipeline.
pub fn cross_check(params: ChannelParams, dim: usize) -> Result<CrossCheck> {
    let fock = wiretap_fock(params, dim)?;
    let gauss = channel::build_joint_state(params)?;
    let labels: Vec<String> = fock.labels().to_vec();
    let n = labels.len();

    let mut entropies = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let subset: Vec<&str> = (0..n)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| labels[k].as_str())
            .collect();
        entropies.push(Comparison {
            quantity: format!("S({})", subset.concat()),
            fock: entropy_fock(&fock, &subset)?,
            gaussian: von_neumann_entropy(&gauss.marginal(&subset)?)?,
        });
    }

    let (a, b, e) = (channel::A, channel::B, channel::E);
    let rho_ab = fock.reduced(&[a, b])?;
    let rho_a = fock.reduced(&[a])?;
    let rho_b = fock.reduced(&[b])?;
    let rho_e = fock.reduced(&[e])?;
    let v_ab = gauss.marginal(&[a, b])?;
    let v_a = partial_trace(&v_ab, &[a])?;
    let v_b = partial_trace(&v_ab, &[b])?;
    let v_e = gauss.marginal(&[e])?;
    let relative_entropies = vec![
        Comparison {
            quantity: "D(AB||A x B)".into(),
            fock: relative_entropy_fock(&rho_ab, &rho_a.tensor(&rho_b)?)?,
            gaussian: crate::bounds::gaussian_relative_entropy(
                &v_ab,
                &gaussian_product(&v_a, &v_b)?,
            )?,
        },
        Comparison {
            quantity: "D(B||E)".into(),
            fock: relative_entropy_fock(&rho_b, &rho_e)?,
            gaussian: crate::bounds::gaussian_relative_entropy(&v_b, &v_e)?,
        },
    ];

    Ok(CrossCheck {
        params,
        dim,
        leakage: fock.leakage(),
        entropies,
        relative_entropies,
    })
}
