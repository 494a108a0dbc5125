//! Covariance-matrix calculus for zero-mean Gaussian states.
//!
//! Conventions: quadratures are ordered `(x_1..x_N, p_1..p_N)`, the vacuum
//! covariance matrix is the identity, and a thermal state with mean photon
//! number `n` has covariance `(2n + 1) I`.

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{check_range, Error, Result};

/// Tolerance on the minimum eigenvalue of `V - iΩ`.
pub const EPS_PHYS: f64 = 1e-9;
/// Tolerance on `S Ω Sᵀ - Ω`.
pub const EPS_SYM: f64 = 1e-10;

type CMat = DMatrix<Complex<f64>>;

/// von Neumann entropy in bits of a thermal state with mean photon number `x`.
pub fn g_entropy(x: f64) -> Result<f64> {
    check_range("x", x, x >= 0.0, "x >= 0")?;
    Ok(g(x))
}

/// Infallible `g` used internally; arguments within round-off of zero map to 0.
pub(crate) fn g(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    // log2(x+1) + x log2(1 + 1/x) avoids cancellation for large x.
    (x.ln_1p() + x * (1.0 / x).ln_1p()) / std::f64::consts::LN_2
}

/// The symplectic form for `n` modes in xxpp ordering.
pub fn omega(n: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        o[(k, n + k)] = 1.0;
        o[(n + k, k)] = -1.0;
    }
    o
}

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    entries: DMatrix<f64>,
    labels: Vec<String>,
}

impl CovarianceMatrix {
    /// Builds a covariance matrix, symmetrizing the input.
    pub fn new(entries: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r % 2 != 0 || r == 0 {
            return Err(Error::Dimension(format!(
                "covariance matrix must be 2N x 2N, got {r} x {c}"
            )));
        }
        if labels.len() != r / 2 {
            return Err(Error::Dimension(format!(
                "{} labels for {} modes",
                labels.len(),
                r / 2
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Dimension(format!("duplicate mode label `{l}`")));
            }
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Dimension("non-finite covariance entry".into()));
        }
        let entries = (&entries + entries.transpose()) * 0.5;
        Ok(Self { entries, labels })
    }

    /// Builds a covariance matrix with default labels `m0, m1, ...`.
    pub fn from_matrix(entries: DMatrix<f64>) -> Result<Self> {
        let n = entries.nrows() / 2;
        Self::new(entries, default_labels(n))
    }

    pub fn n_modes(&self) -> usize {
        self.labels.len()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
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
        Self::new(self.entries, self.labels)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownMode(label.to_string()))
    }

    /// Block-diagonal combination; labels of `other` follow those of `self`.
    /// Colliding labels are replaced by the defaults `m0, m1, ...`.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> Result<Self> {
        let (n1, n2) = (self.n_modes(), other.n_modes());
        let n = n1 + n2;
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for (src, off) in [(self, 0usize), (other, n1)] {
            let k = src.n_modes();
            for i in 0..2 * k {
                for j in 0..2 * k {
                    let (ri, qi) = (i / k, i % k);
                    let (rj, qj) = (j / k, j % k);
                    m[(ri * n + off + qi, rj * n + off + qj)] = src.entries[(i, j)];
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        if other.labels.iter().any(|l| self.labels.contains(l)) {
            labels = default_labels(n);
        }
        Self::new(m, labels)
    }

    /// Principal submatrix on the given mode indices, in the given order.
    pub fn select(&self, modes: &[usize]) -> Result<Self> {
        let n = self.n_modes();
        if modes.is_empty() {
            return Err(Error::Dimension("empty mode selection".into()));
        }
        for (i, &m) in modes.iter().enumerate() {
            if m >= n || modes[..i].contains(&m) {
                return Err(Error::Dimension(format!("bad mode index {m}")));
            }
        }
        let idx = quadrature_indices(modes, n);
        let k = idx.len();
        let m = DMatrix::from_fn(k, k, |i, j| self.entries[(idx[i], idx[j])]);
        let labels = modes.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(Self { entries: m, labels })
    }

    /// Mean photon number of one mode.
    pub fn mean_photons(&self, mode: usize) -> f64 {
        let n = self.n_modes();
        (self.entries[(mode, mode)] + self.entries[(n + mode, n + mode)] - 2.0) / 4.0
    }

    pub fn total_mean_photons(&self) -> f64 {
        (0..self.n_modes()).map(|k| self.mean_photons(k)).sum()
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("m{k}")).collect()
}

/// Rows of the x and p quadratures of `modes` within an `n`-mode matrix.
pub(crate) fn quadrature_indices(modes: &[usize], n: usize) -> Vec<usize> {
    modes
        .iter()
        .copied()
        .chain(modes.iter().map(|&m| n + m))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticMatrix {
    entries: DMatrix<f64>,
}

impl SymplecticMatrix {
    /// Wraps a matrix after checking `S Ω Sᵀ = Ω` within [`EPS_SYM`].
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r % 2 != 0 {
            return Err(Error::Dimension(format!("symplectic matrix {r} x {c}")));
        }
        let s = Self { entries };
        let dev = s.symplectic_defect();
        if dev > EPS_SYM {
            return Err(Error::Dimension(format!(
                "matrix is not symplectic (defect {dev:.3e})"
            )));
        }
        Ok(s)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: DMatrix::identity(2 * n, 2 * n),
        }
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn n_modes(&self) -> usize {
        self.entries.nrows() / 2
    }

    /// Largest entry of `|S Ω Sᵀ - Ω|`.
    pub fn symplectic_defect(&self) -> f64 {
        let o = omega(self.n_modes());
        (&self.entries * &o * self.entries.transpose() - o).amax()
    }

    /// Composition applying `self` first, then `next`.
    pub fn then(&self, next: &SymplecticMatrix) -> Self {
        Self {
            entries: &next.entries * &self.entries,
        }
    }
}

/// Vacuum on `n` modes.
pub fn vacuum_cov(n: usize) -> Result<CovarianceMatrix> {
    if n == 0 {
        return Err(Error::Dimension("vacuum needs at least one mode".into()));
    }
    CovarianceMatrix::from_matrix(DMatrix::identity(2 * n, 2 * n))
}

/// Single-mode thermal state.
pub fn thermal_cov(nbar: f64) -> Result<CovarianceMatrix> {
    check_range("nbar", nbar, nbar >= 0.0, "nbar >= 0")?;
    CovarianceMatrix::from_matrix(DMatrix::identity(2, 2) * (2.0 * nbar + 1.0))
}

/// Two-mode squeezed vacuum with `mu` mean photons per arm.
pub fn tmsv_cov(mu: f64) -> Result<CovarianceMatrix> {
    check_range("mu", mu, mu >= 0.0, "mu >= 0")?;
    let d = 2.0 * mu + 1.0;
    let c = 2.0 * (mu * (mu + 1.0)).sqrt();
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        d, c, 0.0, 0.0,
        c, d, 0.0, 0.0,
        0.0, 0.0, d, -c,
        0.0, 0.0, -c, d,
    ]);
    CovarianceMatrix::from_matrix(m)
}

/// Beamsplitter of transmissivity `t` between modes `i` and `j` of an `n`-mode system.
///
/// Output `i` is `√t·i + √(1-t)·j`, output `j` is `-√(1-t)·i + √t·j`, in both
/// quadrature sectors.
pub fn beamsplitter(t: f64, i: usize, j: usize, n: usize) -> Result<SymplecticMatrix> {
    check_range("t", t, (0.0..=1.0).contains(&t), "0 <= t <= 1")?;
    if i == j || i >= n || j >= n {
        return Err(Error::Dimension(format!(
            "beamsplitter modes ({i}, {j}) on {n} modes"
        )));
    }
    let (a, b) = (t.sqrt(), (1.0 - t).sqrt());
    let mut s = DMatrix::identity(2 * n, 2 * n);
    for off in [0, n] {
        s[(off + i, off + i)] = a;
        s[(off + i, off + j)] = b;
        s[(off + j, off + i)] = -b;
        s[(off + j, off + j)] = a;
    }
    Ok(SymplecticMatrix { entries: s })
}

/// `S V Sᵀ`, symmetrized.
pub fn apply_symplectic(s: &SymplecticMatrix, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    if s.entries.nrows() != v.entries.nrows() {
        return Err(Error::Dimension(format!(
            "symplectic of {} modes on state of {} modes",
            s.n_modes(),
            v.n_modes()
        )));
    }
    let out = &s.entries * &v.entries * s.entries.transpose();
    CovarianceMatrix::new(out, v.labels.clone())
}

/// Reduced state on the labelled modes, in the order given.
pub fn partial_trace<S: AsRef<str>>(v: &CovarianceMatrix, keep: &[S]) -> Result<CovarianceMatrix> {
    let idx = keep
        .iter()
        .map(|l| v.index_of(l.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    v.select(&idx)
}

/// Eigenvalues (ascending) of a Hermitian matrix.
pub(crate) fn hermitian_eigenvalues(h: CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `re - i·im` as a complex matrix.
pub(crate) fn complex_from(re: &DMatrix<f64>, im: &DMatrix<f64>) -> CMat {
    DMatrix::from_fn(re.nrows(), re.ncols(), |i, j| {
        Complex::new(re[(i, j)], -im[(i, j)])
    })
}

/// Minimum eigenvalue of the Hermitian matrix `V - iΩ`.
pub fn uncertainty_min_eig(v: &DMatrix<f64>) -> f64 {
    let n = v.nrows() / 2;
    hermitian_eigenvalues(complex_from(v, &omega(n)))[0]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalityReport {
    pub physical: bool,
    pub min_eig: f64,
}

/// Checks `V - iΩ ≥ -EPS_PHYS`.
pub fn check_physical(v: &CovarianceMatrix) -> PhysicalityReport {
    let min_eig = uncertainty_min_eig(&v.entries);
    PhysicalityReport {
        physical: min_eig >= -EPS_PHYS,
        min_eig,
    }
}

fn require_physical(v: &CovarianceMatrix) -> Result<()> {
    let r = check_physical(v);
    if r.physical {
        Ok(())
    } else {
        Err(Error::NotPhysical { min_eig: r.min_eig })
    }
}

/// Cholesky factor `L` (with `V = L Lᵀ`) and its inverse.
///
/// `Lᵀ Ω L` is similar to `Ω V` and is far better conditioned to build than
/// `V^{1/2} Ω V^{1/2}` when `V` is strongly squeezed.
fn factor(v: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let l = nalgebra::Cholesky::new(v.clone())
        .ok_or(Error::Singular("Cholesky factorization"))?
        .l();
    let n = l.nrows();
    let l_inv = l
        .solve_lower_triangular(&DMatrix::identity(n, n))
        .ok_or(Error::Singular("Cholesky factorization"))?;
    Ok((l, l_inv))
}

/// `Lᵀ Ω L`: real antisymmetric with spectrum `±iν`.
fn scaled_form(v: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)> {
    let (l, l_inv) = factor(v)?;
    let k = l.transpose() * omega(v.nrows() / 2) * &l;
    Ok((k, l, l_inv))
}

fn clamp_nu(nu: f64) -> f64 {
    nu.max(1.0)
}

/// Symplectic eigenvalues, ascending, one per mode.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<Vec<f64>> {
    require_physical(v)?;
    let n = v.n_modes();
    let (k, _, _) = scaled_form(&v.entries)?;
    // i·K is Hermitian with eigenvalues ±ν.
    let ik = DMatrix::from_fn(2 * n, 2 * n, |i, j| Complex::new(0.0, k[(i, j)]));
    let ev = hermitian_eigenvalues(ik);
    Ok(ev[n..].iter().map(|&nu| clamp_nu(nu)).collect())
}

/// von Neumann entropy in bits.
pub fn von_neumann_entropy(v: &CovarianceMatrix) -> Result<f64> {
    Ok(symplectic_eigenvalues(v)?
        .into_iter()
        .map(|nu| g((nu - 1.0) / 2.0))
        .sum())
}

/// Normal-mode decomposition `V = S diag(ν, ν) Sᵀ`.
#[derive(Clone, Debug)]
pub struct Williamson {
    /// Symplectic eigenvalue of each normal mode (not sorted).
    pub nu: Vec<f64>,
    pub symplectic: DMatrix<f64>,
    pub inverse: DMatrix<f64>,
}

pub fn williamson(v: &CovarianceMatrix) -> Result<Williamson> {
    require_physical(v)?;
    let n = v.n_modes();
    let (k, l, l_inv) = scaled_form(&v.entries)?;
    let ik = DMatrix::from_fn(2 * n, 2 * n, |i, j| Complex::new(0.0, k[(i, j)]));
    let eig = SymmetricEigen::new(ik);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut o = DMatrix::zeros(2 * n, 2 * n);
    let mut nu = Vec::with_capacity(n);
    let r2 = std::f64::consts::SQRT_2;
    for (slot, &col) in order[..n].iter().enumerate() {
        let u = eig.eigenvectors.column(col);
        for r in 0..2 * n {
            o[(r, slot)] = r2 * u[r].re;
            o[(r, n + slot)] = -r2 * u[r].im;
        }
        nu.push(eig.eigenvalues[col]);
    }
    let t = o.transpose() * &k * &o;
    for slot in 0..n {
        if t[(slot, n + slot)] < 0.0 {
            for r in 0..2 * n {
                o[(r, n + slot)] = -o[(r, n + slot)];
            }
        }
    }
    let d_half = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i == j {
            nu[i % n].sqrt()
        } else {
            0.0
        }
    });
    let d_half_inv = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i == j {
            1.0 / nu[i % n].sqrt()
        } else {
            0.0
        }
    });
    let symplectic = &l * &o * d_half_inv;
    let inverse = d_half * o.transpose() * &l_inv;
    Ok(Williamson {
        nu: nu.into_iter().map(clamp_nu).collect(),
        symplectic,
        inverse,
    })
}

/// Conditional state of the other modes after heterodyning `mode`.
pub fn heterodyne_condition(v: &CovarianceMatrix, mode: &str) -> Result<CovarianceMatrix> {
    let m = v.index_of(mode)?;
    heterodyne_condition_index(v, m)
}

pub fn heterodyne_condition_index(v: &CovarianceMatrix, m: usize) -> Result<CovarianceMatrix> {
    let n = v.n_modes();
    if m >= n {
        return Err(Error::Dimension(format!("mode {m} of {n}")));
    }
    if n == 1 {
        return Err(Error::Dimension(
            "heterodyne conditioning needs at least two modes".into(),
        ));
    }
    let rest: Vec<usize> = (0..n).filter(|&k| k != m).collect();
    let ri = quadrature_indices(&rest, n);
    let mi = [m, n + m];
    let e = &v.entries;
    let vr = DMatrix::from_fn(ri.len(), ri.len(), |i, j| e[(ri[i], ri[j])]);
    let c = DMatrix::from_fn(ri.len(), 2, |i, j| e[(ri[i], mi[j])]);
    let vm = DMatrix::from_fn(2, 2, |i, j| e[(mi[i], mi[j])]) + DMatrix::identity(2, 2);
    let inv = vm
        .try_inverse()
        .ok_or(Error::Singular("heterodyne conditioning"))?;
    let cond = vr - &c * inv * c.transpose();
    let labels = rest.iter().map(|&k| v.labels[k].clone()).collect();
    CovarianceMatrix::new(cond, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn g_values() {
        assert_eq!(g_entropy(0.0).unwrap(), 0.0);
        assert!(close(g_entropy(1.0).unwrap(), 2.0, 1e-14));
        assert!(close(g_entropy(0.5).unwrap(), 1.377443751081734, 1e-12));
        assert!(g_entropy(-0.1).is_err());
        // large-argument form agrees with the textbook expression
        let x: f64 = 1234.5;
        let direct = (x + 1.0) * (x + 1.0).log2() - x * x.log2();
        assert!(close(g(x), direct, 1e-9));
    }

    #[test]
    fn constructors() {
        assert_eq!(vacuum_cov(3).unwrap().entries(), &DMatrix::identity(6, 6));
        assert!(vacuum_cov(0).is_err());
        assert_eq!(thermal_cov(0.5).unwrap().entries(), &(DMatrix::identity(2, 2) * 2.0));
        let t = tmsv_cov(1.0).unwrap();
        assert!(close(t.entries()[(0, 1)], 2.0 * 2f64.sqrt(), 1e-15));
        assert!(close(t.entries()[(2, 3)], -2.0 * 2f64.sqrt(), 1e-15));
        assert!(tmsv_cov(-1.0).is_err());
    }

    #[test]
    fn symplectic_spectra() {
        let nu = symplectic_eigenvalues(&vacuum_cov(2).unwrap()).unwrap();
        assert!(nu.iter().all(|&x| close(x, 1.0, 1e-12)));
        let nu = symplectic_eigenvalues(&thermal_cov(1.0).unwrap()).unwrap();
        assert!(close(nu[0], 3.0, 1e-12));
        for mu in [0.1, 1.0, 100.0, 1e6] {
            let nu = symplectic_eigenvalues(&tmsv_cov(mu).unwrap()).unwrap();
            assert!(nu.iter().all(|&x| close(x, 1.0, 1e-9)), "{mu}: {nu:?}");
        }
    }

    #[test]
    fn entropies() {
        assert!(close(von_neumann_entropy(&thermal_cov(1.0).unwrap()).unwrap(), 2.0, 1e-12));
        let t = tmsv_cov(0.7).unwrap();
        assert!(von_neumann_entropy(&t).unwrap().abs() < 1e-9);
        let a = partial_trace(&t, &["m0"]).unwrap();
        assert!(close(a.entries()[(0, 0)], 2.4, 1e-12));
        assert!(close(von_neumann_entropy(&a).unwrap(), g(0.7), 1e-10));
    }

    #[test]
    fn beamsplitter_limits() {
        assert_eq!(beamsplitter(1.0, 0, 1, 2).unwrap(), SymplecticMatrix::identity(2));
        let swap = beamsplitter(0.0, 0, 1, 2).unwrap();
        let v = thermal_cov(1.0).unwrap().direct_sum(&vacuum_cov(1).unwrap()).unwrap();
        let out = apply_symplectic(&swap, &v).unwrap();
        assert!(close(out.mean_photons(0), 0.0, 1e-14));
        assert!(close(out.mean_photons(1), 1.0, 1e-14));
        assert!(beamsplitter(1.5, 0, 1, 2).is_err());
        assert!(beamsplitter(0.5, 1, 1, 2).is_err());
        assert!(beamsplitter(0.3, 0, 1, 2).unwrap().symplectic_defect() < 1e-14);
    }

    #[test]
    fn balanced_mixing_of_identical_thermals() {
        let th = thermal_cov(0.8).unwrap();
        let v = th.direct_sum(&th).unwrap();
        let out = apply_symplectic(&beamsplitter(0.5, 0, 1, 2).unwrap(), &v).unwrap();
        assert!((out.entries() - v.entries()).amax() < 1e-14);
    }

    #[test]
    fn loss_reduces_to_g_eta_mu() {
        let (eta, mu) = (0.35, 2.0);
        let v = tmsv_cov(mu).unwrap().direct_sum(&vacuum_cov(1).unwrap()).unwrap();
        let out = apply_symplectic(&beamsplitter(eta, 1, 2, 3).unwrap(), &v).unwrap();
        let b = out.select(&[1]).unwrap();
        assert!(close(von_neumann_entropy(&b).unwrap(), g(eta * mu), 1e-10));
    }

    #[test]
    fn heterodyne_on_tmsv_gives_coherent_state() {
        let c = heterodyne_condition(&tmsv_cov(3.0).unwrap(), "m0").unwrap();
        assert!((c.entries() - DMatrix::identity(2, 2)).amax() < 1e-12);
        assert_eq!(c.labels(), ["m1"]);
        let prod = thermal_cov(2.0).unwrap().direct_sum(&thermal_cov(0.3).unwrap()).unwrap();
        let c = heterodyne_condition_index(&prod, 1).unwrap();
        assert!(close(c.entries()[(0, 0)], 5.0, 1e-14));
    }

    #[test]
    fn physicality() {
        let r = check_physical(&vacuum_cov(2).unwrap());
        assert!(r.physical && r.min_eig.abs() < 1e-12);
        let sub = CovarianceMatrix::from_matrix(DMatrix::identity(2, 2) * 0.5).unwrap();
        assert!(!check_physical(&sub).physical);
        assert!(matches!(
            symplectic_eigenvalues(&sub),
            Err(Error::NotPhysical { .. })
        ));
        for mu in [0.1, 1.0, 100.0] {
            assert!(check_physical(&tmsv_cov(mu).unwrap()).physical);
        }
    }

    #[test]
    fn williamson_reconstructs() {
        let v = thermal_cov(0.4)
            .unwrap()
            .direct_sum(&tmsv_cov(2.0).unwrap())
            .unwrap();
        let s = apply_symplectic(
            &beamsplitter(0.3, 0, 1, 3)
                .unwrap()
                .then(&beamsplitter(0.6, 1, 2, 3).unwrap()),
            &v,
        )
        .unwrap();
        let w = williamson(&s).unwrap();
        let n = 3;
        let d = DMatrix::from_fn(2 * n, 2 * n, |i, j| if i == j { w.nu[i % n] } else { 0.0 });
        let rec = &w.symplectic * d * w.symplectic.transpose();
        assert!((rec - s.entries()).amax() < 1e-9);
        let id = &w.inverse * &w.symplectic;
        assert!((id - DMatrix::identity(6, 6)).amax() < 1e-9);
        let mut nus = w.nu.clone();
        nus.sort_by(f64::total_cmp);
        assert!(close(nus[2], 1.8, 1e-9));
    }

    #[test]
    fn labels_and_selection() {
        let v = tmsv_cov(1.0).unwrap().relabel(&["A", "B"]).unwrap();
        assert_eq!(v.index_of("B").unwrap(), 1);
        assert!(matches!(v.index_of("Z"), Err(Error::UnknownMode(_))));
        let swapped = partial_trace(&v, &["B", "A"]).unwrap();
        assert_eq!(swapped.labels(), ["B", "A"]);
        assert!(vacuum_cov(1).unwrap().relabel(&["A", "B"]).is_err());
    }
}
