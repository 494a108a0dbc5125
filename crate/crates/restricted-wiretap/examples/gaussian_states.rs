//! Covariance-matrix basics: a two-mode squeezed vacuum, a lossy
//! beamsplitter, symplectic spectra, entropies and heterodyne conditioning.

use restricted_wiretap::gaussian::{
    apply_symplectic, beamsplitter, heterodyne_condition, partial_trace, symplectic_eigenvalues,
    tmsv_cov, vacuum_cov, von_neumann_entropy, williamson,
};

fn main() -> restricted_wiretap::Result<()> {
    let mu = 2.0;
    let source = tmsv_cov(mu)?.relabel(&["alice", "signal"])?;
    println!("TMSV with {mu} photons per arm:\n{}", source.entries());

    let state = source.direct_sum(&vacuum_cov(1)?.relabel(&["env"])?)?;
    let lossy = apply_symplectic(&beamsplitter(0.7, 1, 2, 3)?, &state)?;
    let shared = partial_trace(&lossy, &["alice", "signal"])?;

    println!("symplectic eigenvalues after 70% transmission: {:?}", symplectic_eigenvalues(&shared)?);
    println!("S(alice)        = {:.6} bits", von_neumann_entropy(&partial_trace(&shared, &["alice"])?)?);
    println!("S(alice,signal) = {:.6} bits", von_neumann_entropy(&shared)?);

    let w = williamson(&shared)?;
    println!("normal modes nu = {:?}", w.nu);

    let cond = heterodyne_condition(&shared, "signal")?;
    println!("alice after heterodyning the signal:\n{}", cond.entries());
    Ok(())
}
