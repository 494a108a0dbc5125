//! Compares the truncated Fock-space model of the wiretap wiring with the
//! covariance-matrix pipeline, quantity by quantity.
//!
//!     cargo run --release --example fock_cross_check -- 0.3 0.8 0.0 0.1 25

use restricted_wiretap::channel::ChannelParams;
use restricted_wiretap::fock::cross_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let [eta, kappa, n_e, mu, dim] = args[..] else {
        eprintln!("usage: fock_cross_check ETA KAPPA NE MU DIM");
        std::process::exit(1);
    };
    let check = cross_check(ChannelParams::new(eta, kappa, n_e, mu)?, dim as usize)?;
    println!("truncation leakage {:.2e}", check.leakage);
    println!("{:<16} {:>16} {:>16} {:>10}", "quantity", "fock", "gaussian", "|diff|");
    for c in check.entropies.iter().chain(&check.relative_entropies) {
        println!(
            "{:<16} {:>16.12} {:>16.12} {:>10.2e}",
            c.quantity,
            c.fock,
            c.gaussian,
            c.error()
        );
    }
    Ok(())
}
