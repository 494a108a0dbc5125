//! Direct, reverse and CV-QKD rates as the signal strength grows, next to
//! their infinite-signal limits.

use restricted_wiretap::channel::ChannelParams;
use restricted_wiretap::rates::{ccq_rate, dr_rate, plob, rr_rate};

fn main() -> restricted_wiretap::Result<()> {
    let (eta, kappa, n_e) = (0.6, 0.1, 0.05);
    println!("eta={eta} kappa={kappa} n_e={n_e}");
    println!("{:>10} {:>10} {:>10} {:>10}", "mu", "direct", "reverse", "ccq");
    for mu in [0.01, 0.1, 1.0, 10.0, 100.0, 1e4] {
        let ccq = ccq_rate(ChannelParams::new(eta, kappa, n_e, mu)?, 0.95)?;
        println!(
            "{mu:>10} {:>10.5} {:>10.5} {:>10.5}",
            dr_rate(eta, kappa, n_e, mu)?.raw,
            rr_rate(eta, kappa, n_e, mu)?.raw,
            ccq.raw
        );
    }
    println!(
        "{:>10} {:>10.5} {:>10.5}",
        "inf",
        dr_rate(eta, kappa, n_e, f64::INFINITY)?.raw,
        rr_rate(eta, kappa, n_e, f64::INFINITY)?.raw
    );
    println!("unrestricted pure-loss capacity: {:.5}", plob(eta)?);
    Ok(())
}
