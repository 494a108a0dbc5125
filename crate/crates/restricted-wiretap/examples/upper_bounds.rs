//! Relative-entropy upper bounds: the pure-loss closed form against the
//! numeric separable-state search, and a thermal-noise bound.

use restricted_wiretap::bounds::{
    default_mu_schedule, er_bound_at, er_upper_bound_numeric, er_upper_bound_pure_loss,
};
use restricted_wiretap::channel::ChannelParams;
use restricted_wiretap::rates::rr_rate;

fn main() -> restricted_wiretap::Result<()> {
    let schedule = default_mu_schedule();
    println!("{:>5} {:>5} {:>12} {:>12}", "eta", "kappa", "closed", "numeric");
    for (eta, kappa) in [(0.3, 0.1), (0.6, 0.1), (0.6, 0.5), (0.9, 0.9)] {
        let numeric = er_upper_bound_numeric(eta, kappa, 0.0, &schedule)?;
        println!(
            "{eta:>5} {kappa:>5} {:>12.6} {:>12.6}",
            er_upper_bound_pure_loss(eta, kappa)?,
            numeric.value
        );
    }

    let (eta, kappa, n_e) = (0.5, 0.1, 0.5);
    let ub = er_upper_bound_numeric(eta, kappa, n_e, &schedule)?;
    println!(
        "\nthermal eta={eta} kappa={kappa} n_e={n_e}: bound {:.6} (sup at mu={}, converged {}), reverse rate {:.6}",
        ub.value,
        ub.mu_at_sup,
        ub.converged,
        rr_rate(eta, kappa, n_e, f64::INFINITY)?.raw
    );

    let (d, cand) = er_bound_at(ChannelParams::new(eta, kappa, n_e, 10.0)?)?;
    println!(
        "at mu=10: D = {d:.6}, cross-block scale {:.6}, PPT margin {:.2e}",
        cand.scale, cand.min_ppt_eig
    );
    Ok(())
}
