//! Decoy-state BB84 with the reference link: rate against signal strength,
//! optimized rates, and a pulse-level Monte-Carlo check.

use restricted_wiretap::bb84::monte_carlo::simulate;
use restricted_wiretap::bb84::{conditional_probs, optimize_mu, p_sift, Bb84Params, Eve, MuSearch};

fn main() -> restricted_wiretap::Result<()> {
    let kappa = 0.1;
    println!("{:>8} {:>14} {:>14}", "mu", "unrestricted", "restricted");
    for mu in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let p = Bb84Params::reference(kappa, mu)?;
        println!(
            "{mu:>8} {:>14.4e} {:>14.4e}",
            Eve::Unrestricted.rate(&p)?,
            Eve::Restricted.rate(&p)?
        );
    }

    let p = Bb84Params::reference(kappa, 1.0)?;
    for eve in [Eve::Unrestricted, Eve::Restricted] {
        let o = optimize_mu(&p, eve, MuSearch::default())?;
        println!("{eve:?}: {:.4e} bit/s at mu = {:.4}", o.skr, o.mu);
    }

    let p = p.with_mu(0.1);
    let est = simulate(&p, 10_000_000, 1)?;
    let c = conditional_probs(&p)?;
    println!(
        "Pr(B1): model {:.6e}, simulated {:.6e} +- {:.1e}",
        p_sift(&p),
        est.p_b1.value,
        est.p_b1.std_err
    );
    println!(
        "Pr(Be): model {:.6e}, simulated {:.6e} +- {:.1e}",
        c.be, est.p_be.value, est.p_be.std_err
    );
    Ok(())
}
