//! Builds the restricted wiretap state and shows where the photons go.

use restricted_wiretap::channel::{build_joint_state, ChannelParams};
use restricted_wiretap::gaussian::von_neumann_entropy;

fn main() -> restricted_wiretap::Result<()> {
    for params in [
        ChannelParams::pure_loss(0.6, 0.3, 5.0)?,
        ChannelParams::new(0.6, 0.3, 0.5, 5.0)?,
    ] {
        let state = build_joint_state(params)?;
        println!("{params:?}");
        for (i, label) in state.labels().iter().enumerate() {
            let s = von_neumann_entropy(&state.marginal(&[label])?)?;
            println!(
                "  {label}: {:.4} photons, entropy {:.4} bits",
                state.cov.mean_photons(i),
                s
            );
        }
        println!("  total photons {:.4}", state.cov.total_mean_photons());
    }
    Ok(())
}
