//! Lower bounds from periodic switching laws, and growth of random
//! admissible trajectories.

use switchbound::oracle::{best_periodic_lower_bound, growth_probe};
use switchbound::numlin::from_rows;
use switchbound::sysmodel::{FiniteSwitchingLaw, RestrictedSystem};

fn main() -> switchbound::Result<()> {
    let sys = RestrictedSystem::uniform(
        vec![from_rows(&[&[-0.3, 0.5], &[0.2, -0.4]]), from_rows(&[&[-0.6, 0.0], &[0.0, 1.0]])],
        1.0,
        2.0,
    )?;
    for (legs, points) in [(2, 2), (2, 5), (4, 3)] {
        let best = best_periodic_lower_bound(&sys, legs, points)?;
        let law = best.law.as_ref().map(FiniteSwitchingLaw::to_json_string).unwrap_or_default();
        println!("{legs} legs, {points} durations per mode: sigma >= {:.6} by {law} ({} laws)", best.bound, best.evaluated);
    }
    let probe = growth_probe(&sys, 200, 60.0, 1)?;
    println!(
        "random laws up to t = 60: largest growth rate {:.4} over {} legs (not a certified bound)",
        probe.rate,
        probe.best_law.len()
    );
    Ok(())
}
