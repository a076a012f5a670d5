//! Certified interval for the Lyapunov exponent of the two-mode system with
//! switching intervals in [1, 2].
//!
//! cargo run --release --example compute_interval

use switchbound::engine::{bisect_sigma, BisectOptions, EngineConfig};
use switchbound::numlin::from_rows;
use switchbound::sysmodel::RestrictedSystem;

fn main() -> switchbound::Result<()> {
    let sys = RestrictedSystem::uniform(
        vec![from_rows(&[&[-0.3, 0.5], &[0.2, -0.4]]), from_rows(&[&[-0.6, 0.0], &[0.0, 1.0]])],
        1.0,
        2.5,
    )?;
    let report = bisect_sigma(&sys, &EngineConfig::default(), &BisectOptions::width(0.01))?;
    println!("sigma in [{:.6}, {:.6}]", report.lo, report.hi);
    if let Some(law) = &report.lower_law {
        println!("lower end attained by the periodic law {}", law.to_json_string());
    }
    for p in &report.probes {
        println!(
            "  shift {:+.5}: {:?} after {} iterations, len P {:?} -> [{:.5}, {:.5}]",
            p.alpha, p.termination, p.iterations, p.len_p, p.lo_after, p.hi_after
        );
    }
    Ok(())
}
