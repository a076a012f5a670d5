//! Two unstable matrices whose restricted switching system is stable: each
//! mode expands one axis, but no law can keep expanding the same axis for
//! long enough.

use switchbound::cli::Stability;
use switchbound::engine::{bisect_sigma, check_lyapunov_multinorm, BisectOptions, EngineConfig};
use switchbound::numlin::{from_rows, spectral_abscissa};
use switchbound::sysmodel::RestrictedSystem;

fn main() -> switchbound::Result<()> {
    let sys = RestrictedSystem::uniform(
        vec![from_rows(&[&[1.0, 0.0], &[0.0, -3.0]]), from_rows(&[&[-3.0, 0.0], &[0.0, 1.0]])],
        1.0,
        2.0,
    )?;
    for (j, a) in sys.modes().iter().enumerate() {
        println!("mode {} spectral abscissa {}", j + 1, spectral_abscissa(a));
    }
    let opts = BisectOptions { stop_on_sign: true, ..BisectOptions::width(0.05) };
    let report = bisect_sigma(&sys, &EngineConfig::default(), &opts)?;
    println!("{:?}: sigma in [{:.5}, {:.5}]", Stability::of(&report), report.lo, report.hi);

    // the polytopes behind the upper end, audited on a fine time grid
    if let (Some(shift), Some(run)) = (report.upper_shift, &report.upper_report) {
        let shifted = sys.shifted(shift);
        let audit = check_lyapunov_multinorm(&shifted, &run.polytopes, run.nu.unwrap_or(0.0), 400)?;
        println!("audit at shift {shift:.5}: passed {}, margin {:.2e}", audit.passed, audit.margin());
    }
    Ok(())
}
