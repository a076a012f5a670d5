//! Writes the vertices of the certifying polytopes as CSV, one file per
//! space, ready for plotting.
//!
//! cargo run --release --example export_polytopes -- [DIR]

use std::path::PathBuf;

use switchbound::engine::{bisect_sigma, polytope_csv, write_polytopes, BisectOptions, EngineConfig};
use switchbound::numlin::from_rows;
use switchbound::sysmodel::RestrictedSystem;

fn main() -> switchbound::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("polytopes"));
    let sys = RestrictedSystem::uniform(
        vec![from_rows(&[&[-0.3, 0.5], &[0.2, -0.4]]), from_rows(&[&[-0.6, 0.0], &[0.0, 1.0]])],
        1.0,
        2.5,
    )?;
    let report = bisect_sigma(&sys, &EngineConfig::default(), &BisectOptions::width(0.02))?;
    let run = report.upper_report.as_ref().expect("an upper certificate");
    print!("{}", polytope_csv(&run.polytopes, 0)?);
    std::fs::create_dir_all(&dir)?;
    for p in write_polytopes(&run.polytopes, &dir, true)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}
