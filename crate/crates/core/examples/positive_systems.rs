//! Metzler modes with positive polytopes: the polytopes stay tiny even in
//! dimension 20.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use switchbound::engine::{bisect_sigma, BisectOptions, EngineConfig};
use switchbound::lpcore::HullStrategy;
use switchbound::sysmodel::RestrictedSystem;
use switchbound::Matrix;

fn main() -> switchbound::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cfg = EngineConfig { hull: HullStrategy::Positive, ..Default::default() };
    for d in [5, 10, 20] {
        let mut metzler =
            || Matrix::from_fn(d, d, |i, j| if i == j { rng.random_range(-1.0..1.0) } else { rng.random_range(0.0..1.0) });
        let sys = RestrictedSystem::uniform(vec![metzler(), metzler()], 1.0, 2.0)?;
        let t0 = std::time::Instant::now();
        let r = bisect_sigma(&sys, &cfg, &BisectOptions::width(0.01))?;
        let len = r.upper_report.as_ref().map(|u| u.len_p.clone()).unwrap_or_default();
        println!("d = {d:2}: sigma in [{:.5}, {:.5}], len P {len:?}, {:.2?}", r.lo, r.hi, t0.elapsed());
    }
    Ok(())
}
