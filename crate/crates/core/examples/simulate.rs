//! Trajectory of a scalar two-mode system under a periodic law; the growth
//! rate over one period equals the law's spectral bound (2a + b)/3.

use switchbound::numlin::from_rows;
use switchbound::sysmodel::{FiniteSwitchingLaw, RestrictedSystem};
use switchbound::Vector;

fn main() -> switchbound::Result<()> {
    let (a, b) = (1.0, -3.0);
    let sys = RestrictedSystem::uniform(vec![from_rows(&[&[a]]), from_rows(&[&[b]])], 1.0, 2.0)?;
    let law = FiniteSwitchingLaw::from_json_str("[[1, 2], [2, 1]]")?;
    println!("law bound {} (expected {})", sys.law_lower_bound(&law)?, (2.0 * a + b) / 3.0);
    let traj = sys.simulate(&law.repeated(3), &Vector::from_element(1, 1.0), 0.5)?;
    println!("t,x");
    for (t, x) in traj.times.iter().zip(&traj.points) {
        println!("{t},{}", x[0]);
    }
    Ok(())
}
