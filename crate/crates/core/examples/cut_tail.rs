//! Cut-tail points: from T_cut on, the trajectory of a stable matrix stays
//! inside the symmetrized hull of its initial arc, so longer dwell times
//! add nothing.

use switchbound::cuttail::{find_t_cut, is_cut_tail, simplify_bounds, Simplify, DEFAULT_MARGIN};
use switchbound::numlin::from_rows;
use switchbound::sysmodel::RestrictedSystem;

fn main() -> switchbound::Result<()> {
    let real = from_rows(&[&[-1.0, 0.0], &[0.0, -2.0]]);
    let focus = from_rows(&[&[-1.0, 1.0], &[-1.0, -1.0]]);
    let mixed = from_rows(&[&[-0.5, 2.0, 0.0], &[-2.0, -0.5, 0.0], &[0.0, 0.0, -1.3]]);
    for (name, a) in [("diag(-1,-2)", &real), ("-1 +- i", &focus), ("3x3", &mixed)] {
        let r = find_t_cut(a)?;
        println!("{name}: T_cut = {:.9} ({:?})", r.t_cut, r.method);
        for factor in [0.5, 1.5] {
            let c = is_cut_tail(a, factor * r.t_cut, DEFAULT_MARGIN)?;
            println!("  T = {:.4}: {:?}, value in [{:.6}, {:.6}]", factor * r.t_cut, c.verdict, c.value.lower, c.value.upper);
        }
    }

    let sys = RestrictedSystem::new(vec![real, focus], vec![1.0, 1.0], vec![5.0, f64::INFINITY])?;
    let reduced = simplify_bounds(&sys, Simplify::Reduce)?;
    println!("upper bounds {:?} -> {:?}", sys.upper(), reduced.system.upper());
    for c in &reduced.changes {
        println!("  mode {}: {:?}", c.mode, c.action);
    }
    Ok(())
}
