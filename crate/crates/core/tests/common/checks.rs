use rand::Rng;
use switchbound::cuttail::{find_t_cut, simplify_bounds, Simplify};
use switchbound::engine::{bisect_sigma, discretize, run_algorithm1, run_with_family, BisectOptions, EngineConfig};
use switchbound::sysmodel::RestrictedSystem;
use switchbound::lpcore::{operator_norm, point_norm, HullStrategy, PolytopeHull};
use switchbound::numlin::expm;
use switchbound::sysmodel::FiniteSwitchingLaw;
use switchbound::Vector;

/// Samples `triples` points `(A, τ, t)` and checks
/// `‖x(t)‖ ≤ (1 - τ²‖A²‖/8)⁻¹ max(‖x(0)‖, ‖x(τ)‖)` in random polytope norms.
pub fn chord_bound(seed: u64, triples: usize) -> Result<usize, String> {
    let mut rng = super::rng(seed);
    let mut done = 0;
    while done < triples {
        let d = rng.random_range(2..5);
        let a = super::random_stable(&mut rng, d);
        let hull = PolytopeHull::new(
            HullStrategy::Symmetrized,
            (0..d + 3).map(|_| Vector::from_fn(d, |_, _| rng.random_range(-1.0..1.0))).collect(),
        )
        .unwrap();
        if !hull.is_full_dimensional() {
            continue;
        }
        let a2 = operator_norm(&hull, &(&a * &a)).unwrap();
        let tau = rng.random_range(0.05..0.95) * (8.0 / a2).sqrt();
        let factor = 1.0 / (1.0 - tau * tau * a2 / 8.0);
        let x0 = Vector::from_fn(d, |_, _| rng.random_range(-1.0..1.0));
        let ends = point_norm(&hull, &x0).unwrap().max(point_norm(&hull, &(expm(&a, tau).unwrap() * &x0)).unwrap());
        for _ in 0..5 {
            let t = rng.random_range(0.0..=tau);
            let mid = point_norm(&hull, &(expm(&a, t).unwrap() * &x0)).unwrap();
            if mid > factor * ends * (1.0 + 1e-9) {
                return Err(format!("t {t}, tau {tau}: {mid} > {factor} * {ends}"));
            }
            done += 1;
        }
    }
    Ok(done)
}

/// Runs with growing `K_max` must extend the vertex lists and never raise
/// the norm of a fixed point.
pub fn hull_monotonicity() -> Result<(), String> {
    let sys = super::table1(2.0).shifted(0.5);
    let mut rng = super::rng(3);
    let probes: Vec<Vector> = (0..20).map(|_| Vector::from_fn(2, |_, _| rng.random_range(-1.0..1.0))).collect();
    let mut prev = None;
    for k_max in 1..6 {
        let cfg = EngineConfig { n_grid: 4, k_max, ..Default::default() };
        let r = run_algorithm1(&sys, &cfg).unwrap();
        let norms: Vec<Vec<f64>> = (0..2)
            .map(|j| {
                let h = r.polytopes.hull(j).unwrap();
                probes.iter().map(|x| point_norm(&h, x).unwrap()).collect()
            })
            .collect();
        if let Some((p, old)) = &prev {
            let p: &switchbound::engine::MultiPolytope = p;
            let old: &Vec<Vec<f64>> = old;
            for j in 0..2 {
                let (a, b) = (&p.spaces[j], &r.polytopes.spaces[j]);
                if b.len() < a.len() || b[..a.len()] != a[..] {
                    return Err(format!("K_max {k_max}: vertex list of space {} does not extend", j + 1));
                }
                for (x, y) in old[j].iter().zip(&norms[j]) {
                    if *y > x * (1.0 + 1e-12) && x.is_finite() {
                        return Err(format!("K_max {k_max}: norm rose from {x} to {y}"));
                    }
                }
            }
        }
        prev = Some((r.polytopes, norms));
    }
    Ok(())
}

/// Shifting the generator family agrees with discretizing the shifted
/// matrices, and `μ` moves by exactly `-α` whenever the same law attains it.
pub fn shift_equivariance() -> Result<usize, String> {
    let sys = super::table1(2.0);
    let mut compared = 0;
    for n in [1, 2, 4] {
        let cfg = EngineConfig { n_grid: n, ..Default::default() };
        let fam = discretize(&sys, n).unwrap();
        for alpha in [0.3, 0.55, 0.8] {
            let a = run_with_family(&sys.shifted(alpha), &fam.shifted(alpha), &cfg).unwrap();
            let b = run_algorithm1(&sys.shifted(alpha), &cfg).unwrap();
            if a.termination != b.termination || a.vertex_counts != b.vertex_counts || a.mu_law != b.mu_law {
                return Err(format!("N {n}, alpha {alpha}: shifted family and shifted matrices disagree"));
            }
            for (x, y) in [(a.mu, b.mu), (a.nu, b.nu)] {
                if let (Some(x), Some(y)) = (x, y) {
                    if (x - y).abs() >= 1e-9 {
                        return Err(format!("N {n}, alpha {alpha}: {x} vs {y}"));
                    }
                }
            }
        }
        for base in [0.3, 0.55] {
            let r0 = run_algorithm1(&sys.shifted(base), &cfg).unwrap();
            for alpha in [0.01, -0.05] {
                let r1 = run_algorithm1(&sys.shifted(base + alpha), &cfg).unwrap();
                if r0.mu_law.is_some() && r0.mu_law == r1.mu_law {
                    let (m0, m1) = (r0.mu.unwrap(), r1.mu.unwrap());
                    if (m1 - (m0 - alpha)).abs() >= 1e-9 {
                        return Err(format!("N {n}, base {base}, alpha {alpha}: mu {m0} -> {m1}"));
                    }
                    compared += 1;
                }
            }
        }
    }
    let law = FiniteSwitchingLaw::from_pairs(&[(0, 1.3), (1, 2.0), (0, 1.0), (1, 1.7)]);
    let base = sys.law_lower_bound(&law).unwrap();
    for alpha in [-1.0, 0.25, 3.0] {
        let shifted = sys.shifted(alpha).law_lower_bound(&law).unwrap();
        if (shifted - (base - alpha)).abs() >= 1e-12 {
            return Err(format!("law bound shifted by {} instead of {}", shifted - base, -alpha));
        }
    }
    if compared == 0 {
        return Err("no run pair shared its law".into());
    }
    Ok(compared)
}

/// Random stable systems whose segments exceed every T_cut, with
/// intervals for the original and the reduced system.
pub fn original_and_reduced(count: usize, width: f64) -> Vec<(RestrictedSystem, [f64; 4])> {
    let mut rng = super::rng(12);
    let mut out = Vec::new();
    while out.len() < count {
        let a = super::random_stable(&mut rng, 2);
        let b = super::random_stable(&mut rng, 2);
        let ta = find_t_cut(&a).unwrap().t_cut;
        let tb = find_t_cut(&b).unwrap().t_cut;
        let big_m = 1.0 + ta.max(tb) + rng.random_range(0.2..1.0);
        if big_m > 6.0 {
            continue;
        }
        let sys = RestrictedSystem::uniform(vec![a, b], 1.0, big_m).unwrap();
        let reduced = simplify_bounds(&sys, Simplify::Reduce).unwrap().system;
        let cfg = EngineConfig::default();
        let x = bisect_sigma(&sys, &cfg, &BisectOptions::width(width)).unwrap();
        let y = bisect_sigma(&reduced, &cfg, &BisectOptions::width(width)).unwrap();
        out.push((sys, [x.lo, x.hi, y.lo, y.hi]));
    }
    out
}
