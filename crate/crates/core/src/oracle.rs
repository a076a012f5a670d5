//! Brute-force references: periodic laws on duration grids, random growth
//! probes and reference systems.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numlin::{expm, from_rows, spectral_abscissa, spectral_radius, Matrix};
use crate::sysmodel::{FiniteSwitchingLaw, Leg, RestrictedSystem};
use crate::{Error, Result};

/// Default cap on the number of evaluated laws.
pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Best spectral bound over an enumeration of periodizable laws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicBound {
    pub bound: f64,
    pub law: Option<FiniteSwitchingLaw>,
    pub evaluated: usize,
    /// False when the budget stopped the enumeration early.
    pub exhaustive: bool,
}

/// `points` equispaced durations in `[m_j, M_j]`, endpoints included.
pub fn duration_grid(sys: &RestrictedSystem, points: usize) -> Result<Vec<Vec<f64>>> {
    if let Some(j) = sys.first_infinite() {
        return Err(Error::InfiniteBound { mode: j + 1 });
    }
    let points = points.max(2);
    Ok((0..sys.n_modes())
        .map(|j| {
            let (m, big_m) = (sys.lower()[j], sys.upper()[j]);
            (0..points)
                .map(|k| if k + 1 == points { big_m } else { m + (big_m - m) * k as f64 / (points - 1) as f64 })
                .collect()
        })
        .collect())
}

/// Maximum of `T⁻¹ ln ρ(Π(T))` over all periodizable laws with at most
/// `max_legs` legs whose durations are taken from a grid of
/// `grid_points_per_mode` points (endpoints included). Laws are enumerated
/// once per cyclic rotation.
pub fn best_periodic_lower_bound(
    sys: &RestrictedSystem,
    max_legs: usize,
    grid_points_per_mode: usize,
) -> Result<PeriodicBound> {
    let grid = duration_grid(sys, grid_points_per_mode)?;
    best_periodic_lower_bound_on(sys, &grid, max_legs, DEFAULT_BUDGET)
}

/// As [`best_periodic_lower_bound`] with explicit duration grids and budget.
pub fn best_periodic_lower_bound_on(
    sys: &RestrictedSystem,
    grid: &[Vec<f64>],
    max_legs: usize,
    budget: usize,
) -> Result<PeriodicBound> {
    let n = sys.n_modes();
    if grid.len() != n {
        return Err(Error::InvalidArgument("one duration grid per mode is required".into()));
    }
    for (j, g) in grid.iter().enumerate() {
        for &s in g {
            let law = FiniteSwitchingLaw::from_pairs(&[(j, s)]);
            if !sys.is_admissible(&law) {
                return Err(Error::InvalidArgument(format!("duration {s} outside the bounds of mode {}", j + 1)));
            }
        }
    }
    let exps: Vec<Vec<Matrix>> = grid
        .iter()
        .enumerate()
        .map(|(j, g)| g.iter().map(|&s| expm(sys.mode(j), s)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let firsts: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..grid[j].len()).map(move |g| (j, g))).collect();
    let share = (budget / firsts.len().max(1)).max(1);
    let parts: Vec<Search> = firsts
        .par_iter()
        .map(|&first| {
            let mut s = Search::new(&exps, grid, max_legs, share);
            s.run(first);
            s
        })
        .collect();
    let mut out = PeriodicBound { bound: f64::NEG_INFINITY, law: None, evaluated: 0, exhaustive: true };
    for p in parts {
        out.evaluated += p.evaluated;
        out.exhaustive &= !p.truncated;
        if p.best > out.bound {
            out.bound = p.best;
            out.law = p.best_law.map(|ls| {
                FiniteSwitchingLaw::new(ls.into_iter().map(|(mode, g)| Leg { mode, duration: grid[mode][g] }).collect())
            });
        }
    }
    Ok(out)
}

struct Search<'a> {
    exps: &'a [Vec<Matrix>],
    grid: &'a [Vec<f64>],
    max_legs: usize,
    budget: usize,
    evaluated: usize,
    truncated: bool,
    best: f64,
    best_law: Option<Vec<(usize, usize)>>,
    path: Vec<(usize, usize)>,
}

impl<'a> Search<'a> {
    fn new(exps: &'a [Vec<Matrix>], grid: &'a [Vec<f64>], max_legs: usize, budget: usize) -> Self {
        Search {
            exps,
            grid,
            max_legs,
            budget,
            evaluated: 0,
            truncated: false,
            best: f64::NEG_INFINITY,
            best_law: None,
            path: Vec::new(),
        }
    }

    fn run(&mut self, first: (usize, usize)) {
        self.path.push(first);
        let p = self.exps[first.0][first.1].clone();
        let t = self.grid[first.0][first.1];
        self.extend(&p, t);
    }

    fn extend(&mut self, prod: &Matrix, time: f64) {
        let last = *self.path.last().expect("nonempty path");
        if self.path.len() >= 2 && last.0 != self.path[0].0 && self.is_canonical() {
            if self.evaluated >= self.budget {
                self.truncated = true;
                return;
            }
            self.evaluated += 1;
            let r = spectral_radius(prod);
            if r > 0.0 {
                let b = r.ln() / time;
                if b > self.best {
                    self.best = b;
                    self.best_law = Some(self.path.clone());
                }
            }
        }
        if self.path.len() >= self.max_legs || self.truncated {
            return;
        }
        for j in 0..self.exps.len() {
            if j == last.0 {
                continue;
            }
            for g in 0..self.exps[j].len() {
                // rotations starting at a smaller leg are handled elsewhere
                if (j, g) < self.path[0] {
                    continue;
                }
                self.path.push((j, g));
                let next = &self.exps[j][g] * prod;
                self.extend(&next, time + self.grid[j][g]);
                self.path.pop();
            }
        }
    }

    // Lexicographically smallest among its cyclic rotations.
    fn is_canonical(&self) -> bool {
        let k = self.path.len();
        (1..k).all(|r| {
            for i in 0..k {
                let a = self.path[i];
                let b = self.path[(i + r) % k];
                if a != b {
                    return a < b;
                }
            }
            true
        })
    }
}

/// The two-mode planar system with `A_1 = diag(-1, -a)`, `A_2` the rotation
/// generator and bounds `[π, M]` for both modes, whose best period length
/// jumps as `M` varies.
pub fn discontinuous_period_fixture(a: f64, big_m: f64) -> Result<RestrictedSystem> {
    if !(a > 1.0) {
        return Err(Error::InvalidArgument(format!("a = {a} must exceed 1")));
    }
    RestrictedSystem::uniform(
        vec![from_rows(&[&[-1.0, 0.0], &[0.0, -a]]), from_rows(&[&[0.0, -1.0], &[1.0, 0.0]])],
        PI,
        big_m,
    )
}

/// Empirical growth over random admissible laws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthProbe {
    pub rate: f64,
    /// The horizon was shorter than every lower bound, so each sample is a
    /// single leg and the rate is that mode's spectral abscissa.
    pub short_horizon: bool,
    pub best_law: FiniteSwitchingLaw,
}

/// Samples `num_laws` random admissible laws reaching time `horizon` (leg
/// durations uniform in `[m_j, M_j]`, next mode uniform among the others)
/// and returns the largest `t⁻¹ ln ‖Π(t)‖₂`. Not a certified bound.
pub fn growth_probe(sys: &RestrictedSystem, num_laws: usize, horizon: f64, seed: u64) -> Result<GrowthProbe> {
    if let Some(j) = sys.first_infinite() {
        return Err(Error::InfiniteBound { mode: j + 1 });
    }
    let n = sys.n_modes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let short = sys.lower().iter().all(|&m| horizon < m);
    let mut best = GrowthProbe { rate: f64::NEG_INFINITY, short_horizon: short, best_law: FiniteSwitchingLaw::default() };
    let d = sys.dim();
    for _ in 0..num_laws.max(1) {
        let mut mode = rng.random_range(0..n);
        let mut legs = Vec::new();
        let mut p = Matrix::identity(d, d);
        let mut t = 0.0;
        loop {
            let (m, big_m) = (sys.lower()[mode], sys.upper()[mode]);
            let s = rng.random_range(m..=big_m);
            p = expm(sys.mode(mode), s)? * p;
            t += s;
            legs.push(Leg { mode, duration: s });
            if t >= horizon {
                break;
            }
            let k = rng.random_range(0..n - 1);
            mode = if k >= mode { k + 1 } else { k };
        }
        let rate = if short {
            spectral_abscissa(sys.mode(legs[0].mode))
        } else {
            p.singular_values().max().ln() / t
        };
        if rate > best.rate {
            best.rate = rate;
            best.best_law = FiniteSwitchingLaw::new(legs);
        }
    }
    Ok(best)
}
