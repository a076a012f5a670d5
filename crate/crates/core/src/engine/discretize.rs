use crate::numlin::{expm, is_irreducible, Matrix, Reducibility};
use crate::sysmodel::RestrictedSystem;
use crate::{Error, Result};

/// Generators `e^{sτ_j A_j} B_j`, `B_j = e^{m_j A_j}`, for `s = 0..=N`.
#[derive(Debug, Clone)]
pub struct DiscretizedFamily {
    pub n_grid: usize,
    pub tau: Vec<f64>,
    pub b: Vec<Matrix>,
    /// `generators[j][s]`.
    pub generators: Vec<Vec<Matrix>>,
    /// `durations[j][s] = m_j + s τ_j`.
    pub durations: Vec<Vec<f64>>,
    pub reducibility: Reducibility,
}

impl DiscretizedFamily {
    pub fn generator_count(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    pub fn all_generators(&self) -> Vec<Matrix> {
        self.generators.iter().flatten().cloned().collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.reducibility.irreducible
    }
}

/// Builds the generator family for `N` segments and tests it for
/// irreducibility.
pub fn discretize(sys: &RestrictedSystem, n_grid: usize) -> Result<DiscretizedFamily> {
    if let Some(j) = sys.first_infinite() {
        return Err(Error::InfiniteBound { mode: j + 1 });
    }
    if n_grid == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let n = sys.n_modes();
    let mut tau = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut generators = Vec::with_capacity(n);
    let mut durations = Vec::with_capacity(n);
    for j in 0..n {
        let (m, big_m) = (sys.lower()[j], sys.upper()[j]);
        let t = (big_m - m) / n_grid as f64;
        let a = sys.mode(j);
        let ds: Vec<f64> = (0..=n_grid).map(|s| if s == n_grid { big_m } else { m + s as f64 * t }).collect();
        let gs = ds.iter().map(|&dur| expm(a, dur)).collect::<Result<Vec<_>>>()?;
        tau.push(t);
        b.push(gs[0].clone());
        generators.push(gs);
        durations.push(ds);
    }
    let all: Vec<Matrix> = generators.iter().flatten().cloned().collect();
    let reducibility = is_irreducible(&all)?;
    Ok(DiscretizedFamily { n_grid, tau, b, generators, durations, reducibility })
}
