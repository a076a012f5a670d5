//! Multi-polytope construction of a polyhedral Lyapunov multinorm.
//!
//! Each mode `j` owns a copy `L_j` of the state space holding the points
//! reached right after a leg of mode `j`. Starting from one point, the
//! engine pushes alive points through the discretized generators
//! `e^{sτ_j A_j} e^{m_j A_j}`, keeps the images that are not strictly inside
//! the current polytope of the target space and, along the way, evaluates
//! the spectral bound of every periodizable sub-law of the generating
//! histories. A run ends either with a lower bound `μ > -δ`, with no alive
//! points left (the polytopes then define a Lyapunov multinorm and give the
//! upper bound `ν`), or after `K_max` iterations with both bounds.
//!
//! [`bisect_sigma`] applies runs to shifted systems `A_j - αI` to bracket
//! the exponent.

mod algorithm;
mod audit;
mod bisect;
mod discretize;
mod export;

pub use algorithm::{run_algorithm1, run_with_family, AlgorithmReport, MultiPolytope, Termination, VertexRecord};
pub use audit::{check_lyapunov_multinorm, AuditOutcome, AuditViolation};
pub use bisect::{bisect_sigma, log_norm_bracket, BisectOptions, BisectionReport, ProbeSummary};
pub use discretize::{discretize, DiscretizedFamily};
pub use export::{polytope_csv, write_polytopes};

use serde::{Deserialize, Serialize};

use crate::lpcore::{HullStrategy, TOL_STRICT};
use crate::{Error, Result};

/// Where the first vertex is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "StartSpaceJson", into = "StartSpaceJson")]
pub enum StartSpace {
    /// The space of the mode with the largest spectral abscissa.
    #[default]
    Auto,
    /// A fixed space, 0-based (1-based in JSON).
    Index(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StartSpaceJson {
    Index(usize),
    Name(String),
}

impl TryFrom<StartSpaceJson> for StartSpace {
    type Error = String;

    fn try_from(v: StartSpaceJson) -> std::result::Result<Self, String> {
        match v {
            StartSpaceJson::Name(s) if s == "auto" => Ok(StartSpace::Auto),
            StartSpaceJson::Name(s) => Err(format!("start_space: expected \"auto\" or an index, got {s:?}")),
            StartSpaceJson::Index(0) => Err("start_space: spaces are numbered from 1".into()),
            StartSpaceJson::Index(i) => Ok(StartSpace::Index(i - 1)),
        }
    }
}

impl From<StartSpace> for StartSpaceJson {
    fn from(s: StartSpace) -> Self {
        match s {
            StartSpace::Auto => StartSpaceJson::Name("auto".into()),
            StartSpace::Index(i) => StartSpaceJson::Index(i + 1),
        }
    }
}

/// Parameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Number of discretization segments of each `[m_j, M_j]`.
    #[serde(rename = "N")]
    pub n_grid: usize,
    /// A run stops with a lower-bound certificate once `μ > -delta`.
    pub delta: f64,
    /// Iteration cap; one extra sweep follows before the interrupted bounds
    /// are reported.
    #[serde(rename = "K_max")]
    pub k_max: usize,
    pub hull: HullStrategy,
    pub start_space: StartSpace,
    /// Explicit starting point; when absent a dominant eigen-direction (or,
    /// for positive hulls, the all-ones vector) is used.
    pub start_point: Option<Vec<f64>>,
    /// Test membership against the polytopes frozen at the start of each
    /// iteration, in parallel.
    pub parallel: bool,
    pub tol_strict: f64,
    /// Total vertex budget; exceeding it interrupts the run like `K_max`.
    pub max_vertices: usize,
    /// Seed for the generic starting point used with reducible families.
    pub seed: u64,
    /// Minimum subdivisions of each grid step used by the refined upper
    /// bound, raised automatically for modes with a large `‖A²‖`; 0 keeps only
    /// the closed-form bound.
    pub refine: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            n_grid: 10,
            delta: 1e-4,
            k_max: 60,
            hull: HullStrategy::Symmetrized,
            start_space: StartSpace::Auto,
            start_point: None,
            parallel: false,
            tol_strict: TOL_STRICT,
            max_vertices: 4000,
            seed: 0,
            refine: 4,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_grid == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidArgument(format!("delta {} must be positive", self.delta)));
        }
        if self.k_max == 0 {
            return Err(Error::InvalidArgument("K_max must be at least 1".into()));
        }
        if !(self.tol_strict >= 0.0 && self.tol_strict < 0.5) {
            return Err(Error::InvalidArgument(format!("tol_strict {} out of range", self.tol_strict)));
        }
        Ok(())
    }
}

/// `ν = -(1/m) ln(1 - (M-m)² a2norm / (8N²))`.
pub fn nu_bound(m: f64, big_m: f64, n: usize, a2norm: f64) -> Result<f64> {
    let lhs = (big_m - m).powi(2) * a2norm;
    let rhs = 8.0 * (n as f64).powi(2);
    if !(lhs < rhs) {
        return Err(Error::NuDomain { n, lhs });
    }
    Ok(-(-lhs / rhs).ln_1p() / m)
}
