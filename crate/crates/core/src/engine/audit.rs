use serde::{Deserialize, Serialize};

use super::MultiPolytope;
use crate::lpcore::point_norm;
use crate::numlin::{expm, Matrix, Vector};
use crate::sysmodel::RestrictedSystem;
use crate::{Error, Result};

/// First point found with norm at least 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditViolation {
    pub from_space: usize,
    pub to_space: usize,
    pub t: f64,
    pub vertex: Vec<f64>,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditOutcome {
    pub passed: bool,
    /// Largest norm met; the margin is `1 - worst_norm`.
    pub worst_norm: f64,
    pub checks: usize,
    pub violation: Option<AuditViolation>,
}

impl AuditOutcome {
    pub fn margin(&self) -> f64 {
        1.0 - self.worst_norm
    }
}

/// Checks on a grid that every curve `e^{t(A_j - νI)} e^{m_j(A_j - νI)} x`,
/// `t ∈ [0, M_j - m_j]`, started at a vertex `x` of `P_q`, `q ≠ j`, stays
/// strictly inside `P_j`.
pub fn check_lyapunov_multinorm(
    sys: &RestrictedSystem,
    polytopes: &MultiPolytope,
    shift: f64,
    grid: usize,
) -> Result<AuditOutcome> {
    let n = sys.n_modes();
    if polytopes.spaces.len() != n {
        return Err(Error::InvalidArgument("polytope count differs from mode count".into()));
    }
    if let Some(j) = sys.first_infinite() {
        return Err(Error::InfiniteBound { mode: j + 1 });
    }
    let grid = grid.max(1);
    let hulls = (0..n).map(|j| polytopes.hull(j)).collect::<Result<Vec<_>>>()?;
    for (j, h) in hulls.iter().enumerate() {
        if !h.is_full_dimensional() {
            return Err(Error::DegeneratePolytope { space: j + 1 });
        }
    }
    let d = sys.dim();
    let mut out = AuditOutcome { passed: true, worst_norm: 0.0, checks: 0, violation: None };
    for j in 0..n {
        let a: Matrix = sys.mode(j) - Matrix::identity(d, d) * shift;
        let (m, big_m) = (sys.lower()[j], sys.upper()[j]);
        let maps = (0..=grid)
            .map(|k| {
                let t = (big_m - m) * k as f64 / grid as f64;
                Ok((t, expm(&a, m + t)?))
            })
            .collect::<Result<Vec<_>>>()?;
        for q in (0..n).filter(|&q| q != j) {
            for rec in &polytopes.spaces[q] {
                let x = Vector::from_column_slice(&rec.point);
                for (t, g) in &maps {
                    let norm = point_norm(&hulls[j], &(g * &x))?;
                    out.checks += 1;
                    out.worst_norm = out.worst_norm.max(norm);
                    if norm >= 1.0 && out.violation.is_none() {
                        out.passed = false;
                        out.violation = Some(AuditViolation {
                            from_space: q,
                            to_space: j,
                            t: *t,
                            vertex: rec.point.clone(),
                            norm,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}
