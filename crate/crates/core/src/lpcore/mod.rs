//! Minkowski functionals of polytopes given by vertices.
//!
//! Two hull strategies are supported. The symmetrized hull `co{V, -V}` is
//! the unit ball of a norm on the whole space. The positive hull is the part
//! of the nonnegative orthant lying below some point of `co V`; it is the
//! unit ball of a monotone norm, extended to arbitrary vectors through
//! `‖x‖ = ‖|x|‖`.
//!
//! For `x ≠ 0` the largest `t` with `t·x` in the hull is `1/‖x‖`, found by
//!
//! ```text
//! symmetrized:  min Σ(u_i + w_i)   s.t.  Σ(u_i - w_i) v_i = x,   u, w ≥ 0
//! positive:     min Σ λ_i          s.t.  Σ λ_i v_i - s = |x|,    λ, s ≥ 0
//! ```

mod simplex;

pub use simplex::{solve as solve_standard_form, Outcome, Solution};

use serde::{Deserialize, Serialize};

use crate::numlin::{Matrix, Vector};
use crate::{Error, Result};

/// Default width of the band `|t0 - 1| ≤ tol` reported as boundary.
pub const TOL_STRICT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HullStrategy {
    Symmetrized,
    Positive,
}

/// Position of a point relative to a hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Interior,
    Boundary,
    Exterior,
}

/// A polytope given by its generating points.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeHull {
    dim: usize,
    vertices: Vec<Vector>,
    strategy: HullStrategy,
}

/// Result of one auxiliary LP.
#[derive(Debug, Clone)]
pub struct LpResult {
    /// Largest `t` with `t·x0` in the hull; `+∞` for `x0 = 0`, `0` when the
    /// ray leaves the hull immediately (degenerate hull).
    pub t0: f64,
    /// Minkowski functional `1/t0`.
    pub norm: f64,
    pub verdict: Verdict,
    /// Vertex coefficients `w` with `Σ w_j v_j = x0` (dominating `|x0|` for
    /// positive hulls) and `Σ |w_j| = norm`. Signed for symmetrized hulls.
    pub weights: Vec<f64>,
    /// Supporting functional `y` with `yᵀx0 = norm` and `|yᵀv| ≤ 1`
    /// (symmetrized) or `yᵀv ≤ 1, y ≥ 0` (positive) on every vertex.
    pub functional: Vector,
    pub pivots: usize,
}

impl PolytopeHull {
    pub fn new(strategy: HullStrategy, vertices: Vec<Vector>) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::InvalidArgument("hull needs at least one vertex".into()))?;
        let dim = first.len();
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidArgument("non-finite vertex".into()));
            }
            if strategy == HullStrategy::Positive && v.iter().any(|&x| x < 0.0) {
                return Err(Error::InvalidArgument("positive hull vertex has a negative coordinate".into()));
            }
        }
        Ok(PolytopeHull { dim, vertices, strategy })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn strategy(&self) -> HullStrategy {
        self.strategy
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn push(&mut self, v: Vector) {
        debug_assert_eq!(v.len(), self.dim);
        self.vertices.push(v);
    }

    /// Whether the hull has nonempty interior (relative to the orthant for
    /// positive hulls).
    pub fn is_full_dimensional(&self) -> bool {
        match self.strategy {
            HullStrategy::Symmetrized => {
                let m = Matrix::from_columns(&self.vertices);
                let sv = m.singular_values();
                let smax = sv.max();
                smax > 0.0 && sv.iter().filter(|&&s| s > 1e-10 * smax).count() == self.dim
            }
            HullStrategy::Positive => {
                (0..self.dim).all(|i| self.vertices.iter().any(|v| v[i] > 0.0))
            }
        }
    }
}

/// Solves the ray LP for `x0` and classifies it with tolerance `tol`.
pub fn membership(hull: &PolytopeHull, x0: &Vector, tol: f64) -> Result<LpResult> {
    if x0.len() != hull.dim {
        return Err(Error::DimensionMismatch { expected: hull.dim, found: x0.len() });
    }
    let l = hull.vertices.len();
    if x0.iter().all(|&x| x == 0.0) {
        let verdict = if hull.is_full_dimensional() { Verdict::Interior } else { Verdict::Boundary };
        return Ok(LpResult {
            t0: f64::INFINITY,
            norm: 0.0,
            verdict,
            weights: vec![0.0; l],
            functional: Vector::zeros(hull.dim),
            pivots: 0,
        });
    }
    let d = hull.dim;
    let (a, b, c) = match hull.strategy {
        HullStrategy::Symmetrized => {
            let a = Matrix::from_fn(d, 2 * l, |i, j| {
                if j < l { hull.vertices[j][i] } else { -hull.vertices[j - l][i] }
            });
            (a, x0.clone(), Vector::repeat(2 * l, 1.0))
        }
        HullStrategy::Positive => {
            let a = Matrix::from_fn(d, l + d, |i, j| {
                if j < l {
                    hull.vertices[j][i]
                } else if j - l == i {
                    -1.0
                } else {
                    0.0
                }
            });
            let c = Vector::from_fn(l + d, |j, _| if j < l { 1.0 } else { 0.0 });
            (a, x0.abs(), c)
        }
    };
    let (norm, weights, functional, pivots) = match solve_standard_form(&a, &b, &c)? {
        Outcome::Optimal(s) => {
            let weights = match hull.strategy {
                HullStrategy::Symmetrized => (0..l).map(|j| s.x[j] - s.x[j + l]).collect(),
                HullStrategy::Positive => s.x.as_slice()[..l].to_vec(),
            };
            (s.objective, weights, s.duals, s.pivots)
        }
        Outcome::Infeasible => (f64::INFINITY, vec![0.0; l], Vector::zeros(d), 0),
        Outcome::Unbounded => {
            return Err(Error::LpFailure { iterations: 0, reason: "ray LP reported unbounded".into() })
        }
    };
    let t0 = if norm > 0.0 { 1.0 / norm } else { f64::INFINITY };
    let verdict = if t0 > 1.0 + tol {
        Verdict::Interior
    } else if t0 >= 1.0 - tol {
        Verdict::Boundary
    } else {
        Verdict::Exterior
    };
    Ok(LpResult { t0, norm, verdict, weights, functional, pivots })
}

/// Minkowski functional of `x0`; `+∞` when `x0` is outside the span of a
/// degenerate hull.
pub fn point_norm(hull: &PolytopeHull, x0: &Vector) -> Result<f64> {
    Ok(membership(hull, x0, TOL_STRICT)?.norm)
}

/// `max_j ‖A v_j‖` over the vertices. For symmetrized hulls this is the
/// induced operator norm. For positive hulls the entrywise absolute value
/// `|A|` is applied instead, which bounds the induced norm of `A` for the
/// monotone extension `‖x‖ = ‖|x|‖`.
pub fn operator_norm(hull: &PolytopeHull, a: &Matrix) -> Result<f64> {
    if a.nrows() != hull.dim || a.ncols() != hull.dim {
        return Err(Error::DimensionMismatch { expected: hull.dim, found: a.nrows() });
    }
    let op = match hull.strategy {
        HullStrategy::Symmetrized => a.clone(),
        HullStrategy::Positive => a.abs(),
    };
    let mut best: f64 = 0.0;
    for v in &hull.vertices {
        best = best.max(point_norm(hull, &(&op * v))?);
    }
    Ok(best)
}

/// Indices of the vertices that are not in the hull of the remaining ones.
/// Exact duplicates keep their first occurrence.
pub fn essential_vertices(hull: &PolytopeHull) -> Result<Vec<usize>> {
    let mut keep: Vec<usize> = (0..hull.len()).collect();
    let mut i = 0;
    while i < keep.len() && keep.len() > 1 {
        let others: Vec<Vector> =
            keep.iter().filter(|&&k| k != keep[i]).map(|&k| hull.vertices[k].clone()).collect();
        let rest = PolytopeHull { dim: hull.dim, vertices: others, strategy: hull.strategy };
        if membership(&rest, &hull.vertices[keep[i]], TOL_STRICT)?.t0 >= 1.0 - TOL_STRICT {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::from_rows;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    fn cross() -> PolytopeHull {
        PolytopeHull::new(HullStrategy::Symmetrized, vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap()
    }

    #[test]
    fn cross_polytope_membership() {
        let r = membership(&cross(), &v(&[0.25, 0.25]), TOL_STRICT).unwrap();
        assert!((r.t0 - 2.0).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Interior);
        let r = membership(&cross(), &v(&[1.0, 1.0]), TOL_STRICT).unwrap();
        assert!((r.t0 - 0.5).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Exterior);
        let r = membership(&cross(), &v(&[0.5, -0.5]), TOL_STRICT).unwrap();
        assert_eq!(r.verdict, Verdict::Boundary);
    }

    #[test]
    fn positive_simplex() {
        let h = PolytopeHull::new(HullStrategy::Positive, vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        let r = membership(&h, &v(&[0.3, 0.3]), TOL_STRICT).unwrap();
        assert!((r.t0 - 5.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Interior);
    }

    #[test]
    fn norms() {
        assert!((point_norm(&cross(), &v(&[0.25, 0.25])).unwrap() - 0.5).abs() < 1e-12);
        assert!((point_norm(&cross(), &v(&[1.0, 1.0])).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(point_norm(&cross(), &v(&[0.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn zero_point_verdict_depends_on_dimension() {
        let flat = PolytopeHull::new(HullStrategy::Symmetrized, vec![v(&[1.0, 1.0])]).unwrap();
        assert_eq!(membership(&flat, &v(&[0.0, 0.0]), TOL_STRICT).unwrap().verdict, Verdict::Boundary);
        assert_eq!(point_norm(&flat, &v(&[1.0, 0.0])).unwrap(), f64::INFINITY);
        assert_eq!(membership(&cross(), &v(&[0.0, 0.0]), TOL_STRICT).unwrap().verdict, Verdict::Interior);
    }

    #[test]
    fn operator_norms() {
        let two = Matrix::identity(2, 2) * 2.0;
        assert!((operator_norm(&cross(), &two).unwrap() - 2.0).abs() < 1e-12);
        let diag = from_rows(&[&[1.0, 0.0], &[0.0, 3.0]]);
        assert!((operator_norm(&cross(), &diag).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_vertices() {
        let h = PolytopeHull::new(
            HullStrategy::Symmetrized,
            vec![v(&[1.0, 0.0]), v(&[0.2, 0.2]), v(&[0.0, 1.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0])],
        )
        .unwrap();
        assert_eq!(essential_vertices(&h).unwrap().len(), 2);
        let p = PolytopeHull::new(HullStrategy::Positive, vec![v(&[1.0, 1.0]), v(&[0.5, 1.0]), v(&[2.0, 0.1])]).unwrap();
        assert_eq!(essential_vertices(&p).unwrap(), vec![0, 2]);
    }

    #[test]
    fn functional_supports_hull() {
        let h = PolytopeHull::new(
            HullStrategy::Symmetrized,
            vec![v(&[1.0, 0.0]), v(&[1.0, 1.0]), v(&[-0.5, 2.0])],
        )
        .unwrap();
        let x = v(&[0.3, -1.7]);
        let r = membership(&h, &x, TOL_STRICT).unwrap();
        assert!((r.functional.dot(&x) - r.norm).abs() < 1e-10);
        for p in h.vertices() {
            assert!(r.functional.dot(p).abs() <= 1.0 + 1e-10);
        }
        let rebuilt: Vector = h.vertices().iter().zip(&r.weights).map(|(p, w)| p * *w).sum();
        assert!((rebuilt - &x).norm() < 1e-10);
    }
}
