//! Dense two-phase primal simplex for `min cᵀz  s.t.  Az = b, z ≥ 0`.
//!
//! Pivoting follows Dantzig's rule and falls back to Bland's rule after a
//! run of degenerate pivots. The final basic solution and the duals are
//! recomputed from the original data with an LU solve, which removes the
//! drift accumulated in the tableau.

use crate::numlin::{Matrix, Vector};
use crate::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const DEGENERATE_RUN: usize = 40;

#[derive(Debug, Clone)]
pub enum Outcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vector,
    pub objective: f64,
    /// Multipliers `y` with `Aᵀy ≤ c` (up to tolerance) and `bᵀy` equal to
    /// the objective.
    pub duals: Vector,
    pub pivots: usize,
}

struct Tableau {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.cols + 1) + j]
    }

    #[inline]
    fn rhs(&self, i: usize) -> f64 {
        self.data[i * (self.cols + 1) + self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let p = self.data[r * w + c];
        for k in 0..w {
            self.data[r * w + k] /= p;
        }
        let (before, rest) = self.data.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[c];
            if f != 0.0 {
                for (x, &y) in row.iter_mut().zip(prow.iter()) {
                    *x -= f * y;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    // Last row holds reduced costs; objective row index is `rows`.
    fn set_costs(&mut self, cost: &[f64]) {
        let w = self.cols + 1;
        let obj = self.rows * w;
        for k in 0..w {
            self.data[obj + k] = if k < self.cols { cost[k] } else { 0.0 };
        }
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for k in 0..w {
                    self.data[obj + k] -= cb * self.data[i * w + k];
                }
            }
        }
    }

    fn iterate(&mut self, allowed: usize, pivots: &mut usize, limit: usize) -> Result<bool> {
        let mut degenerate = 0usize;
        loop {
            if *pivots >= limit {
                return Err(Error::LpFailure {
                    iterations: *pivots,
                    reason: "pivot limit reached".into(),
                });
            }
            let bland = degenerate >= DEGENERATE_RUN;
            let mut enter = None;
            let mut best = -PIVOT_EPS;
            for j in 0..allowed {
                let r = self.at(self.rows, j);
                if r < best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = r;
                }
            }
            let Some(c) = enter else { return Ok(true) };
            let mut leave: Option<usize> = None;
            let mut ratio = f64::INFINITY;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if a > PIVOT_EPS {
                    let q = self.rhs(i).max(0.0) / a;
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            q < ratio - 1e-14 || (q <= ratio + 1e-14 && self.basis[i] < self.basis[l])
                        }
                    };
                    if better {
                        leave = Some(i);
                        ratio = q;
                    }
                }
            }
            let Some(r) = leave else { return Ok(false) };
            degenerate = if ratio == 0.0 { degenerate + 1 } else { 0 };
            self.pivot(r, c);
            *pivots += 1;
        }
    }
}

/// Solves `min cᵀz s.t. Az = b, z ≥ 0`.
pub fn solve(a: &Matrix, b: &Vector, c: &Vector) -> Result<Outcome> {
    let (m, n) = a.shape();
    let cols = n + m;
    let w = cols + 1;
    let scale = a.amax().max(b.amax()).max(1.0);
    let mut data = vec![0.0; (m + 1) * w];
    let mut sign = vec![1.0; m];
    for i in 0..m {
        if b[i] < 0.0 {
            sign[i] = -1.0;
        }
        for j in 0..n {
            data[i * w + j] = sign[i] * a[(i, j)];
        }
        data[i * w + n + i] = 1.0;
        data[i * w + cols] = sign[i] * b[i];
    }
    let mut t = Tableau { rows: m, cols, data, basis: (n..n + m).collect() };
    let limit = 50 * (n + m) + 1000;
    let mut pivots = 0;

    let mut phase1 = vec![0.0; cols];
    phase1[n..].iter_mut().for_each(|x| *x = 1.0);
    t.set_costs(&phase1);
    t.iterate(cols, &mut pivots, limit)?;
    let infeas: f64 = (0..m).filter(|&i| t.basis[i] >= n).map(|i| t.rhs(i)).sum();
    if infeas > 1e-9 * scale {
        return Ok(Outcome::Infeasible);
    }
    // drive remaining artificials out of the basis where possible
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t.at(i, j).abs() > 1e-9) {
                t.pivot(i, j);
                pivots += 1;
            }
        }
    }

    let mut cost = vec![0.0; cols];
    cost[..n].copy_from_slice(c.as_slice());
    t.set_costs(&cost);
    if !t.iterate(n, &mut pivots, limit)? {
        return Ok(Outcome::Unbounded);
    }

    // Recompute x_B and duals from the original data on the final basis.
    let structural: Vec<(usize, usize)> =
        (0..m).filter(|&i| t.basis[i] < n).map(|i| (i, t.basis[i])).collect();
    let mut x = Vector::zeros(n);
    let mut duals = Vector::zeros(m);
    if structural.len() == m {
        let basis_mat = Matrix::from_fn(m, m, |i, k| a[(i, structural[k].1)]);
        let lu = basis_mat.clone().lu();
        match (lu.solve(b), basis_mat.transpose().lu().solve(&Vector::from_fn(m, |k, _| c[structural[k].1]))) {
            (Some(xb), Some(y)) if xb.iter().all(|v| *v >= -1e-9 * scale) => {
                for (k, &(_, j)) in structural.iter().enumerate() {
                    x[j] = xb[k].max(0.0);
                }
                duals = y;
            }
            _ => tableau_solution(&t, n, &sign, c, &mut x, &mut duals),
        }
    } else {
        tableau_solution(&t, n, &sign, c, &mut x, &mut duals);
    }
    let objective = c.dot(&x);
    Ok(Outcome::Optimal(Solution { x, objective, duals, pivots }))
}

fn tableau_solution(t: &Tableau, n: usize, sign: &[f64], c: &Vector, x: &mut Vector, y: &mut Vector) {
    let m = t.rows;
    x.fill(0.0);
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs(i).max(0.0);
        }
    }
    // y_k = c_Bᵀ B⁻¹ e_k, B⁻¹ sits in the artificial columns
    for k in 0..m {
        let mut s = 0.0;
        for i in 0..m {
            let bi = t.basis[i];
            if bi < n {
                s += c[bi] * t.at(i, n + k);
            }
        }
        y[k] = s * sign[k];
    }
}
