//! Cut-tail points of stable matrices.
//!
//! For a stable `A` and a generic `x0` let `x(t) = e^{tA}x0` and
//! `G = co{±x(t) : t ≥ 0}`. A time `T` is a cut-tail point when `x(t)` lies
//! in the interior of `G` for every `t > T`; these times form a half-line
//! `[T_cut, ∞)` that does not depend on `x0`. For `T ≠ T_cut`, `T` is a
//! cut-tail point iff the value of
//!
//! ```text
//! max p(T)   s.t.   sup_{t ≥ 0} |p(t)| ≤ 1,   p(t) = (c, x(t)),  c ∈ ℝ^d
//! ```
//!
//! is below one. That value is the gauge of `x(T)` with respect to `G`.
//!
//! [`CutTailProgram`] computes it with an exchange method. `G` is replaced by
//! the symmetrized hull of finitely many trajectory points, which gives an
//! upper estimate of the gauge. The supporting functional `c` of that LP is
//! then maximized over all `t ≥ 0` through the zeros of `p'`. Local maxima
//! above one are added as vertices until none remain. The final functional,
//! divided by `sup |p|`, is feasible for the program above. So the true value
//! lies in `[lower, upper]`.
//!
//! The search over `t` stops at the first sample `t_i` with
//! `‖c‖₂ ‖x(t_i)‖_P / √λ_min(P) ≤ 1`, where `AᵀP + PA = -I`. Since
//! `‖x(t)‖_P` is non-increasing, no later `t` can violate the constraint.

use std::f64::consts::PI;

use nalgebra::linalg::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lpcore::{membership, HullStrategy, PolytopeHull, TOL_STRICT};
use crate::numlin::{eigenvalues, expm, spectral_abscissa, Matrix, Vector};
use crate::sysmodel::RestrictedSystem;
use crate::{Error, Result};

/// Gap below one required before a program value counts as a cut-tail
/// verdict.
pub const DEFAULT_MARGIN: f64 = 1e-7;

// gap used while locating T_cut; the value leaves one quadratically in T - T_cut
const LOCATE_GAP: f64 = 1e-11;
const EXCHANGE_TOL: f64 = 1e-12;
const MAX_EXCHANGE: usize = 200;
const MAX_SAMPLES: usize = 2_000_000;
const KRYLOV_TOL: f64 = 1e-9;
const PROBE_SEED: u64 = 0x5eed_c07;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutTailMethod {
    ClosedFormReal2d,
    ClosedFormComplex2d,
    ConvexProgram,
}

/// Bounds on the program value at one time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProgramValue {
    pub t: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutTailVerdict {
    CutTail,
    NotCutTail,
    /// The value is below `1 - TOL_STRICT` but within the margin.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutTailCheck {
    pub verdict: CutTailVerdict,
    pub value: ProgramValue,
}

impl CutTailCheck {
    pub fn is_cut_tail(&self) -> bool {
        self.verdict == CutTailVerdict::CutTail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutTailResult {
    pub t_cut: f64,
    pub method: CutTailMethod,
    /// Program values bracketing `t_cut`; empty for closed forms.
    pub certificate: Vec<ProgramValue>,
}

/// Root of `(1 + e^{-α₁t})/α₁ = (1 + e^{-α₂t})/α₂` on `t > 0`.
pub fn t_cut_2d_real(a1: f64, a2: f64) -> Result<f64> {
    if !(a1 < 0.0 && a2 < 0.0 && a1.is_finite() && a2.is_finite()) || a1 == a2 {
        return Err(Error::InvalidArgument(format!(
            "real closed form needs distinct negative eigenvalues, got {a1}, {a2}"
        )));
    }
    // slow rate a, fast rate b; the equation times e^{bt} has no overflow
    let (a, b) = if a1 > a2 { (a1, a2) } else { (a2, a1) };
    let g = |t: f64| {
        let (eb, ebt) = ((b * t).exp(), ((b - a) * t).exp());
        let v = (eb + ebt) / a - (eb + 1.0) / b;
        let dv = (b * eb + (b - a) * ebt) / a - eb;
        (v, dv)
    };
    let mut hi = 1.0 / -b;
    let mut n = 0;
    while g(hi).0 <= 0.0 {
        hi *= 2.0;
        n += 1;
        if n > 200 {
            return Err(Error::RootFinding("no sign change for the real closed form".into()));
        }
    }
    newton_bisect(g, 0.0, hi)
}

/// Smallest positive root of `α sin βt + β cos βt + β e^{αt} = 0`.
pub fn t_cut_2d_complex(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha < 0.0 && alpha.is_finite() && beta.is_finite()) || beta == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "complex closed form needs alpha < 0 and beta != 0, got {alpha}, {beta}"
        )));
    }
    let b = beta.abs();
    let h = |t: f64| {
        let (s, c, e) = ((b * t).sin(), (b * t).cos(), (alpha * t).exp());
        (alpha * s + b * c + b * e, alpha * b * c - b * b * s + alpha * b * e)
    };
    // h(0) = 2β > 0 and h(π/β) = β(e^{απ/β} - 1) < 0
    let steps = 64;
    let dt = PI / b / steps as f64;
    for i in 0..steps {
        let (t0, t1) = (i as f64 * dt, (i + 1) as f64 * dt);
        if h(t1).0 <= 0.0 {
            return newton_bisect(h, t0, t1);
        }
    }
    Err(Error::RootFinding("no sign change for the complex closed form".into()))
}

// Root of f on [lo, hi] with f(lo) < 0 <= f(hi) or the reverse; f returns
// (value, derivative).
fn newton_bisect(f: impl Fn(f64) -> (f64, f64), mut lo: f64, mut hi: f64) -> Result<f64> {
    let flo = f(lo).0;
    if flo == 0.0 {
        return Ok(lo);
    }
    let rising = flo < 0.0;
    let mut t = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, t);
    for _ in 0..200 {
        let (v, dv) = f(t);
        if !v.is_finite() {
            return Err(Error::RootFinding("non-finite residual".into()));
        }
        if v.abs() < best.0 {
            best = (v.abs(), t);
        }
        if v == 0.0 || hi - lo <= 4.0 * f64::EPSILON * hi.abs() {
            break;
        }
        if (v < 0.0) == rising {
            lo = t;
        } else {
            hi = t;
        }
        let newton = t - v / dv;
        if dv != 0.0 && (newton - t).abs() <= 1e-16 * t.abs() {
            break;
        }
        t = if dv != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    Ok(best.1)
}

/// The extremal program for one matrix. Keeps the trajectory samples and the
/// hull between calls, so repeated evaluations only refine it.
#[derive(Debug, Clone)]
pub struct CutTailProgram {
    a: Matrix,
    y0: Vector,
    p: Matrix,
    lam_min: f64,
    step: f64,
    step_map: Matrix,
    samples: Vec<Vector>,
    hull: Option<PolytopeHull>,
    hull_times: Vec<f64>,
}

impl CutTailProgram {
    pub fn new(a: &Matrix) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(Error::InvalidArgument("cut-tail analysis needs a nonempty square matrix".into()));
        }
        let abscissa = spectral_abscissa(a);
        if !(abscissa < 0.0) {
            return Err(Error::NotStable { abscissa });
        }
        let q = generic_krylov_basis(a);
        let ar = q.transpose() * a * &q;
        let y0 = q.transpose() * &q.column(0);
        let p = lyapunov(&ar)?;
        let eig = SymmetricEigen::new(p.clone());
        let lam_min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if !(lam_min > 0.0) {
            return Err(Error::NotStable { abscissa });
        }
        let scale = ar.norm().max(abscissa.abs());
        let step = 0.02 / scale;
        let step_map = expm(&ar, step)?;
        let mut prog = CutTailProgram {
            a: ar,
            y0: y0.clone(),
            p,
            lam_min,
            step,
            step_map,
            samples: vec![y0],
            hull: None,
            hull_times: Vec::new(),
        };
        prog.init_hull()?;
        Ok(prog)
    }

    /// Dimension of the quasipolynomial space.
    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn hull_len(&self) -> usize {
        self.hull_times.len()
    }

    fn envelope(&self, y: &Vector) -> f64 {
        (y.dot(&(&self.p * y)).max(0.0) / self.lam_min).sqrt()
    }

    fn sample(&mut self, i: usize) -> Result<&Vector> {
        while self.samples.len() <= i {
            if self.samples.len() >= MAX_SAMPLES {
                return Err(Error::InvalidArgument("cut-tail search exceeded its sample budget".into()));
            }
            let next = &self.step_map * self.samples.last().expect("nonempty");
            self.samples.push(next);
        }
        Ok(&self.samples[i])
    }

    fn init_hull(&mut self) -> Result<()> {
        let e0 = self.envelope(&self.y0);
        let mut i = 0;
        loop {
            let y = self.sample(i)?.clone();
            if self.envelope(&y) <= 1e-3 * e0 {
                break;
            }
            i += 16;
        }
        let count = 64.min(i.max(1));
        let mut pts = Vec::new();
        for k in 0..=count {
            let idx = k * i / count;
            self.hull_times.push(idx as f64 * self.step);
            pts.push(self.sample(idx)?.clone());
        }
        self.hull = Some(PolytopeHull::new(HullStrategy::Symmetrized, pts)?);
        Ok(())
    }

    fn point(&self, t: f64) -> Result<Vector> {
        Ok(expm(&self.a, t)? * &self.y0)
    }

    /// Bounds on the program value at `t`.
    pub fn value(&mut self, t: f64) -> Result<ProgramValue> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("cut-tail time must be finite and >= 0, got {t}")));
        }
        let yt = self.point(t)?;
        for _ in 0..MAX_EXCHANGE {
            let hull = self.hull.as_ref().expect("initialized");
            let lp = membership(hull, &yt, TOL_STRICT)?;
            if !lp.norm.is_finite() {
                return Err(Error::DegeneratePolytope { space: 0 });
            }
            let (sup, peaks) = self.peaks(&lp.functional)?;
            let done = sup <= 1.0 + EXCHANGE_TOL;
            let fresh: Vec<f64> = peaks
                .into_iter()
                .filter(|&s| self.hull_times.iter().all(|&h| (h - s).abs() > 1e-12 * (1.0 + s)))
                .collect();
            if done || fresh.is_empty() {
                return Ok(ProgramValue { t, lower: lp.norm / sup.max(1.0), upper: lp.norm });
            }
            for s in fresh {
                let v = self.point(s)?;
                self.hull.as_mut().expect("initialized").push(v);
                self.hull_times.push(s);
            }
        }
        Err(Error::LpFailure { iterations: MAX_EXCHANGE, reason: "cut-tail exchange did not settle".into() })
    }

    // sup over t ≥ 0 of |(c, y(t))| and the local maximizers where it exceeds one
    fn peaks(&mut self, c: &Vector) -> Result<(f64, Vec<f64>)> {
        let cn = c.norm();
        let dc = self.a.transpose() * c;
        let y = self.sample(0)?.clone();
        let mut sup = c.dot(&y).abs();
        let mut peaks = Vec::new();
        if sup > 1.0 + EXCHANGE_TOL {
            peaks.push(0.0);
        }
        let mut prev_d = dc.dot(&y);
        let mut i = 0;
        loop {
            let y_next = self.sample(i + 1)?.clone();
            let d_next = dc.dot(&y_next);
            if prev_d == 0.0 || (prev_d > 0.0) != (d_next > 0.0) {
                let y_i = self.samples[i].clone();
                let s = self.derivative_root(&dc, &y_i, prev_d)?;
                let t = i as f64 * self.step + s;
                let v = c.dot(&(expm(&self.a, s)? * &y_i)).abs();
                sup = sup.max(v);
                if v > 1.0 + EXCHANGE_TOL {
                    peaks.push(t);
                }
            }
            prev_d = d_next;
            i += 1;
            if cn * self.envelope(&y_next) <= 1.0 {
                break;
            }
        }
        Ok((sup, peaks))
    }

    // zero of s ↦ (dc, e^{sA} y) on [0, step], given the sign at s = 0
    fn derivative_root(&self, dc: &Vector, y: &Vector, d0: f64) -> Result<f64> {
        if d0 == 0.0 {
            return Ok(0.0);
        }
        let (mut lo, mut hi) = (0.0, self.step);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let d = dc.dot(&(expm(&self.a, mid)? * y));
            if (d > 0.0) == (d0 > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * (1.0 + hi) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    pub fn check(&mut self, t: f64, margin: f64) -> Result<CutTailCheck> {
        let value = self.value(t)?;
        let verdict = if value.upper < 1.0 - margin {
            CutTailVerdict::CutTail
        } else if value.lower >= 1.0 - TOL_STRICT {
            CutTailVerdict::NotCutTail
        } else {
            CutTailVerdict::Inconclusive
        };
        Ok(CutTailCheck { verdict, value })
    }

    /// Locates `T_cut` by bisection on the half-line property.
    pub fn locate(&mut self, tol: f64) -> Result<CutTailResult> {
        if self.dim() == 1 {
            // a single decaying exponential: every T > 0 is a cut-tail point
            let v = self.value(0.0)?;
            return Ok(CutTailResult { t_cut: 0.0, method: CutTailMethod::ConvexProgram, certificate: vec![v] });
        }
        let past = |v: &ProgramValue| v.upper < 1.0 - LOCATE_GAP;
        let (mut lo, mut lo_val) = (0.0, self.value(0.0)?);
        let mut hi = 1.0 / self.a.norm().max(f64::MIN_POSITIVE);
        let mut hi_val = self.value(hi)?;
        let mut n = 0;
        while !past(&hi_val) {
            (lo, lo_val) = (hi, hi_val);
            hi *= 2.0;
            hi_val = self.value(hi)?;
            n += 1;
            if n > 80 {
                return Err(Error::RootFinding("no cut-tail point found".into()));
            }
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            let v = self.value(mid)?;
            if past(&v) {
                (hi, hi_val) = (mid, v);
            } else {
                (lo, lo_val) = (mid, v);
            }
        }
        Ok(CutTailResult { t_cut: 0.5 * (lo + hi), method: CutTailMethod::ConvexProgram, certificate: vec![lo_val, hi_val] })
    }
}

// Orthonormal basis of the Krylov space of a generic vector, first column
// along that vector. The largest dimension over a few probes is kept.
fn generic_krylov_basis(a: &Matrix) -> Matrix {
    let d = a.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut best: Option<Matrix> = None;
    for _ in 0..3 {
        let x = Vector::from_fn(d, |_, _| rng.random_range(-1.0..1.0));
        let q = krylov(a, &x);
        if best.as_ref().is_none_or(|b| q.ncols() > b.ncols()) {
            best = Some(q);
        }
        if best.as_ref().is_some_and(|b| b.ncols() == d) {
            break;
        }
    }
    best.expect("at least one probe")
}

fn krylov(a: &Matrix, x: &Vector) -> Matrix {
    let d = a.nrows();
    let mut cols: Vec<Vector> = vec![x.normalize()];
    while cols.len() < d {
        let mut v = a * cols.last().expect("nonempty");
        let scale = v.norm();
        for _ in 0..2 {
            for c in &cols {
                v -= c * c.dot(&v);
            }
        }
        if v.norm() <= KRYLOV_TOL * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        cols.push(v.normalize());
    }
    Matrix::from_columns(&cols)
}

// P with AᵀP + PA = -I, through the Kronecker form.
fn lyapunov(a: &Matrix) -> Result<Matrix> {
    let k = a.nrows();
    let at = a.transpose();
    let id = Matrix::identity(k, k);
    let op = id.kronecker(&at) + at.kronecker(&id);
    let rhs = Vector::from_fn(k * k, |i, _| if i % (k + 1) == 0 { -1.0 } else { 0.0 });
    let sol = op
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidArgument("Lyapunov equation is singular".into()))?;
    let p = Matrix::from_column_slice(k, k, sol.as_slice());
    Ok((&p + p.transpose()) * 0.5)
}

/// Decides whether `t` is a cut-tail point of `a`.
pub fn is_cut_tail(a: &Matrix, t: f64, margin: f64) -> Result<CutTailCheck> {
    CutTailProgram::new(a)?.check(t, margin)
}

/// `T_cut(A)`: closed forms for 2×2 matrices with distinct eigenvalues, the
/// program otherwise.
pub fn find_t_cut(a: &Matrix) -> Result<CutTailResult> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::InvalidArgument("cut-tail analysis needs a nonempty square matrix".into()));
    }
    let abscissa = spectral_abscissa(a);
    if !(abscissa < 0.0) {
        return Err(Error::NotStable { abscissa });
    }
    if a.nrows() == 2 {
        let ev = eigenvalues(a);
        let scale = ev[0].norm().max(ev[1].norm());
        if ev[0].im.abs() > 1e-12 * scale {
            let t_cut = t_cut_2d_complex(ev[0].re, ev[0].im)?;
            return Ok(CutTailResult { t_cut, method: CutTailMethod::ClosedFormComplex2d, certificate: vec![] });
        }
        if (ev[0].re - ev[1].re).abs() > 1e-8 * scale {
            let t_cut = t_cut_2d_real(ev[0].re, ev[1].re)?;
            return Ok(CutTailResult { t_cut, method: CutTailMethod::ClosedFormReal2d, certificate: vec![] });
        }
    }
    CutTailProgram::new(a)?.locate(1e-7)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Simplify {
    /// Replace `M_j` by `m_j + T_cut(A_j)`.
    Reduce,
    /// Replace `M_j` by `+∞`.
    Cancel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum BoundAction {
    Reduced { from: f64, to: f64 },
    Cancelled { from: f64 },
    Unchanged { reason: String },
    SkippedUnstable { abscissa: f64 },
}

/// One entry of the change log. `mode` is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundChange {
    pub mode: usize,
    pub t_cut: Option<f64>,
    pub method: Option<CutTailMethod>,
    #[serde(flatten)]
    pub action: BoundAction,
}

#[derive(Debug, Clone)]
pub struct Simplified {
    pub system: RestrictedSystem,
    pub changes: Vec<BoundChange>,
    /// Some `M_j` is infinite, so only dwell-time methods apply.
    pub has_infinite_bounds: bool,
}

/// Rewrites the upper bounds of the stable modes whose segment length is a
/// cut-tail point. Stability and the sign of the exponent are unchanged.
pub fn simplify_bounds(sys: &RestrictedSystem, how: Simplify) -> Result<Simplified> {
    let mut upper = sys.upper().to_vec();
    let mut changes = Vec::new();
    for j in 0..sys.n_modes() {
        let a = sys.mode(j);
        let abscissa = spectral_abscissa(a);
        if abscissa >= 0.0 {
            changes.push(BoundChange {
                mode: j + 1,
                t_cut: None,
                method: None,
                action: BoundAction::SkippedUnstable { abscissa },
            });
            continue;
        }
        let r = find_t_cut(a)?;
        let (m, big_m) = (sys.lower()[j], upper[j]);
        let target = match how {
            Simplify::Reduce => m + r.t_cut,
            Simplify::Cancel => f64::INFINITY,
        };
        let action = if big_m - m < r.t_cut {
            BoundAction::Unchanged { reason: "segment shorter than T_cut".into() }
        } else if r.t_cut <= 0.0 && how == Simplify::Reduce {
            BoundAction::Unchanged { reason: "T_cut is zero".into() }
        } else if big_m == target || (big_m.is_finite() && (target - big_m).abs() <= 1e-12 * big_m.abs()) {
            BoundAction::Unchanged { reason: "already simplified".into() }
        } else {
            upper[j] = target;
            match how {
                Simplify::Reduce => BoundAction::Reduced { from: big_m, to: target },
                Simplify::Cancel => BoundAction::Cancelled { from: big_m },
            }
        };
        changes.push(BoundChange { mode: j + 1, t_cut: Some(r.t_cut), method: Some(r.method), action });
    }
    let system = RestrictedSystem::new(sys.modes().to_vec(), sys.lower().to_vec(), upper)?;
    let has_infinite_bounds = !system.has_finite_bounds();
    Ok(Simplified { system, changes, has_infinite_bounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::from_rows;

    #[test]
    fn real_closed_form_matches_log_formula() {
        let t = t_cut_2d_real(-1.0, -2.0).unwrap();
        assert!((t - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
        assert_eq!(t, t_cut_2d_real(-2.0, -1.0).unwrap());
    }

    #[test]
    fn real_closed_form_one_three() {
        let t = t_cut_2d_real(-1.0, -3.0).unwrap();
        let r = 3.0 * (1.0 + t.exp()) - (1.0 + (3.0 * t).exp());
        assert!(r.abs() < 1e-10, "{r}");
        // u³ - 3u - 2 = (u - 2)(u + 1)² with u = e^t
        assert!((t - 2f64.ln()).abs() < 1e-12, "{t}");
    }

    #[test]
    fn complex_closed_form() {
        let t = t_cut_2d_complex(-1.0, 1.0).unwrap();
        assert!((1.0..1.1).contains(&t));
        assert!((-t.sin() + t.cos() + (-t).exp()).abs() < 1e-12);
        let c = 2.5;
        let s = t_cut_2d_complex(-1.0 / c, 1.0 / c).unwrap() / c;
        assert!((s - t).abs() < 1e-12, "{s} {t}");
    }

    #[test]
    fn preconditions() {
        assert!(t_cut_2d_real(-1.0, -1.0).is_err());
        assert!(t_cut_2d_real(1.0, -1.0).is_err());
        assert!(t_cut_2d_complex(0.0, 1.0).is_err());
        assert!(matches!(find_t_cut(&from_rows(&[&[0.1, 0.0], &[0.0, -1.0]])), Err(Error::NotStable { .. })));
    }

    #[test]
    fn program_agrees_with_real_closed_form() {
        let a = from_rows(&[&[-1.0, 0.0], &[0.0, -2.0]]);
        let r = CutTailProgram::new(&a).unwrap().locate(1e-8).unwrap();
        assert!((r.t_cut - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-4, "{}", r.t_cut);
    }

    #[test]
    fn program_agrees_with_complex_closed_form() {
        let a = from_rows(&[&[-1.0, 1.0], &[-1.0, -1.0]]);
        let exact = t_cut_2d_complex(-1.0, 1.0).unwrap();
        let r = CutTailProgram::new(&a).unwrap().locate(1e-8).unwrap();
        assert!((r.t_cut - exact).abs() < 1e-4, "{} vs {exact}", r.t_cut);
    }

    #[test]
    fn verdicts_around_t_cut() {
        let a = from_rows(&[&[-1.0, 0.0], &[0.0, -2.0]]);
        let t = (1.0 + 2f64.sqrt()).ln();
        let mut p = CutTailProgram::new(&a).unwrap();
        assert!(p.check(2.0 * t, DEFAULT_MARGIN).unwrap().is_cut_tail());
        let c = p.check(0.5 * t, DEFAULT_MARGIN).unwrap();
        assert_eq!(c.verdict, CutTailVerdict::NotCutTail, "{c:?}");
        assert_eq!(p.check(0.0, DEFAULT_MARGIN).unwrap().verdict, CutTailVerdict::NotCutTail);
    }

    #[test]
    fn scalar_multiple_of_identity_has_zero_t_cut() {
        let a = Matrix::identity(3, 3) * -2.0;
        let r = find_t_cut(&a).unwrap();
        assert_eq!(r.t_cut, 0.0);
    }

    #[test]
    fn reduce_and_cancel() {
        let a = from_rows(&[&[-1.0, 0.0], &[0.0, -2.0]]);
        let b = from_rows(&[&[0.5, 0.0], &[0.0, -2.0]]);
        let sys = RestrictedSystem::uniform(vec![a, b], 1.0, 5.0).unwrap();
        let r = simplify_bounds(&sys, Simplify::Reduce).unwrap();
        assert!((r.system.upper()[0] - (1.0 + (1.0 + 2f64.sqrt()).ln())).abs() < 1e-9);
        assert_eq!(r.system.upper()[1], 5.0);
        assert!(matches!(r.changes[1].action, BoundAction::SkippedUnstable { .. }));
        assert!(!r.has_infinite_bounds);
        let c = simplify_bounds(&sys, Simplify::Cancel).unwrap();
        assert!(c.system.upper()[0].is_infinite() && c.has_infinite_bounds);
        let short = RestrictedSystem::uniform(sys.modes().to_vec(), 1.0, 1.5).unwrap();
        let u = simplify_bounds(&short, Simplify::Reduce).unwrap();
        assert!(matches!(u.changes[0].action, BoundAction::Unchanged { .. }));
    }
}
