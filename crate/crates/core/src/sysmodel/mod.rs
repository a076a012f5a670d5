//! Restricted switching systems and finite switching laws.
//!
//! Modes are indexed from 0 in the API. The JSON law format uses 1-based
//! indices, matching the usual mathematical notation.

mod io;

pub use io::{BoundJson, LawFile, MatrixJson, SystemFile};

use serde::{Deserialize, Serialize};

use crate::numlin::{expm, spectral_abscissa, spectral_radius, Matrix, Vector};
use crate::{Error, Result};

/// `ẋ = A(t)x` where mode `j` must stay active for a time in
/// `[lower[j], upper[j]]` before switching to a different mode.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedSystem {
    modes: Vec<Matrix>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

/// One piece of a piecewise constant switching law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Leg {
    pub mode: usize,
    pub duration: f64,
}

/// Ordered list of legs, earliest first. Serializes in the 1-based law
/// format.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(into = "LawFile", try_from = "LawFile")]
pub struct FiniteSwitchingLaw {
    pub legs: Vec<Leg>,
}

/// `Π(T)` for a finite law together with `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeProduct {
    pub matrix: Matrix,
    pub total_time: f64,
}

/// Sampled trajectory `x(t) = Π(t)x0`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

impl RestrictedSystem {
    pub fn new(modes: Vec<Matrix>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = modes.len();
        if n < 2 {
            return Err(Error::InvalidSystem(format!("need at least two modes, got {n}")));
        }
        if lower.len() != n || upper.len() != n {
            return Err(Error::InvalidSystem(format!(
                "{n} modes but {} lower and {} upper bounds",
                lower.len(),
                upper.len()
            )));
        }
        let d = modes[0].nrows();
        if d == 0 {
            return Err(Error::InvalidSystem("zero-dimensional mode".into()));
        }
        for (j, a) in modes.iter().enumerate() {
            if a.nrows() != d || a.ncols() != d {
                return Err(Error::InvalidSystem(format!(
                    "mode {} is {}x{}, expected {d}x{d}",
                    j + 1,
                    a.nrows(),
                    a.ncols()
                )));
            }
            if !a.iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidSystem(format!("mode {} has non-finite entries", j + 1)));
            }
            let (m, big_m) = (lower[j], upper[j]);
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::InvalidSystem(format!("mode {}: lower bound {m} must be positive", j + 1)));
            }
            if big_m.is_nan() || big_m <= m {
                return Err(Error::InvalidSystem(format!(
                    "mode {}: upper bound {big_m} must exceed lower bound {m}",
                    j + 1
                )));
            }
        }
        Ok(RestrictedSystem { modes, lower, upper })
    }

    /// Same bounds `[m, M]` for every mode.
    pub fn uniform(modes: Vec<Matrix>, m: f64, big_m: f64) -> Result<Self> {
        let n = modes.len();
        Self::new(modes, vec![m; n], vec![big_m; n])
    }

    pub fn dim(&self) -> usize {
        self.modes[0].nrows()
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[Matrix] {
        &self.modes
    }

    pub fn mode(&self, j: usize) -> &Matrix {
        &self.modes[j]
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn has_finite_bounds(&self) -> bool {
        self.upper.iter().all(|m| m.is_finite())
    }

    /// First mode with `M_j = +∞`.
    pub fn first_infinite(&self) -> Option<usize> {
        self.upper.iter().position(|m| !m.is_finite())
    }

    /// The system `{A_j - αI}` with the same bounds. Its exponent is
    /// `σ(S) - α`.
    pub fn shifted(&self, alpha: f64) -> Self {
        let d = self.dim();
        let shift = Matrix::identity(d, d) * alpha;
        RestrictedSystem {
            modes: self.modes.iter().map(|a| a - &shift).collect(),
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }

    /// Copy with a new upper bound for mode `j`.
    pub fn with_upper(&self, j: usize, big_m: f64) -> Result<Self> {
        let mut upper = self.upper.clone();
        upper[j] = big_m;
        Self::new(self.modes.clone(), self.lower.clone(), upper)
    }

    /// Whether every mode matrix is Metzler (nonnegative off-diagonal).
    pub fn is_metzler(&self) -> bool {
        self.modes.iter().all(|a| {
            (0..a.nrows()).all(|i| (0..a.ncols()).all(|k| i == k || a[(i, k)] >= 0.0))
        })
    }

    pub fn max_mode_abscissa(&self) -> f64 {
        self.modes.iter().map(spectral_abscissa).fold(f64::NEG_INFINITY, f64::max)
    }

    /// True iff all legs respect the bounds and consecutive modes differ.
    pub fn is_admissible(&self, law: &FiniteSwitchingLaw) -> bool {
        let n = self.n_modes();
        let mut prev = None;
        for leg in &law.legs {
            if leg.mode >= n || prev == Some(leg.mode) {
                return false;
            }
            let (m, big_m) = (self.lower[leg.mode], self.upper[leg.mode]);
            let slack = 1e-12 * m.max(1.0);
            if !(leg.duration >= m - slack && leg.duration <= big_m + slack) {
                return false;
            }
            prev = Some(leg.mode);
        }
        true
    }

    /// `Π(T) = e^{s_K A_{j_K}} ⋯ e^{s_1 A_{j_1}}`.
    pub fn product(&self, law: &FiniteSwitchingLaw) -> Result<ModeProduct> {
        let d = self.dim();
        let mut matrix = Matrix::identity(d, d);
        let mut total_time = 0.0;
        for leg in &law.legs {
            if leg.mode >= self.n_modes() {
                return Err(Error::InvalidLaw(format!("mode index {} out of range", leg.mode + 1)));
            }
            matrix = expm(&self.modes[leg.mode], leg.duration)? * matrix;
            total_time += leg.duration;
        }
        Ok(ModeProduct { matrix, total_time })
    }

    /// `T⁻¹ ln ρ(Π(T))`, a lower bound for the exponent whenever the law
    /// is admissible and periodizable.
    pub fn law_lower_bound(&self, law: &FiniteSwitchingLaw) -> Result<f64> {
        if !self.is_admissible(law) {
            return Err(Error::InvalidLaw("law is not admissible".into()));
        }
        if !law.is_periodizable() {
            return Err(Error::NotPeriodizable);
        }
        let p = self.product(law)?;
        Ok(spectral_radius(&p.matrix).ln() / p.total_time)
    }

    /// Samples `x(t)` on a uniform grid of step `sample_step` together with
    /// every switching instant.
    pub fn simulate(&self, law: &FiniteSwitchingLaw, x0: &Vector, sample_step: f64) -> Result<Trajectory> {
        if x0.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x0.len() });
        }
        if !(sample_step > 0.0 && sample_step.is_finite()) {
            return Err(Error::InvalidArgument(format!("sample step {sample_step} must be positive")));
        }
        if !self.is_admissible(law) {
            return Err(Error::InvalidLaw("law is not admissible".into()));
        }
        let mut out = Trajectory { times: vec![0.0], points: vec![x0.as_slice().to_vec()] };
        let mut t0 = 0.0;
        let mut x = x0.clone();
        for leg in &law.legs {
            let a = &self.modes[leg.mode];
            let end = t0 + leg.duration;
            let mut k = (t0 / sample_step).floor() as i64 + 1;
            loop {
                let t = k as f64 * sample_step;
                if t >= end - 1e-12 * end.max(1.0) {
                    break;
                }
                if t > t0 {
                    let y = expm(a, t - t0)? * &x;
                    out.times.push(t);
                    out.points.push(y.as_slice().to_vec());
                }
                k += 1;
            }
            x = expm(a, leg.duration)? * &x;
            out.times.push(end);
            out.points.push(x.as_slice().to_vec());
            t0 = end;
        }
        Ok(out)
    }
}

impl FiniteSwitchingLaw {
    pub fn new(legs: Vec<Leg>) -> Self {
        FiniteSwitchingLaw { legs }
    }

    /// Builds a law from `(mode, duration)` pairs with 0-based modes.
    pub fn from_pairs(pairs: &[(usize, f64)]) -> Self {
        FiniteSwitchingLaw {
            legs: pairs.iter().map(|&(mode, duration)| Leg { mode, duration }).collect(),
        }
    }

    pub fn total_time(&self) -> f64 {
        self.legs.iter().map(|l| l.duration).sum()
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }

    /// True iff the law begins and ends with different modes, so it can be
    /// repeated periodically without merging legs.
    pub fn is_periodizable(&self) -> bool {
        match (self.legs.first(), self.legs.last()) {
            (Some(a), Some(b)) => a.mode != b.mode,
            _ => false,
        }
    }

    /// The law followed by `other`.
    pub fn concat(&self, other: &FiniteSwitchingLaw) -> Self {
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        FiniteSwitchingLaw { legs }
    }

    /// Cyclic rotation by `k` legs.
    pub fn rotated(&self, k: usize) -> Self {
        let mut legs = self.legs.clone();
        if !legs.is_empty() {
            let k = k % legs.len();
            legs.rotate_left(k);
        }
        FiniteSwitchingLaw { legs }
    }

    /// `count` copies of the law back to back.
    pub fn repeated(&self, count: usize) -> Self {
        FiniteSwitchingLaw { legs: self.legs.iter().copied().cycle().take(count * self.legs.len()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::from_rows;

    fn scalar(a: f64, b: f64) -> RestrictedSystem {
        RestrictedSystem::uniform(vec![from_rows(&[&[a]]), from_rows(&[&[b]])], 1.0, 2.0).unwrap()
    }

    fn example1() -> RestrictedSystem {
        RestrictedSystem::uniform(
            vec![from_rows(&[&[1.0, 0.0], &[0.0, -3.0]]), from_rows(&[&[-3.0, 0.0], &[0.0, 1.0]])],
            1.0,
            2.0,
        )
        .unwrap()
    }

    #[test]
    fn admissibility() {
        let sys = scalar(1.0, -3.0);
        assert!(sys.is_admissible(&FiniteSwitchingLaw::from_pairs(&[(0, 2.0), (1, 1.0)])));
        assert!(!sys.is_admissible(&FiniteSwitchingLaw::from_pairs(&[(0, 0.5)])));
        assert!(!sys.is_admissible(&FiniteSwitchingLaw::from_pairs(&[(0, 1.5), (0, 1.5)])));
        assert!(!sys.is_admissible(&FiniteSwitchingLaw::from_pairs(&[(2, 1.5)])));
    }

    #[test]
    fn periodizable() {
        assert!(FiniteSwitchingLaw::from_pairs(&[(0, 2.0), (1, 1.0)]).is_periodizable());
        assert!(!FiniteSwitchingLaw::from_pairs(&[(0, 2.0)]).is_periodizable());
        assert!(!FiniteSwitchingLaw::from_pairs(&[(1, 1.0), (0, 1.5), (1, 1.0)]).is_periodizable());
        assert!(!FiniteSwitchingLaw::default().is_periodizable());
    }

    #[test]
    fn scalar_product_and_bound() {
        let sys = scalar(1.0, -3.0);
        let law = FiniteSwitchingLaw::from_pairs(&[(0, 2.0), (1, 1.0)]);
        let p = sys.product(&law).unwrap();
        assert!((p.matrix[(0, 0)] - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(p.total_time, 3.0);
        assert!((sys.law_lower_bound(&law).unwrap() + 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            sys.law_lower_bound(&FiniteSwitchingLaw::from_pairs(&[(0, 2.0)])),
            Err(Error::NotPeriodizable)
        ));
    }

    #[test]
    fn empty_law_is_identity() {
        let p = example1().product(&FiniteSwitchingLaw::default()).unwrap();
        assert_eq!(p.matrix, Matrix::identity(2, 2));
        assert_eq!(p.total_time, 0.0);
    }

    #[test]
    fn example1_products() {
        let sys = example1();
        let (s1, s2) = (1.3, 1.8);
        let p = sys.product(&FiniteSwitchingLaw::from_pairs(&[(0, s1), (1, s2)])).unwrap();
        assert!((p.matrix[(0, 0)] - (s1 - 3.0 * s2).exp()).abs() < 1e-14);
        assert!((p.matrix[(1, 1)] - (-3.0 * s1 + s2).exp()).abs() < 1e-14);
        let law = FiniteSwitchingLaw::from_pairs(&[(0, 1.0), (1, 2.0)]);
        assert!((sys.law_lower_bound(&law).unwrap() + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn simulation_hits_switch_instants() {
        let sys = example1();
        let law = FiniteSwitchingLaw::from_pairs(&[(0, 1.0), (1, 2.0)]).repeated(4);
        let tr = sys.simulate(&law, &Vector::from_column_slice(&[1.0, 1.0]), 0.25).unwrap();
        assert_eq!(*tr.times.last().unwrap(), 12.0);
        let last = tr.points.last().unwrap();
        let inf = last.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!((inf - (-4f64).exp()).abs() < 1e-14);
        assert!(tr.times.windows(2).all(|w| w[0] < w[1]));
        let zero = sys.simulate(&law, &Vector::zeros(2), 0.5).unwrap();
        assert!(zero.points.iter().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn validation() {
        assert!(RestrictedSystem::uniform(vec![from_rows(&[&[1.0]])], 1.0, 2.0).is_err());
        assert!(RestrictedSystem::uniform(vec![from_rows(&[&[1.0]]), from_rows(&[&[1.0]])], 0.0, 2.0).is_err());
        assert!(RestrictedSystem::uniform(vec![from_rows(&[&[1.0]]), from_rows(&[&[1.0]])], 2.0, 2.0).is_err());
        assert!(RestrictedSystem::uniform(vec![from_rows(&[&[1.0]]), from_rows(&[&[1.0]])], 1.0, f64::INFINITY).is_ok());
    }
}
