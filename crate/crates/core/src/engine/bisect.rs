use serde::{Deserialize, Serialize};

use super::algorithm::run_with_family;
use super::{discretize, AlgorithmReport, EngineConfig, Termination};
use crate::numlin::symmetric_part_range;
use crate::oracle::best_periodic_lower_bound;
use crate::sysmodel::{FiniteSwitchingLaw, RestrictedSystem};
use crate::{Error, Result};

/// Bounds from the logarithmic norms: every trajectory satisfies
/// `e^{lo t}|x0| ≤ |x(t)| ≤ e^{hi t}|x0|` in the Euclidean norm.
pub fn log_norm_bracket(sys: &RestrictedSystem) -> (f64, f64) {
    sys.modes().iter().map(symmetric_part_range).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| {
        (lo.min(a), hi.max(b))
    })
}

/// One run of the construction on `{A_j - αI}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub alpha: f64,
    pub termination: Termination,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub iterations: usize,
    pub len_p: Vec<usize>,
    pub lo_after: f64,
    pub hi_after: f64,
}

/// Certified interval `[lo, hi]` for the exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BisectionReport {
    pub lo: f64,
    pub hi: f64,
    /// Periodizable law whose spectral bound equals `lo`, if `lo` does not
    /// come from the logarithmic norm bracket.
    pub lower_law: Option<FiniteSwitchingLaw>,
    /// Shift and run that produced `hi`; the run's polytopes give a
    /// Lyapunov multinorm for `{A_j - hi·I}`.
    pub upper_shift: Option<f64>,
    pub upper_report: Option<AlgorithmReport>,
    pub probes: Vec<ProbeSummary>,
    pub converged: bool,
    pub target_width: f64,
}

impl BisectionReport {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Options of [`bisect_sigma`].
#[derive(Debug, Clone, PartialEq)]
pub struct BisectOptions {
    pub target_width: f64,
    pub max_probes: usize,
    /// Seed the lower end with two-leg laws on the duration endpoints.
    pub endpoint_laws: bool,
    /// Stop as soon as the interval excludes zero.
    pub stop_on_sign: bool,
}

impl Default for BisectOptions {
    fn default() -> Self {
        BisectOptions { target_width: 0.01, max_probes: 40, endpoint_laws: true, stop_on_sign: false }
    }
}

impl BisectOptions {
    pub fn width(target_width: f64) -> Self {
        BisectOptions { target_width, ..Self::default() }
    }
}

/// Brackets the exponent by runs on shifted systems. Every run contributes
/// its law bound `α + μ` to the lower end and its certificate `α + ν` to
/// the upper end. Stops when the target width is reached, the probe budget
/// is spent or two probes in a row make no progress; `converged` tells
/// which.
pub fn bisect_sigma(sys: &RestrictedSystem, cfg: &EngineConfig, opts: &BisectOptions) -> Result<BisectionReport> {
    cfg.validate()?;
    if !(opts.target_width > 0.0) {
        return Err(Error::InvalidArgument("target width must be positive".into()));
    }
    let fam = discretize(sys, cfg.n_grid)?;
    let (mut lo, mut hi) = log_norm_bracket(sys);
    let mut lower_law = None;
    if opts.endpoint_laws {
        let seed = best_periodic_lower_bound(sys, 2, 2)?;
        if let Some(law) = seed.law {
            if seed.bound > lo {
                lo = seed.bound;
                lower_law = Some(law);
            }
        }
    }
    let mut upper_shift = None;
    let mut upper_report = None;
    let mut probes = Vec::new();
    let mut nu_est: f64 = 0.0;
    let mut stalls = 0;
    let decided = |lo: f64, hi: f64| opts.stop_on_sign && (lo > 0.0 || hi < 0.0);
    while hi - lo > opts.target_width && probes.len() < opts.max_probes && stalls < 2 && !decided(lo, hi) {
        let mid = 0.5 * (lo + hi) + 0.5 * (cfg.delta - nu_est);
        let alpha = mid.clamp(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo));
        let shifted = sys.shifted(alpha);
        let report = run_with_family(&shifted, &fam.shifted(alpha), cfg)?;
        let (lo0, hi0) = (lo, hi);
        if let Some(law) = &report.mu_law {
            let bound = sys.law_lower_bound(law)?;
            if bound > lo {
                lo = bound;
                lower_law = Some(law.clone());
            }
        }
        if let Some(nu) = report.nu {
            nu_est = nu;
            if alpha + nu < hi {
                hi = alpha + nu;
                upper_shift = Some(alpha);
                upper_report = Some(report.clone());
            }
        }
        let gained = (lo - lo0) + (hi0 - hi);
        stalls = if gained > 1e-3 * opts.target_width { 0 } else { stalls + 1 };
        probes.push(ProbeSummary {
            alpha,
            termination: report.termination,
            mu: report.mu,
            nu: report.nu,
            iterations: report.iterations,
            len_p: report.len_p.clone(),
            lo_after: lo,
            hi_after: hi,
        });
    }
    Ok(BisectionReport {
        lo,
        hi,
        lower_law,
        upper_shift,
        upper_report,
        probes,
        converged: hi - lo <= opts.target_width,
        target_width: opts.target_width,
    })
}
