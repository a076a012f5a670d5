use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{discretize, DiscretizedFamily, EngineConfig, StartSpace};
use crate::lpcore::{essential_vertices, membership, operator_norm, point_norm, HullStrategy, PolytopeHull, Verdict};
use crate::numlin::{dominant_direction, expm, spectral_abscissa, spectral_radius, Matrix, Vector};
use crate::oracle::best_periodic_lower_bound;
use crate::sysmodel::{FiniteSwitchingLaw, Leg, RestrictedSystem};
use crate::{Error, Result};

const DEDUP_REL: f64 = 1e-10;

/// A vertex of one of the polytopes together with the law that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub point: Vec<f64>,
    /// 0-based space index.
    pub space: usize,
    pub birth_time: f64,
    /// Legs applied to the starting point, earliest first.
    pub history: FiniteSwitchingLaw,
    /// Grid index `s` of every leg, so `duration = m_j + s τ_j`.
    pub grid: Vec<usize>,
    /// `Π(0, birth_time)` as a list of rows.
    pub cumulative: Vec<Vec<f64>>,
}

/// Vertex sets of all spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiPolytope {
    pub strategy: HullStrategy,
    pub spaces: Vec<Vec<VertexRecord>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// `μ > -δ`: the exponent is at least `μ`.
    UnstableCandidate,
    /// No alive points: the polytopes define a Lyapunov multinorm.
    LyapunovCertificate,
    /// Iteration or vertex budget exhausted.
    Interrupted,
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmReport {
    pub termination: Termination,
    /// Best spectral bound over the periodizable sub-laws met; a lower bound
    /// for the exponent.
    pub mu: Option<f64>,
    pub mu_law: Option<FiniteSwitchingLaw>,
    /// Certified upper bound for the exponent: the smaller of `nu_formula`
    /// and `nu_refined`.
    pub nu: Option<f64>,
    /// `-(1/m) ln(1 - (M-m)²‖A²‖_P/(8N²))`, increased by `ln θ / m` when
    /// some image was accepted slightly outside the polytopes.
    pub nu_formula: Option<f64>,
    /// Bound from operator norms evaluated on a grid `refine` times finer
    /// than the generator grid.
    pub nu_refined: Option<f64>,
    /// Largest polytope norm of a point surviving the extra sweep of an
    /// interrupted run.
    pub gamma: Option<f64>,
    /// Largest polytope norm of a generated point that was not added as a
    /// vertex. Below 1 unless near-duplicate boundary points were merged.
    pub theta: f64,
    /// `max_j ‖A_j²‖_{P_j}`.
    pub a2_norm: Option<f64>,
    pub iterations: usize,
    pub vertex_counts: Vec<usize>,
    /// Number of essential vertices per space. For symmetrized hulls this is
    /// half the vertex count of `co{V, -V}`.
    pub len_p: Vec<usize>,
    pub lp_solves: usize,
    pub irreducible: bool,
    pub full_dimensional: bool,
    /// 0-based.
    pub start_space: usize,
    pub start_point: Vec<f64>,
    pub config: EngineConfig,
    pub warnings: Vec<String>,
    pub polytopes: MultiPolytope,
}

impl AlgorithmReport {
    pub fn lower_bound(&self) -> Option<f64> {
        self.mu
    }

    pub fn upper_bound(&self) -> Option<f64> {
        self.nu
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl MultiPolytope {
    pub fn hull(&self, j: usize) -> Result<PolytopeHull> {
        PolytopeHull::new(
            self.strategy,
            self.spaces[j].iter().map(|r| Vector::from_column_slice(&r.point)).collect(),
        )
    }

    pub fn vertex_counts(&self) -> Vec<usize> {
        self.spaces.iter().map(Vec::len).collect()
    }
}

/// Discretizes `sys` and runs the construction.
pub fn run_algorithm1(sys: &RestrictedSystem, cfg: &EngineConfig) -> Result<AlgorithmReport> {
    cfg.validate()?;
    let fam = discretize(sys, cfg.n_grid)?;
    run_with_family(sys, &fam, cfg)
}

impl DiscretizedFamily {
    /// Generators of the shifted system `{A_j - αI}`: each one is scaled by
    /// `e^{-α (m_j + s τ_j)}`.
    pub fn shifted(&self, alpha: f64) -> DiscretizedFamily {
        let mut out = self.clone();
        for (gs, ds) in out.generators.iter_mut().zip(&self.durations) {
            for (g, &dur) in gs.iter_mut().zip(ds) {
                *g *= (-alpha * dur).exp();
            }
        }
        for (b, ds) in out.b.iter_mut().zip(&self.durations) {
            *b *= (-alpha * ds[0]).exp();
        }
        out
    }
}

struct Node {
    point: Vector,
    time: f64,
    steps: Vec<(usize, usize)>,
    cumulative: Matrix,
}

struct State<'a> {
    sys: &'a RestrictedSystem,
    fam: &'a DiscretizedFamily,
    cfg: &'a EngineConfig,
    start_space: usize,
    nodes: Vec<Vec<Node>>,
    hulls: Vec<Option<PolytopeHull>>,
    mu: Option<f64>,
    mu_law: Option<FiniteSwitchingLaw>,
    theta: f64,
    lp_solves: usize,
}

// Outcome of testing one generated point.
struct Probe {
    verdict: Verdict,
    norm: f64,
}

impl State<'_> {
    fn classify(&self, j: usize, x: &Vector) -> Result<Probe> {
        match &self.hulls[j] {
            None => Ok(Probe { verdict: Verdict::Exterior, norm: f64::INFINITY }),
            Some(h) => {
                let r = membership(h, x, self.cfg.tol_strict)?;
                Ok(Probe { verdict: r.verdict, norm: r.norm })
            }
        }
    }

    fn is_duplicate(&self, j: usize, x: &Vector) -> bool {
        let scale = x.norm();
        let sym = self.cfg.hull == HullStrategy::Symmetrized;
        self.nodes[j].iter().any(|n| {
            (&n.point - x).norm() <= DEDUP_REL * scale || (sym && (&n.point + x).norm() <= DEDUP_REL * scale)
        })
    }

    fn child(&self, q: usize, idx: usize, j: usize, s: usize) -> Node {
        let parent = &self.nodes[q][idx];
        let g = &self.fam.generators[j][s];
        let mut point = g * &parent.point;
        if self.cfg.hull == HullStrategy::Positive {
            point.iter_mut().for_each(|v| *v = v.max(0.0));
        }
        let mut steps = parent.steps.clone();
        steps.push((j, s));
        Node {
            point,
            time: parent.time + self.fam.durations[j][s],
            steps,
            cumulative: g * &parent.cumulative,
        }
    }

    fn add(&mut self, j: usize, node: Node) -> usize {
        match &mut self.hulls[j] {
            Some(h) => h.push(node.point.clone()),
            None => {
                self.hulls[j] = Some(PolytopeHull::new(self.cfg.hull, vec![node.point.clone()]).expect("valid vertex"))
            }
        }
        self.nodes[j].push(node);
        self.nodes[j].len() - 1
    }

    // Spectral bounds of all sub-laws running from a switch out of space j
    // to the end of the history (the start counts as a switch out of the
    // start space).
    fn update_mu(&mut self, j: usize, node: &Node) {
        let steps = &node.steps;
        let k = steps.len();
        if k == 0 {
            return;
        }
        let gen = |(mode, s): (usize, usize)| &self.fam.generators[mode][s];
        let dur = |(mode, s): (usize, usize)| self.fam.durations[mode][s];
        let mut p = gen(steps[k - 1]).clone();
        let mut span = dur(steps[k - 1]);
        let mut best: Option<(f64, usize)> = None;
        for i in (0..k).rev() {
            // p = product of legs i..k (0-based), span = their total time
            let switched_out = if i == 0 { self.start_space == j } else { steps[i - 1].0 == j };
            if switched_out {
                let r = spectral_radius(&p);
                if r > 0.0 && r.is_finite() {
                    let bound = r.ln() / span;
                    if best.is_none_or(|(b, _)| bound > b) {
                        best = Some((bound, i));
                    }
                }
            }
            if i > 0 {
                p = &p * gen(steps[i - 1]);
                span += dur(steps[i - 1]);
                if !p.iter().all(|v| v.is_finite()) {
                    break;
                }
            }
        }
        if let Some((bound, i)) = best {
            if self.mu.is_none_or(|m| bound > m) {
                self.mu = Some(bound);
                self.mu_law = Some(FiniteSwitchingLaw::new(
                    steps[i..].iter().map(|&(mode, s)| Leg { mode, duration: dur((mode, s)) }).collect(),
                ));
            }
        }
    }

    fn unstable(&self) -> bool {
        self.mu.is_some_and(|m| m > -self.cfg.delta)
    }

    fn total_vertices(&self) -> usize {
        self.nodes.iter().map(Vec::len).sum()
    }

    fn candidates(&self, alive: &[Vec<usize>], j: usize) -> Vec<(usize, usize, usize)> {
        let n_grid = self.fam.n_grid;
        let mut out = Vec::new();
        for (q, idxs) in alive.iter().enumerate() {
            if q == j {
                continue;
            }
            for &idx in idxs {
                for s in 0..=n_grid {
                    out.push((q, idx, s));
                }
            }
        }
        out
    }

    // One iteration of the main loop. Returns the new alive sets, or None if
    // the run stopped with `μ > -δ`.
    fn sweep(&mut self, alive: &[Vec<usize>]) -> Result<Option<Vec<Vec<usize>>>> {
        let n = self.sys.n_modes();
        let mut next = vec![Vec::new(); n];
        for j in 0..n {
            let cands = self.candidates(alive, j);
            if self.cfg.parallel {
                let snapshot = &*self;
                let probed = cands
                    .par_iter()
                    .map(|&(q, idx, s)| {
                        let node = snapshot.child(q, idx, j, s);
                        let probe = snapshot.classify(j, &node.point)?;
                        Ok((node, probe))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.lp_solves += probed.len();
                for (node, probe) in probed {
                    if self.accept(j, node, probe, &mut next) {
                        return Ok(None);
                    }
                }
            } else {
                for (q, idx, s) in cands {
                    let node = self.child(q, idx, j, s);
                    let probe = self.classify(j, &node.point)?;
                    self.lp_solves += 1;
                    if self.accept(j, node, probe, &mut next) {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(next))
    }

    // Records a probed point; returns true when the run must stop.
    fn accept(&mut self, j: usize, node: Node, probe: Probe, next: &mut [Vec<usize>]) -> bool {
        if probe.verdict == Verdict::Interior || self.is_duplicate(j, &node.point) {
            self.theta = self.theta.max(probe.norm);
            return false;
        }
        self.update_mu(j, &node);
        let id = self.add(j, node);
        next[j].push(id);
        self.unstable()
    }

    // Extra sweep of an interrupted run against frozen polytopes. Returns
    // the largest norm among surviving points, or None if nothing survived.
    fn final_sweep(&mut self, alive: &[Vec<usize>]) -> Result<Option<f64>> {
        let n = self.sys.n_modes();
        let mut gamma: Option<f64> = None;
        for j in 0..n {
            let cands = self.candidates(alive, j);
            let snapshot = &*self;
            let probed: Vec<(Node, Probe)> = if self.cfg.parallel {
                cands
                    .par_iter()
                    .map(|&(q, idx, s)| {
                        let node = snapshot.child(q, idx, j, s);
                        let p = snapshot.classify(j, &node.point)?;
                        Ok((node, p))
                    })
                    .collect::<Result<_>>()?
            } else {
                cands
                    .iter()
                    .map(|&(q, idx, s)| {
                        let node = snapshot.child(q, idx, j, s);
                        let p = snapshot.classify(j, &node.point)?;
                        Ok((node, p))
                    })
                    .collect::<Result<_>>()?
            };
            self.lp_solves += probed.len();
            for (node, probe) in probed {
                if probe.verdict == Verdict::Interior {
                    self.theta = self.theta.max(probe.norm);
                } else {
                    gamma = Some(gamma.map_or(probe.norm, |g: f64| g.max(probe.norm)));
                    self.update_mu(j, &node);
                }
            }
        }
        Ok(gamma)
    }

    fn hulls_full(&self) -> bool {
        self.hulls.iter().all(|h| h.as_ref().is_some_and(|h| h.is_full_dimensional()))
    }

    // Upper bounds from the current polytopes, given that every generator
    // maps each vertex to a point of norm at most `growth`.
    fn upper_bound(&self, reduced: &[Option<PolytopeHull>], growth: f64, warnings: &mut Vec<String>) -> Result<Upper> {
        let mut out = Upper::default();
        if !self.hulls_full() {
            let bad: Vec<String> = (0..self.hulls.len())
                .filter(|&j| !self.hulls[j].as_ref().is_some_and(|h| h.is_full_dimensional()))
                .map(|j| (j + 1).to_string())
                .collect();
            warnings.push(format!(
                "polytopes of spaces {} are not full-dimensional; no upper bound",
                bad.join(", ")
            ));
            return Ok(out);
        }
        let hulls: Vec<&PolytopeHull> = reduced.iter().map(|h| h.as_ref().expect("checked")).collect();
        let a2: Vec<f64> = (0..hulls.len())
            .map(|j| {
                let a = self.sys.mode(j);
                operator_norm(hulls[j], &(a * a))
            })
            .collect::<Result<_>>()?;
        let a2_max = a2.iter().copied().fold(0.0, f64::max);
        out.a2 = Some(a2_max);
        if growth.is_finite() {
            let log_growth = growth.max(1.0).ln();
            let mut nu = f64::NEG_INFINITY;
            for j in 0..self.sys.n_modes() {
                let (m, big_m) = (self.sys.lower()[j], self.sys.upper()[j]);
                match super::nu_bound(m, big_m, self.fam.n_grid, a2_max) {
                    Ok(v) => nu = nu.max(v + log_growth / m),
                    Err(e) => {
                        warnings.push(format!("{e}; increase N"));
                        nu = f64::NAN;
                        break;
                    }
                }
            }
            out.formula = (!nu.is_nan()).then_some(nu);
        }
        if self.cfg.refine > 0 {
            out.refined = self.refined_bound(&hulls, &a2)?;
        }
        Ok(out)
    }

    // Per mode j: θ_j = max ‖e^{(m_j+t)A_j} v‖_{P_j} over vertices v of the
    // other spaces and t on the refined grid, then the chord bound over the
    // remaining gaps of length h gives ρ_j = θ_j / (1 - h²‖A_j²‖_{P_j}/8) as
    // a bound on the norm of a whole leg. A leg of mode j multiplies norms by
    // at most ρ_j and lasts between m_j and M_j.
    fn refined_bound(&self, hulls: &[&PolytopeHull], a2: &[f64]) -> Result<Option<f64>> {
        let n = self.sys.n_modes();
        let mut rate = f64::NEG_INFINITY;
        for j in 0..n {
            let a = self.sys.mode(j);
            let r = refine_steps(self.cfg.refine, self.fam.tau[j], a2[j]);
            let h = self.fam.tau[j] / r as f64;
            let c = h * h * a2[j] / 8.0;
            if c >= 1.0 {
                return Ok(None);
            }
            let mut maps = Vec::with_capacity(self.fam.n_grid * r + 1);
            for s in 0..self.fam.n_grid {
                let g = &self.fam.generators[j][s];
                maps.push(g.clone());
                for i in 1..r {
                    maps.push(expm(a, i as f64 * h)? * g);
                }
            }
            maps.push(self.fam.generators[j][self.fam.n_grid].clone());
            let points: Vec<&Vector> = (0..n).filter(|&q| q != j).flat_map(|q| hulls[q].vertices()).collect();
            let eval = |e: &Matrix| -> Result<f64> {
                let mut best: f64 = 0.0;
                for v in &points {
                    best = best.max(point_norm(hulls[j], &(e * *v))?);
                }
                Ok(best)
            };
            let theta = if self.cfg.parallel {
                maps.par_iter().map(eval).collect::<Result<Vec<_>>>()?
            } else {
                maps.iter().map(eval).collect::<Result<Vec<_>>>()?
            }
            .into_iter()
            .fold(0.0, f64::max);
            if !theta.is_finite() {
                return Ok(None);
            }
            let rho = theta / (1.0 - c);
            let (m, big_m) = (self.sys.lower()[j], self.sys.upper()[j]);
            rate = rate.max(if rho >= 1.0 { rho.ln() / m } else { rho.ln() / big_m });
        }
        Ok(Some(rate))
    }
}

const REFINE_CHORD: f64 = 2e-4;
const REFINE_MAX: usize = 64;

// At least `base` subdivisions, more when the chord term h²‖A²‖/8 would
// exceed REFINE_CHORD.
fn refine_steps(base: usize, tau: f64, a2: f64) -> usize {
    let want = (tau * (a2 / (8.0 * REFINE_CHORD)).sqrt()).ceil();
    if want.is_finite() {
        base.max((want as usize).min(REFINE_MAX))
    } else {
        base
    }
}

#[derive(Default)]
struct Upper {
    a2: Option<f64>,
    formula: Option<f64>,
    refined: Option<f64>,
}

impl Upper {
    fn best(&self) -> Option<f64> {
        match (self.formula, self.refined) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

fn default_start_point(
    sys: &RestrictedSystem,
    fam: &DiscretizedFamily,
    cfg: &EngineConfig,
    space: usize,
) -> Vector {
    let d = sys.dim();
    match cfg.hull {
        HullStrategy::Positive => Vector::repeat(d, 1.0),
        HullStrategy::Symmetrized if fam.is_irreducible() => dominant_direction(sys.mode(space)),
        HullStrategy::Symmetrized => {
            // a dominant direction may lie in a common invariant subspace and
            // leave every polytope flat; take a generic point instead
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let v = Vector::from_fn(d, |_, _| rng.random_range(-1.0..1.0));
            v.normalize()
        }
    }
}

// Perron vector of the product of the best two-leg law on the duration
// endpoints, as a point of the space of that law's last mode. Extremal
// products keep the positive polytopes small.
fn perron_start(sys: &RestrictedSystem) -> Result<Option<(usize, Vector)>> {
    let best = best_periodic_lower_bound(sys, 2, 2)?;
    let Some(law) = best.law else { return Ok(None) };
    let p = sys.product(&law)?.matrix;
    let d = p.nrows();
    let mut v = Vector::repeat(d, 1.0 / (d as f64).sqrt());
    for _ in 0..500 {
        let w = &p * &v;
        let norm = w.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Ok(None);
        }
        let w = w / norm;
        let done = (&w - &v).amax() < 1e-13;
        v = w;
        if done {
            break;
        }
    }
    if v.iter().all(|&x| x > 1e-12) {
        Ok(Some((law.legs.last().expect("nonempty law").mode, v)))
    } else {
        Ok(None)
    }
}

/// Runs the construction on a prepared family. `fam` must be the
/// discretization of `sys`.
pub fn run_with_family(sys: &RestrictedSystem, fam: &DiscretizedFamily, cfg: &EngineConfig) -> Result<AlgorithmReport> {
    cfg.validate()?;
    let n = sys.n_modes();
    let d = sys.dim();
    if fam.generators.len() != n || fam.generators[0][0].nrows() != d {
        return Err(Error::InvalidArgument("family does not match the system".into()));
    }
    if cfg.hull == HullStrategy::Positive && !sys.is_metzler() {
        return Err(Error::InvalidArgument("positive hulls need Metzler modes".into()));
    }
    let leading = match (cfg.hull, cfg.start_space, &cfg.start_point) {
        (HullStrategy::Positive, StartSpace::Auto, None) => perron_start(sys)?,
        _ => None,
    };
    let start_space = match cfg.start_space {
        StartSpace::Index(i) if i < n => i,
        StartSpace::Index(i) => {
            return Err(Error::InvalidArgument(format!("start space {} out of range", i + 1)));
        }
        StartSpace::Auto => match &leading {
            Some((j, _)) => *j,
            None => {
                let ab: Vec<f64> = sys.modes().iter().map(spectral_abscissa).collect();
                (0..n).fold(0, |best, j| if ab[j] > ab[best] { j } else { best })
            }
        },
    };
    let x0 = match (&cfg.start_point, leading) {
        (Some(p), _) if p.len() != d => return Err(Error::DimensionMismatch { expected: d, found: p.len() }),
        (Some(p), _) => Vector::from_column_slice(p),
        (None, Some((_, v))) => v,
        (None, None) => default_start_point(sys, fam, cfg, start_space),
    };
    if x0.iter().all(|&v| v == 0.0) || !x0.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidArgument("starting point must be finite and nonzero".into()));
    }
    if cfg.hull == HullStrategy::Positive && x0.iter().any(|&v| v <= 0.0) {
        return Err(Error::InvalidArgument("positive hulls need a componentwise positive start".into()));
    }

    let mut warnings = Vec::new();
    if !fam.is_irreducible() {
        warnings.push(format!(
            "generator family at N = {} is reducible; the upper bound may be unavailable (change N or split the system)",
            fam.n_grid
        ));
    } else if fam.reducibility.conditioning < 1e-6 {
        warnings.push(format!(
            "generator family is close to reducible (closure residual {:.1e})",
            fam.reducibility.conditioning
        ));
    }

    let mut st = State {
        sys,
        fam,
        cfg,
        start_space,
        nodes: (0..n).map(|_| Vec::new()).collect(),
        hulls: vec![None; n],
        mu: None,
        mu_law: None,
        theta: 0.0,
        lp_solves: 0,
    };
    let root = Node { point: x0.clone(), time: 0.0, steps: Vec::new(), cumulative: Matrix::identity(d, d) };
    let id = st.add(start_space, root);
    let mut alive = vec![Vec::new(); n];
    alive[start_space].push(id);

    let mut iterations = 0;
    let termination;
    let mut growth = None;
    let mut gamma = None;
    loop {
        if iterations >= cfg.k_max || st.total_vertices() > cfg.max_vertices {
            if st.total_vertices() > cfg.max_vertices {
                warnings.push(format!("vertex budget {} exceeded", cfg.max_vertices));
            }
            let g = st.final_sweep(&alive)?;
            if st.unstable() {
                termination = Termination::UnstableCandidate;
            } else {
                termination = if g.is_some() { Termination::Interrupted } else { Termination::LyapunovCertificate };
                growth = Some(st.theta.max(g.unwrap_or(0.0)));
            }
            gamma = g;
            break;
        }
        iterations += 1;
        match st.sweep(&alive)? {
            None => {
                termination = Termination::UnstableCandidate;
                break;
            }
            Some(next) if next.iter().all(Vec::is_empty) => {
                termination = Termination::LyapunovCertificate;
                growth = Some(st.theta);
                break;
            }
            Some(next) => alive = next,
        }
    }

    let full_dimensional = st.hulls_full();
    // the polytopes reduced to their extreme points; every bound below is a
    // maximum of a convex function over them
    let essential: Vec<Option<PolytopeHull>> = st
        .hulls
        .iter()
        .map(|h| {
            h.as_ref()
                .map(|h| {
                    let keep = essential_vertices(h)?;
                    PolytopeHull::new(h.strategy(), keep.iter().map(|&k| h.vertices()[k].clone()).collect())
                })
                .transpose()
        })
        .collect::<Result<_>>()?;
    let len_p: Vec<usize> = essential.iter().map(|h| h.as_ref().map_or(0, PolytopeHull::len)).collect();
    let upper = match growth {
        Some(g) => st.upper_bound(&essential, g, &mut warnings)?,
        None => Upper::default(),
    };
    let durations = &fam.durations;
    let spaces: Vec<Vec<VertexRecord>> = st
        .nodes
        .iter()
        .enumerate()
        .map(|(j, nodes)| {
            nodes
                .iter()
                .map(|nd| VertexRecord {
                    point: nd.point.as_slice().to_vec(),
                    space: j,
                    birth_time: nd.time,
                    history: FiniteSwitchingLaw::new(
                        nd.steps.iter().map(|&(mode, s)| Leg { mode, duration: durations[mode][s] }).collect(),
                    ),
                    grid: nd.steps.iter().map(|&(_, s)| s).collect(),
                    cumulative: nd.cumulative.row_iter().map(|r| r.iter().copied().collect()).collect(),
                })
                .collect()
        })
        .collect();
    let polytopes = MultiPolytope { strategy: cfg.hull, spaces };
    let vertex_counts = polytopes.vertex_counts();
    Ok(AlgorithmReport {
        termination,
        mu: st.mu,
        mu_law: st.mu_law,
        nu: upper.best(),
        nu_formula: upper.formula,
        nu_refined: upper.refined,
        gamma,
        theta: st.theta,
        a2_norm: upper.a2,
        iterations,
        vertex_counts,
        len_p,
        lp_solves: st.lp_solves,
        irreducible: fam.is_irreducible(),
        full_dimensional,
        start_space,
        start_point: x0.as_slice().to_vec(),
        config: cfg.clone(),
        warnings,
        polytopes,
    })
}
