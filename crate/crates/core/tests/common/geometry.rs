use rand::Rng;
use switchbound::lpcore::{membership, HullStrategy, PolytopeHull, Verdict, TOL_STRICT};
use switchbound::Vector;

type P = (f64, f64);

fn cross(o: P, a: P, b: P) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

// Andrew's monotone chain, counter-clockwise.
fn convex_hull(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let mut lower: Vec<P> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

// Gauge of `x` for a polygon containing the origin: the largest ratio of
// the edge functional at `x` to its value on the edge.
fn polygon_gauge(poly: &[P], x: P) -> f64 {
    let mut g: f64 = 0.0;
    for k in 0..poly.len() {
        let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
        let n = (b.1 - a.1, a.0 - b.0);
        let c = n.0 * a.0 + n.1 * a.1;
        let v = n.0 * x.0 + n.1 * x.1;
        if c > 1e-14 {
            g = g.max(v / c);
        } else if v > 1e-14 {
            return f64::INFINITY;
        }
    }
    g
}

fn symmetric_polygon(vs: &[P]) -> Vec<P> {
    convex_hull(vs.iter().flat_map(|&(x, y)| [(x, y), (-x, -y)]).collect())
}

// Downward closure inside the orthant.
fn positive_polygon(vs: &[P]) -> Vec<P> {
    let mut pts = vec![(0.0, 0.0)];
    for &(x, y) in vs {
        pts.extend([(x, y), (x, 0.0), (0.0, y)]);
    }
    convex_hull(pts)
}

fn verdict_of(gauge: f64) -> Option<Verdict> {
    let t0 = 1.0 / gauge;
    if (t0 - 1.0).abs() <= TOL_STRICT {
        None
    } else if t0 > 1.0 {
        Some(Verdict::Interior)
    } else {
        Some(Verdict::Exterior)
    }
}

pub fn agreement(strategy: HullStrategy, seed: u64) -> (usize, usize) {
    let mut rng = super::rng(seed);
    let (mut checked, mut agreed) = (0, 0);
    for _ in 0..1000 {
        let k = rng.random_range(2..8);
        let vs: Vec<P> = (0..k)
            .map(|_| match strategy {
                HullStrategy::Symmetrized => (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
                HullStrategy::Positive => (rng.random_range(0.05..2.0), rng.random_range(0.05..2.0)),
            })
            .collect();
        let poly = match strategy {
            HullStrategy::Symmetrized => symmetric_polygon(&vs),
            HullStrategy::Positive => positive_polygon(&vs),
        };
        if poly.len() < 3 {
            continue;
        }
        let dir: P = match strategy {
            HullStrategy::Symmetrized => {
                let th = rng.random_range(0.0..std::f64::consts::TAU);
                (th.cos(), th.sin())
            }
            HullStrategy::Positive => {
                let th = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
                (th.cos(), th.sin())
            }
        };
        let g_dir = match strategy {
            HullStrategy::Symmetrized => polygon_gauge(&poly, dir),
            HullStrategy::Positive => polygon_gauge(&poly, (dir.0.abs(), dir.1.abs())),
        };
        let r = if rng.random_bool(0.2) {
            (1.0 + rng.random_range(-1e-6..1e-6)) / g_dir
        } else {
            rng.random_range(0.5..1.5) / g_dir
        };
        let x = (dir.0 * r, dir.1 * r);
        let g = g_dir * r;
        let Some(expected) = verdict_of(g) else { continue };
        let hull = PolytopeHull::new(strategy, vs.iter().map(|&(a, b)| Vector::from_vec(vec![a, b])).collect()).unwrap();
        let lp = membership(&hull, &Vector::from_vec(vec![x.0, x.1]), TOL_STRICT).unwrap();
        checked += 1;
        if lp.verdict == expected && (lp.norm - g).abs() <= 1e-8 * g.max(1.0) {
            agreed += 1;
        }
    }
    (checked, agreed)
}
