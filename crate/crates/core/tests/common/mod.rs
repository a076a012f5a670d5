#![allow(dead_code)]

pub mod checks;
pub mod geometry;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use switchbound::numlin::{from_rows, spectral_abscissa};
use switchbound::sysmodel::RestrictedSystem;
use switchbound::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn table1(big_m: f64) -> RestrictedSystem {
    RestrictedSystem::uniform(
        vec![from_rows(&[&[-0.3, 0.5], &[0.2, -0.4]]), from_rows(&[&[-0.6, 0.0], &[0.0, 1.0]])],
        1.0,
        big_m,
    )
    .unwrap()
}

pub fn example1() -> RestrictedSystem {
    RestrictedSystem::uniform(
        vec![from_rows(&[&[1.0, 0.0], &[0.0, -3.0]]), from_rows(&[&[-3.0, 0.0], &[0.0, 1.0]])],
        1.0,
        2.0,
    )
    .unwrap()
}

pub fn uniform_matrix(rng: &mut ChaCha8Rng, d: usize, lo: f64, hi: f64) -> Matrix {
    Matrix::from_fn(d, d, |_, _| rng.random_range(lo..hi))
}

/// `a` shifted so that its spectral abscissa equals `target`.
pub fn with_abscissa(a: &Matrix, target: f64) -> Matrix {
    let d = a.nrows();
    a - Matrix::identity(d, d) * (spectral_abscissa(a) - target)
}

pub fn random_stable(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let a = uniform_matrix(rng, d, -1.0, 1.0);
    let target = -rng.random_range(0.1..1.0);
    with_abscissa(&a, target)
}

/// Pair with one stable and one unstable mode.
pub fn mixed_pair(rng: &mut ChaCha8Rng, d: usize) -> (Matrix, Matrix) {
    let a = uniform_matrix(rng, d, -1.0, 1.0);
    let b = uniform_matrix(rng, d, -1.0, 1.0);
    let sa = -rng.random_range(0.1..0.6);
    let sb = rng.random_range(0.1..0.6);
    (with_abscissa(&a, sa), with_abscissa(&b, sb))
}

/// Dense Metzler matrix: diagonal in `(-1, 1)`, off-diagonal in `(0, 1)`.
pub fn metzler(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    Matrix::from_fn(d, d, |i, j| if i == j { rng.random_range(-1.0..1.0) } else { rng.random_range(0.0..1.0) })
}

/// Root of `f` in `[a, b]` by plain bisection; `f(a)` and `f(b)` must differ
/// in sign.
pub fn bisect_root(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    assert!(fa * f(b) <= 0.0, "no sign change on [{a}, {b}]");
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        if (f(c) > 0.0) == (fa > 0.0) {
            a = c;
        } else {
            b = c;
        }
    }
    0.5 * (a + b)
}

/// First positive root of `f` found by scanning `[lo, hi]` with `steps`
/// cells.
pub fn first_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> Option<f64> {
    let h = (hi - lo) / steps as f64;
    let mut prev = f(lo);
    for k in 1..=steps {
        let t = lo + h * k as f64;
        let v = f(t);
        if prev * v <= 0.0 {
            return Some(bisect_root(&f, t - h, t));
        }
        prev = v;
    }
    None
}

/// T_cut of a stable 2×2 matrix from its eigenvalues, found by scanning the
/// defining scalar equations.
pub fn t_cut_reference(a: &Matrix) -> f64 {
    let tr = a.trace();
    let det = a.determinant();
    let disc = tr * tr / 4.0 - det;
    if disc < 0.0 {
        let (al, be) = (tr / 2.0, (-disc).sqrt());
        let f = |t: f64| al * (be * t).sin() + be * (be * t).cos() + be * (al * t).exp();
        first_root(f, 1e-9, std::f64::consts::PI / be, 20_000).expect("complex root")
    } else {
        let (l1, l2) = (tr / 2.0 + disc.sqrt(), tr / 2.0 - disc.sqrt());
        // (1 + e^{-l1 t})/l1 = (1 + e^{-l2 t})/l2, multiplied by e^{l2 t} l1 l2
        let f = |t: f64| l2 * ((l2 * t).exp() + ((l2 - l1) * t).exp()) - l1 * ((l2 * t).exp() + 1.0);
        let mut hi = 1.0;
        while f(1e-9) * f(hi) > 0.0 {
            hi *= 2.0;
            assert!(hi < 1e6);
        }
        first_root(f, 1e-9, hi, 20_000).expect("real root")
    }
}
