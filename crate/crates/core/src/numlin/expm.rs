//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! of degree 3, 5, 7, 9 or 13 (Higham 2005).

use super::{all_finite, norm1, Matrix};
use crate::{Error, Result};

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA: [(f64, &[f64]); 4] = [
    (1.495585217958292e-2, &B3),
    (2.539398330063230e-1, &B5),
    (9.504178996162932e-1, &B7),
    (2.097847961257068e0, &B9),
];
const THETA_13: f64 = 5.371920351148152;

/// Returns `e^{tA}`.
///
/// `expm(a, 0.0)` is the identity exactly. Fails with [`Error::Overflow`]
/// when the result leaves the floating point range.
pub fn expm(a: &Matrix, t: f64) -> Result<Matrix> {
    let d = a.nrows();
    if a.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: a.ncols() });
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time {t} is not finite")));
    }
    if t == 0.0 || d == 0 {
        return Ok(Matrix::identity(d, d));
    }
    let ta = a * t;
    let norm = norm1(&ta);
    if d == 1 {
        let v = ta[(0, 0)].exp();
        return if v.is_finite() { Ok(Matrix::from_element(1, 1, v)) } else { Err(Error::Overflow { norm }) };
    }
    if !norm.is_finite() {
        return Err(Error::Overflow { norm });
    }

    let ident = Matrix::identity(d, d);
    for (theta, b) in THETA {
        if norm <= theta {
            let r = pade_low(&ta, b, &ident)?;
            return check(r, norm);
        }
    }

    let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as i32 } else { 0 };
    let scaled = if s > 0 { &ta / 2f64.powi(s) } else { ta };
    let mut r = pade13(&scaled, &ident)?;
    for _ in 0..s {
        r = &r * &r;
        if !all_finite(&r) {
            return Err(Error::Overflow { norm });
        }
    }
    check(r, norm)
}

fn check(r: Matrix, norm: f64) -> Result<Matrix> {
    if all_finite(&r) {
        Ok(r)
    } else {
        Err(Error::Overflow { norm })
    }
}

fn pade_low(a: &Matrix, b: &[f64], ident: &Matrix) -> Result<Matrix> {
    let a2 = a * a;
    let mut power = ident.clone();
    let mut u = ident * b[1];
    let mut v = ident * b[0];
    let mut k = 2;
    while k < b.len() {
        power = &power * &a2;
        v += &power * b[k];
        if k + 1 < b.len() {
            u += &power * b[k + 1];
        }
        k += 2;
    }
    let u = a * u;
    solve(&v - &u, &v + &u)
}

fn pade13(a: &Matrix, ident: &Matrix) -> Result<Matrix> {
    let b = &B13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
    let u = a * (&a6 * inner_u + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + ident * b[1]);
    let inner_v = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
    let v = &a6 * inner_v + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + ident * b[0];
    solve(&v - &u, &v + &u)
}

fn solve(q: Matrix, p: Matrix) -> Result<Matrix> {
    let norm = norm1(&p);
    q.lu().solve(&p).ok_or(Error::Overflow { norm })
}
