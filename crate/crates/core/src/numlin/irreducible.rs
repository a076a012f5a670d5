//! Common invariant subspace search.
//!
//! Every invariant subspace of a real matrix contains either a real
//! eigenvector or the real two-dimensional subspace of a complex pair. So if
//! a family shares a proper invariant subspace `L`, the smallest subspace
//! containing such a probe from `L` and closed under the family is proper.
//! Probes are taken from each member and from the transposed family (whose
//! common invariant subspaces are the orthogonal complements of the
//! original ones).

use super::{null_space, Matrix, Vector};
use crate::{Error, Result};
use nalgebra::Complex;

const TOL: f64 = 1e-9;

/// Outcome of [`is_irreducible`].
#[derive(Debug, Clone)]
pub struct Reducibility {
    pub irreducible: bool,
    /// Orthonormal basis (columns) of a proper common invariant subspace.
    pub witness: Option<Matrix>,
    /// Smallest relative residual that was still accepted as a new
    /// direction while growing closures. Values close to the tolerance mean
    /// the family is nearly reducible.
    pub conditioning: f64,
}

/// Tests whether `family` has no common invariant subspace other than `{0}`
/// and the whole space.
pub fn is_irreducible(family: &[Matrix]) -> Result<Reducibility> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty matrix family".into()))?;
    let d = first.nrows();
    for a in family {
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: a.nrows() });
        }
    }
    let mut conditioning = f64::INFINITY;
    if d == 1 {
        return Ok(Reducibility { irreducible: true, witness: None, conditioning });
    }

    let transposed: Vec<Matrix> = family.iter().map(|a| a.transpose()).collect();
    for (fam, dual) in [(family, false), (&transposed[..], true)] {
        for a in fam {
            for probe in probes(a) {
                let (basis, worst) = closure(fam, &probe);
                conditioning = conditioning.min(worst);
                if basis.ncols() < d {
                    let witness = if dual { complement(&basis) } else { basis };
                    return Ok(Reducibility {
                        irreducible: false,
                        witness: Some(witness),
                        conditioning,
                    });
                }
            }
        }
    }
    Ok(Reducibility { irreducible: true, witness: None, conditioning })
}

// Starting subspaces: single real eigenvectors, or the 2D real block of a
// complex eigenvalue pair.
fn probes(a: &Matrix) -> Vec<Matrix> {
    let d = a.nrows();
    let ident = Matrix::identity(d, d);
    let scale = a.norm().max(1.0);
    let mut seen: Vec<Complex<f64>> = Vec::new();
    let mut out = Vec::new();
    for lambda in super::eigenvalues(a) {
        if lambda.im < -1e-10 * scale {
            continue;
        }
        if seen.iter().any(|z| (z - lambda).norm() <= 1e-8 * scale) {
            continue;
        }
        seen.push(lambda);
        if lambda.im.abs() <= 1e-10 * scale {
            let ns = null_space(&(a - &ident * lambda.re), 1e-8, 1);
            for c in ns.column_iter() {
                out.push(Matrix::from_columns(&[c.into_owned()]));
            }
        } else {
            let shifted = a - &ident * lambda.re;
            let q = &shifted * &shifted + &ident * (lambda.im * lambda.im);
            out.push(null_space(&q, 1e-8, 2));
        }
    }
    out
}

// Orthonormal basis of the smallest family-invariant subspace containing the
// columns of `start`, together with the smallest accepted relative residual.
fn closure(family: &[Matrix], start: &Matrix) -> (Matrix, f64) {
    let d = start.nrows();
    let mut basis: Vec<Vector> = Vec::new();
    let mut worst = f64::INFINITY;
    for c in start.column_iter() {
        if let Some((v, r)) = orthogonalize(&basis, c.into_owned()) {
            basis.push(v);
            worst = worst.min(r);
        }
    }
    let mut next = 0;
    while next < basis.len() && basis.len() < d {
        let v = basis[next].clone();
        for a in family {
            if let Some((w, r)) = orthogonalize(&basis, a * &v) {
                basis.push(w);
                worst = worst.min(r);
                if basis.len() == d {
                    break;
                }
            }
        }
        next += 1;
    }
    (Matrix::from_columns(&basis), worst)
}

// Two rounds of Gram-Schmidt. Returns the normalized remainder and its
// relative size, or None when the vector already lies in the span.
fn orthogonalize(basis: &[Vector], mut v: Vector) -> Option<(Vector, f64)> {
    let norm0 = v.norm();
    if norm0 == 0.0 {
        return None;
    }
    for _ in 0..2 {
        for b in basis {
            let c = b.dot(&v);
            v.axpy(-c, b, 1.0);
        }
    }
    let rel = v.norm() / norm0;
    if rel <= TOL {
        None
    } else {
        Some((v.normalize(), rel))
    }
}

fn complement(basis: &Matrix) -> Matrix {
    let k = basis.ncols();
    null_space(&basis.transpose(), 1e-8, basis.nrows() - k)
}
