use nalgebra::Complex;

use super::{Matrix, Vector};

/// Eigenvalues of a real square matrix, with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex<f64>>,
}

impl Spectrum {
    pub fn of(a: &Matrix) -> Self {
        Spectrum { eigenvalues: eigenvalues(a) }
    }

    pub fn abscissa(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues via real Schur reduction. Complex pairs come out conjugate.
pub fn eigenvalues(a: &Matrix) -> Vec<Complex<f64>> {
    let d = a.nrows();
    match d {
        0 => Vec::new(),
        1 => vec![Complex::new(a[(0, 0)], 0.0)],
        2 => eig2(a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]),
        _ => a.complex_eigenvalues().iter().copied().collect(),
    }
}

// Closed form for 2x2, written to avoid cancellation in the discriminant.
fn eig2(a: f64, b: f64, c: f64, d: f64) -> Vec<Complex<f64>> {
    let half_tr = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let disc = half_diff * half_diff + b * c;
    if disc >= 0.0 {
        let r = disc.sqrt();
        let big = if half_tr >= 0.0 { half_tr + r } else { half_tr - r };
        let det = a * d - b * c;
        let small = if big != 0.0 { det / big } else { half_tr - r };
        let (hi, lo) = if big >= small { (big, small) } else { (small, big) };
        vec![Complex::new(hi, 0.0), Complex::new(lo, 0.0)]
    } else {
        let im = (-disc).sqrt();
        vec![Complex::new(half_tr, im), Complex::new(half_tr, -im)]
    }
}

/// Largest real part of the eigenvalues.
pub fn spectral_abscissa(a: &Matrix) -> f64 {
    Spectrum::of(a).abscissa()
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &Matrix) -> f64 {
    Spectrum::of(a).radius()
}

/// Smallest and largest eigenvalue of `(A + Aᵀ)/2`, i.e. the range of the
/// Euclidean logarithmic norm of `±A`.
pub fn symmetric_part_range(a: &Matrix) -> (f64, f64) {
    let sym = (a + a.transpose()) * 0.5;
    let eig = sym.symmetric_eigenvalues();
    let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Orthonormal basis (as columns) of the numerical null space of `m`.
///
/// Singular values below `rel_tol · σ_max` count as zero; at least
/// `min_dim` directions are always returned.
pub fn null_space(m: &Matrix, rel_tol: f64, min_dim: usize) -> Matrix {
    let d = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let mut cols = Vec::new();
    for (rank, &i) in order.iter().enumerate() {
        let s = svd.singular_values[i];
        if rank < min_dim || s <= rel_tol * smax.max(f64::MIN_POSITIVE) {
            cols.push(v_t.row(i).transpose());
        }
    }
    // wide SVD on square input always has d rows in V^T
    debug_assert!(cols.iter().all(|c| c.len() == d));
    Matrix::from_columns(&cols)
}

/// A real unit vector in the invariant subspace belonging to the eigenvalue
/// of largest real part: the eigenvector when that eigenvalue is real, a
/// vector of the real two-dimensional block otherwise.
pub fn dominant_direction(a: &Matrix) -> Vector {
    let d = a.nrows();
    let eig = eigenvalues(a);
    let lead = eig
        .iter()
        .copied()
        .max_by(|x, y| x.re.total_cmp(&y.re).then(x.im.abs().total_cmp(&y.im.abs()).reverse()))
        .unwrap_or_default();
    let ident = Matrix::identity(d, d);
    let scale = a.norm().max(1.0);
    let m = if lead.im.abs() <= 1e-10 * scale {
        a - &ident * lead.re
    } else {
        let shifted = a - &ident * lead.re;
        &shifted * &shifted + &ident * (lead.im * lead.im)
    };
    let basis = null_space(&m, 1e-8, 1);
    let mut v = basis.column(0).into_owned();
    // deterministic sign: largest component positive
    let imax = v.iamax();
    if v[imax] < 0.0 {
        v = -v;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::{expm, from_rows};

    #[test]
    fn abscissa_examples() {
        let a = from_rows(&[&[1.0, 0.0], &[0.0, -3.0]]);
        assert_eq!(spectral_abscissa(&a), 1.0);
        let rot = from_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert_eq!(spectral_abscissa(&rot), 0.0);
    }

    #[test]
    fn abscissa_matches_quadratic_formula() {
        // characteristic polynomial λ² + 0.7λ + 0.02
        let a = from_rows(&[&[-0.3, 0.5], &[0.2, -0.4]]);
        let oracle = (-0.7 + (0.49f64 - 0.08).sqrt()) / 2.0;
        assert!((spectral_abscissa(&a) - oracle).abs() < 1e-15);
        assert!((oracle + 0.029843788128357).abs() < 1e-12);
    }

    #[test]
    fn radius_examples() {
        assert_eq!(spectral_radius(&Matrix::identity(3, 3)), 1.0);
        let d = from_rows(&[&[(-1f64).exp(), 0.0], &[0.0, (-5f64).exp()]]);
        assert!((spectral_radius(&d) - (-1f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn rotation_product_radius() {
        // A1 = diag(-1,-2) for π, then rotation by πk - π
        let a1 = from_rows(&[&[-1.0, 0.0], &[0.0, -2.0]]);
        let a2 = from_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let pi = std::f64::consts::PI;
        for k in 2..6 {
            let p = expm(&a2, pi * k as f64 - pi).unwrap() * expm(&a1, pi).unwrap();
            assert!((spectral_radius(&p) - (-pi).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_eigenvalues_in_3d() {
        let a = from_rows(&[&[-1.0, -2.0, 0.0], &[2.0, -1.0, 0.0], &[0.0, 0.0, -3.0]]);
        let s = Spectrum::of(&a);
        assert_eq!(s.eigenvalues.len(), 3);
        assert!((s.abscissa() + 1.0).abs() < 1e-12);
        assert!((s.radius() - 5f64.sqrt().max(3.0)).abs() < 1e-12);
    }

    #[test]
    fn dominant_direction_is_eigenvector() {
        let a = from_rows(&[&[-0.3, 0.5], &[0.2, -0.4]]);
        let v = dominant_direction(&a);
        let lambda = spectral_abscissa(&a);
        assert!((&a * &v - &v * lambda).norm() < 1e-12);
    }

    #[test]
    fn symmetric_range_of_diagonal() {
        let a = from_rows(&[&[1.0, 0.0], &[0.0, -3.0]]);
        assert_eq!(symmetric_part_range(&a), (-3.0, 1.0));
    }
}
