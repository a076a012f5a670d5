//! Dense real matrix kernel.
//!
//! All routines work on `nalgebra` dynamic matrices. They are pure and hold no
//! shared state, so values can be freely shared across threads.

mod expm;
mod irreducible;
mod spectrum;

pub use expm::expm;
pub use irreducible::{is_irreducible, Reducibility};
pub use spectrum::{
    dominant_direction, eigenvalues, null_space, spectral_abscissa, spectral_radius,
    symmetric_part_range, Spectrum,
};

use nalgebra::{DMatrix, DVector};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Builds a square matrix from row slices. Panics if rows are ragged.
pub fn from_rows(rows: &[&[f64]]) -> Matrix {
    let d = rows.len();
    Matrix::from_fn(d, rows.first().map_or(0, |r| r.len()), |i, j| rows[i][j])
}

/// Maximum absolute column sum.
pub fn norm1(a: &Matrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub(crate) fn all_finite(a: &Matrix) -> bool {
    a.iter().all(|x| x.is_finite())
}
